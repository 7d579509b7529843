"""Supercharacters and dual characters across a finite lattice of levels.

The direct limits over all levels are truncated to a divisor-closed set of
levels inside the ambient field.  Supercharacters are glued along the label
map xi_tau -> xi_(tau o Tr), dual characters along the trace relation, which
in coordinates means "same dual vector, read at a bigger level".
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import InputError, LevelMismatch
from .field_tower import divisors
from .orbits import AdditiveCharacter, get_level
from .shintani import dual_trace_lift, norm_pullback, twisted_extension
from .supercharacters import ClassFunction, supercharacter_table


class LevelLattice:
    """Divisor closure of the requested levels, with per-level tables."""

    def __init__(self, algebra, levels):
        levels = sorted(set(levels))
        if not levels or levels[0] < 1:
            raise InputError("levels must be positive integers")
        closed = set()
        for n in levels:
            if algebra.F.L % n:
                raise LevelMismatch(f"level {n} does not divide L = {algebra.F.L}")
            closed.update(divisors(n))
        self.algebra = algebra
        self.levels = sorted(closed)

    def __iter__(self):
        return iter(self.levels)

    def level(self, n):
        return get_level(self.algebra, n)

    def table(self, n):
        return supercharacter_table(self.level(n))

    def pairs(self):
        """All (m, n) with m | n, m < n."""
        return [(m, n) for n in self.levels for m in self.levels if m < n and n % m == 0]

    def chains(self):
        """All (m, k, n) with m | k | n strictly increasing."""
        return [(m, k, n) for m, n in self.pairs() for k in self.levels
                if m < k < n and k % m == 0 and n % k == 0]


def transition(lattice, xi, n):
    """xi_tau at level m -> xi_(tau o Tr_{n,m}) at level n."""
    m = xi.level
    if n % m:
        raise LevelMismatch(f"{m} does not divide {n}")
    theta = dual_trace_lift(AdditiveCharacter(m, xi.rep), n)
    return lattice.table(n).of(theta.dual_coords)


@dataclass
class TransitionCheck:
    low: int
    high: int
    orbit: int
    degree: object
    pullback_is_supercharacter: bool   # Nm*(xi_tau) == xi_(tau o Tr)
    pullback_is_extension: bool        # Nm*(xi_tau) == twisted extension of tau o Tr


def transition_checks(lattice, m, n):
    """Compare the label transition with pull-back along the norm map."""
    A = lattice.algebra
    out = []
    for xi in lattice.table(m):
        up = transition(lattice, xi, n)
        pulled = norm_pullback_class(A, xi, n)
        ext = twisted_extension(A, AdditiveCharacter(n, xi.rep), m)
        out.append(TransitionCheck(m, n, xi.orbit_index, up.degree,
                                   pulled == up.values, pulled == ext))
    return out


def norm_pullback_class(algebra, xi, n):
    """xi o Nm_{n,m} on the twisted classes, without forcing superclass shape."""
    low = get_level(algebra, xi.level)
    conj = low.conjugacy_partition
    psi = ClassFunction(conj, [xi.values.at(block[0]) for block in conj.blocks], xi.values.p)
    return norm_pullback(algebra, psi, n)


def coherence_check(lattice):
    """[(m, k, n, ok)]: transition through k agrees with the direct one."""
    out = []
    for m, k, n in lattice.chains():
        ok = True
        for xi in lattice.table(m):
            two_step = transition(lattice, transition(lattice, xi, k), n)
            direct = transition(lattice, xi, n)
            if two_step.values != direct.values:
                ok = False
        out.append((m, k, n, ok))
    return out


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller key as root so classes are reported by minimum
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class SuperdualClass:
    members: dict = field(default_factory=dict)   # level -> orbit index
    degrees: dict = field(default_factory=dict)   # level -> xi(1)

    @property
    def minimal_level(self):
        return min(self.members)


def superdual_classes(lattice):
    uf = _UnionFind()
    for n in lattice:
        for xi in lattice.table(n):
            uf.find((n, xi.orbit_index))
    for m, n in lattice.pairs():
        for xi in lattice.table(m):
            uf.union((m, xi.orbit_index), (n, transition(lattice, xi, n).orbit_index))
    groups = {}
    for key in sorted(uf.parent):
        groups.setdefault(uf.find(key), []).append(key)
    out = []
    for root in sorted(groups):
        cls = SuperdualClass()
        for n, k in groups[root]:
            if n in cls.members:
                raise InputError(f"two supercharacters of level {n} glued together")
            cls.members[n] = k
            cls.degrees[n] = lattice.table(n)[k].degree
        out.append(cls)
    return out


@dataclass
class SerreDualClass:
    coords: tuple
    minimal_level: int
    levels: list


def serre_dual_classes(lattice):
    """Dual characters grouped by their coordinate vector in the ambient field."""
    seen = {}
    for n in lattice:
        for f in lattice.level(n).elements:
            seen.setdefault(f, []).append(n)
    return [SerreDualClass(f, levels[0], levels) for f, levels in sorted(seen.items())]


def _additive_basis(level):
    """F_p-basis of A(q^n): x e_i for x in an F_p-basis of F_{q^n}."""
    A = level.A
    return [A.basis_vector(i, x) for i in range(A.r) for x in level.F.level_basis(level.n)]


def trace_relation_holds(lattice, f, m, n):
    """theta_f at level n equals (theta_f at level m) o Tr_{n,m}, on a basis."""
    A = lattice.algebra
    low, top = lattice.level(m), lattice.level(n)
    for a in _additive_basis(top):
        tr = A.zero
        for k in range(n // m):
            tr = A.add(tr, A.frob(a, k * m))
        if top.char_exponent(f, a) != low.char_exponent(f, tr):
            return False
    return True


def serre_trace_check(lattice):
    """Every class: members at comparable levels satisfy the trace relation."""
    for cls in serre_dual_classes(lattice):
        for m in cls.levels:
            for n in cls.levels:
                if m < n and n % m == 0 and not trace_relation_holds(lattice, cls.coords, m, n):
                    return False
    return True


def decode_character(level, exponent):
    """Dual vector f with theta_f = zeta ** exponent(a) on all of A(q^n).

    exponent is evaluated only on an F_p-basis; raises if no f matches.
    """
    A = level.A
    F = level.F
    basis = F.level_basis(level.n)
    scalars = F.enumerate_level(level.n)
    coords = []
    for i in range(A.r):
        want = [exponent(A.basis_vector(i, x)) for x in basis]
        hit = [y for y in scalars
               if all(F.prime_trace(F.mul(y, x), level.n) == w for x, w in zip(basis, want))]
        if len(hit) != 1:
            raise InputError(f"not an additive character in coordinate {i + 1}")
        coords.append(hit[0])
    return tuple(coords)


def scale_character(lattice, alpha, f, k):
    """alpha . theta_f at level k, computed from values and decoded."""
    level = lattice.level(k)
    A = lattice.algebra
    return decode_character(level, lambda a: level.char_exponent(f, A.scale(alpha, a)))


def scalar_action(lattice, alpha, n, f, m):
    """alpha in F_{q^n} acting on [theta_f], theta_f at level m.

    Returns (common level used, resulting coordinates) at the smallest
    common level in the lattice.
    """
    k = _common_levels(lattice, n, m)
    if not k:
        raise LevelMismatch(f"no level in {lattice.levels} is divisible by {n} and {m}")
    return k[0], scale_character(lattice, alpha, f, k[0])


def _common_levels(lattice, n, m):
    base = n * m // gcd(n, m)
    return [k for k in lattice.levels if k % base == 0]


def scalar_action_consistent(lattice):
    """alpha[theta] agrees at every pair of common levels; (checked, ok)."""
    A = lattice.algebra
    F = A.F
    checked = 0
    for n in lattice:
        for m in lattice:
            ks = _common_levels(lattice, n, m)
            if len(ks) < 2:
                continue
            for alpha in F.level_basis(n):
                for f in lattice.level(m).elements:
                    results = {scale_character(lattice, alpha, f, k) for k in ks}
                    checked += 1
                    if len(results) != 1:
                        return checked, False
    return checked, True


def psi_basis_check(lattice):
    """At every level, sum_i alpha_i [theta o e_i*] runs bijectively over the dual."""
    A = lattice.algebra
    for n in lattice:
        level = lattice.level(n)
        hits = set()
        for alphas in level.elements:
            # sum of alpha_i . (e_i* read at level n), as an exponent function
            def exponent(a, alphas=alphas):
                total = 0
                for i, x in enumerate(alphas):
                    if x:
                        e = (0,) * i + (1,) + (0,) * (A.r - i - 1)
                        total += level.char_exponent(e, A.scale(x, a))
                return total % level.p
            hits.add(decode_character(level, exponent))
        if len(hits) != level.order or hits != set(level.elements):
            return False
    return True


def orbit_intersection_check(lattice, f, n, n2):
    """G(q^n2)-orbit of theta_f, cut down to level n, is the G(q^n)-orbit."""
    if n2 % n:
        raise LevelMismatch(f"{n} does not divide {n2}")
    A = lattice.algebra
    big = lattice.level(n2).left_orbit(f)
    small = lattice.level(n).left_orbit(f)
    return {g for g in big if A.at_level(g, n)} == small


def orbit_intersection_all(lattice):
    for m, n in lattice.pairs():
        for f in lattice.level(m).elements:
            if not orbit_intersection_check(lattice, f, m, n):
                return False
    return True
