"""Superclasses, dual orbits, centralisers and twisted conjugacy classes.

Dual characters are stored as dual vectors f (a tuple of r field codes at
level n); the character is a -> zeta_p ** T(f(a)) with T the trace from
F_{q^n} to F_p.  Orbits are closed breadth-first under a generating set of
G(q^n), so the canonical representative of an orbit (its smallest member)
is simply the first unvisited element of the canonical enumeration.
"""

from dataclasses import dataclass, field
from functools import cached_property

from .errors import LevelMismatch
from .linalg import kernel


@dataclass(frozen=True)
class AdditiveCharacter:
    level: int
    dual_coords: tuple

    def __repr__(self):
        return f"AdditiveCharacter(level={self.level}, f={list(self.dual_coords)})"


@dataclass(frozen=True)
class Superclass:
    level: int
    member_ids: tuple
    rep: tuple

    @property
    def size(self):
        return len(self.member_ids)


@dataclass(frozen=True)
class DualOrbit:
    level: int
    members: tuple
    rep: tuple
    left_orbit_size: int
    right_orbit_size: int
    biinvariant_size: int

    @property
    def size(self):
        return len(self.members)


@dataclass(frozen=True)
class FClass:
    level: int
    twist: int
    member_ids: tuple
    rep: tuple

    @property
    def size(self):
        return len(self.member_ids)


@dataclass
class Partition:
    """A partition of G(q^n) into blocks of element ids."""

    kind: str
    level: int
    blocks: list
    block_of: list = field(repr=False)

    @property
    def sizes(self):
        return [len(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)


def closure(seed, maps):
    """Orbit of seed under the semigroup generated by maps (finite sets only)."""
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for x in frontier:
            for fn in maps:
                y = fn(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def partition_by_orbits(elements, maps):
    """Orbits of the elements (in canonical order) as a list of sorted tuples."""
    assigned = set()
    orbits = []
    for x in elements:
        if x in assigned:
            continue
        orb = closure(x, maps)
        assigned |= orb
        orbits.append(tuple(sorted(orb)))
    return orbits


class Level:
    """All orbit data of one level n of an algebra group."""

    def __init__(self, algebra, n):
        F = algebra.F
        if n < 1 or F.L % n:
            raise LevelMismatch(f"level {n} does not divide L = {F.L}")
        self.A = algebra
        self.F = F
        self.n = n
        self.p = F.p
        self.elements = algebra.enumerate(n)
        self.index = {a: i for i, a in enumerate(self.elements)}
        self._fclass_cache = {}

    def __repr__(self):
        return f"Level({self.A.name}, q={self.F.q}, n={self.n})"

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return self.A.zero

    # -- generators ---------------------------------------------------------

    @cached_property
    def generators(self):
        """Bodies of a generating set of G(q^n).

        Starts from 1 + x e_i, x running over an F_p-basis of F_{q^n}; the
        set is verified to generate and widened if it does not.
        """
        A = self.A
        basis = self.F.level_basis(self.n)
        gens = [A.basis_vector(i, x) for i in range(A.r) for x in basis]
        if self._generates(gens):
            return gens
        gens = [A.basis_vector(i, x) for i in range(A.r)
                for x in self.F.enumerate_level(self.n) if x]
        if self._generates(gens):
            return gens
        return [a for a in self.elements if any(a)]  # pragma: no cover

    def _generates(self, gens):
        A = self.A
        maps = [lambda a, s=s: A.gmul(s, a) for s in gens]
        return len(closure(A.zero, maps)) == self.order

    # -- dual vectors ---------------------------------------------------------

    def pair(self, f, a):
        """f(a) = sum f_i a_i in F_{q^n}."""
        F = self.F
        out = 0
        for x, y in zip(f, a):
            if x and y:
                out = F.add(out, F.mul(x, y))
        return out

    def char_exponent(self, f, a):
        """k with theta_f(a) = zeta_p ** k."""
        return self.F.prime_trace(self.pair(f, a), self.n)

    @cached_property
    def _left_ops(self):
        # for generator body b: columns b e_j
        A = self.A
        e = [A.basis_vector(j) for j in range(A.r)]
        return [[A.mul(b, ej) for ej in e] for b in self.generators]

    @cached_property
    def _right_ops(self):
        A = self.A
        e = [A.basis_vector(j) for j in range(A.r)]
        return [[A.mul(ej, b) for ej in e] for b in self.generators]

    def _dual_maps(self, ops):
        F = self.F
        pair = self.pair

        def make(cols):
            def act(f):
                return tuple(F.add(fj, pair(f, col)) for fj, col in zip(f, cols))
            return act
        return [make(cols) for cols in ops]

    @cached_property
    def left_dual_maps(self):
        """f -> f(s .) for generators s; generates the left action on duals."""
        return self._dual_maps(self._left_ops)

    @cached_property
    def right_dual_maps(self):
        return self._dual_maps(self._right_ops)

    def act_dual(self, g, f, h=None):
        """Dual vector of (g, h) . theta_f, i.e. a -> f(g^-1 a h)."""
        A = self.A
        gi = A.ginv(g)
        h = A.zero if h is None else h
        r = A.r
        out = []
        for j in range(r):
            ej = A.basis_vector(j)
            # (1 + gi) e_j (1 + h)
            left = A.add(ej, A.mul(gi, ej))
            v = A.add(left, A.mul(left, h))
            out.append(self.pair(f, v))
        return tuple(out)

    # -- partitions -----------------------------------------------------------

    @cached_property
    def superclass_partition(self):
        A = self.A
        maps = []
        for s in self.generators:
            maps.append(lambda a, s=s: A.add(a, A.mul(s, a)))
            maps.append(lambda a, s=s: A.add(a, A.mul(a, s)))
        return self._partition("superclass", partition_by_orbits(self.elements, maps))

    def _partition(self, kind, orbits):
        index = self.index
        blocks = [tuple(index[a] for a in orb) for orb in orbits]
        block_of = [0] * self.order
        for b, ids in enumerate(blocks):
            for i in ids:
                block_of[i] = b
        return Partition(kind, self.n, blocks, block_of)

    @cached_property
    def superclasses(self):
        part = self.superclass_partition
        return [Superclass(self.n, ids, self.elements[ids[0]]) for ids in part.blocks]

    @cached_property
    def dual_orbits(self):
        maps = self.left_dual_maps + self.right_dual_maps
        orbits = []
        for orb in partition_by_orbits(self.elements, maps):
            rep = orb[0]
            left = closure(rep, self.left_dual_maps)
            right = closure(rep, self.right_dual_maps)
            orbits.append(DualOrbit(self.n, orb, rep, len(left), len(right),
                                    len(left & right)))
        return orbits

    @cached_property
    def dual_orbit_of(self):
        """Map dual vector -> index of its two-sided orbit."""
        out = {}
        for k, orb in enumerate(self.dual_orbits):
            for f in orb.members:
                out[f] = k
        return out

    def left_orbit(self, f):
        return closure(tuple(f), self.left_dual_maps)

    def right_orbit(self, f):
        return closure(tuple(f), self.right_dual_maps)

    def twisted_partition(self, m):
        """Orbits of h -> g h F^m(g)^-1; m = n gives ordinary conjugacy."""
        if m < 1 or self.n % m:
            raise LevelMismatch(f"twist {m} does not divide level {self.n}")
        if m not in self._fclass_cache:
            A = self.A
            maps = []
            for s in self.generators:
                t = A.ginv(A.frob(s, m))
                maps.append(lambda h, s=s, t=t: A.gmul(A.gmul(s, h), t))
            kind = "conjugacy" if m == self.n else f"F^{m}-class"
            self._fclass_cache[m] = self._partition(
                kind, partition_by_orbits(self.elements, maps))
        return self._fclass_cache[m]

    @property
    def conjugacy_partition(self):
        return self.twisted_partition(self.n)

    # -- centralisers ---------------------------------------------------------

    def _pairing_rows(self, f, left=True):
        """Row j: coefficients of a_i in f(a e_j) (left) or f(e_j a) (right)."""
        A = self.A
        e = [A.basis_vector(i) for i in range(A.r)]
        rows = []
        for j in range(A.r):
            if left:
                rows.append([self.pair(f, A.mul(e[i], e[j])) for i in range(A.r)])
            else:
                rows.append([self.pair(f, A.mul(e[j], e[i])) for i in range(A.r)])
        return rows

    def left_centraliser(self, f):
        """F_{q^n}-basis of {a : theta(a u) = 1 for all u}."""
        return kernel(self._pairing_rows(f, left=True), self.A.r, self.F)

    def right_centraliser(self, f):
        """F_{q^n}-basis of {a : theta(u a) = 1 for all u}."""
        return kernel(self._pairing_rows(f, left=False), self.A.r, self.F)

    def gamma_centraliser(self, f):
        """F_{q^n}-basis of {(a, b) : theta(a u) = theta(u b) for all u}."""
        F = self.F
        left = self._pairing_rows(f, left=True)
        right = self._pairing_rows(f, left=False)
        rows = [lrow + [F.neg(x) for x in rrow] for lrow, rrow in zip(left, right)]
        return kernel(rows, 2 * self.A.r, F)

    def in_left_centraliser(self, f, a):
        A = self.A
        return all(self.pair(f, A.mul(a, A.basis_vector(j))) == 0 for j in range(A.r))

    def in_right_centraliser(self, f, a):
        A = self.A
        return all(self.pair(f, A.mul(A.basis_vector(j), a)) == 0 for j in range(A.r))


def get_level(algebra, n):
    cache = algebra.__dict__.setdefault("_levels", {})
    if n not in cache:
        cache[n] = Level(algebra, n)
    return cache[n]


def superclasses(algebra, n):
    return get_level(algebra, n).superclasses


def dual_orbits(algebra, n):
    return get_level(algebra, n).dual_orbits


def left_centraliser(algebra, character):
    return get_level(algebra, character.level).left_centraliser(character.dual_coords)


def right_centraliser(algebra, character):
    return get_level(algebra, character.level).right_centraliser(character.dual_coords)


def f_classes(algebra, n, m=1):
    level = get_level(algebra, n)
    part = level.twisted_partition(m)
    return [FClass(n, m, ids, level.elements[ids[0]]) for ids in part.blocks]
