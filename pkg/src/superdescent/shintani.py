"""Norm maps, Shintani descent, and the Frobenius action on supercharacters.

For m | n the twisted classes of G(q^n) are the orbits of h -> g h F^m(g)^-1.
The norm of such a class is found by taking N = g F^m(g) ... F^(n-m)(g) for
a representative g and looking for the G(q^n)-conjugates of N that already
lie in G(q^m); all of them must fall into a single conjugacy class of
G(q^m).  Descent is then pull-back along the inverse of this bijection.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycValue
from .errors import (AmbiguousLanding, InputError, LevelMismatch, NoLanding,
                     NotSuperclassFunction, NotTwistedClassFunction, VerificationError)
from .orbits import AdditiveCharacter, closure, get_level, partition_by_orbits
from .supercharacters import (ClassFunction, SuperclassFunction, _subalgebra_ids,
                              inner_product, supercharacter_table, twisted_induction)


def norm_element(algebra, g, n, m=1):
    """Body of g F^m(g) F^2m(g) ... F^(n-m)(g)."""
    if m < 1 or n % m:
        raise LevelMismatch(f"{m} does not divide {n}")
    out = algebra.zero
    for k in range(n // m):
        out = algebra.gmul(out, algebra.frob(g, k * m))
    return out


@dataclass
class NormCorrespondence:
    n: int
    m: int
    forward: list          # twisted class index -> conjugacy class index at level m
    backward: dict
    certified_bijection: bool
    landing_sizes: list    # number of distinct landing elements per class


def norm_correspondence(algebra, n, m=1):
    """The class bijection Cl_{F^m}(G(q^n)) -> Cl(G(q^m)), with runtime checks."""
    cache = algebra.__dict__.setdefault("_norm_cache", {})
    if (n, m) in cache:
        return cache[(n, m)]
    top = get_level(algebra, n)
    low = get_level(algebra, m)
    fparts = top.twisted_partition(m)
    conj_top = top.conjugacy_partition
    conj_low = low.conjugacy_partition
    F = algebra.F
    forward = []
    landing_sizes = []
    for k, block in enumerate(fparts.blocks):
        rep = top.elements[block[0]]
        N = norm_element(algebra, rep, n, m)
        cblock = conj_top.block_of[top.index[N]]
        # independence of the representative
        for i in block[1:]:
            Ni = norm_element(algebra, top.elements[i], n, m)
            if conj_top.block_of[top.index[Ni]] != cblock:
                raise AmbiguousLanding(
                    f"norms of {rep} and {top.elements[i]} are not conjugate in G(q^{n})")
        landings = [top.elements[i] for i in conj_top.blocks[cblock]
                    if all(F.at_level(x, m) for x in top.elements[i])]
        if not landings:
            raise NoLanding(f"norm {N} of twisted class {rep} has no conjugate in G(q^{m})")
        targets = {conj_low.block_of[low.index[x]] for x in landings}
        if len(targets) != 1:
            raise AmbiguousLanding(
                f"norm {N} of twisted class {rep} meets {len(targets)} classes of G(q^{m})")
        forward.append(targets.pop())
        landing_sizes.append(len(landings))
    backward = {}
    for k, c in enumerate(forward):
        backward.setdefault(c, k)
    certified = len(forward) == len(conj_low) and len(set(forward)) == len(forward)
    result = NormCorrespondence(n, m, forward, backward, certified, landing_sizes)
    cache[(n, m)] = result
    return result


def norm_map(algebra, fclass):
    """Conjugacy class of G(q^m) (as a tuple of element ids) hit by a twisted class."""
    corr = norm_correspondence(algebra, fclass.level, fclass.twist)
    top = get_level(algebra, fclass.level)
    k = top.twisted_partition(fclass.twist).block_of[top.index[fclass.rep]]
    low = get_level(algebra, fclass.twist)
    return low.conjugacy_partition.blocks[corr.forward[k]]


def check_twisted_constant(phi, fpart):
    for block in fpart.blocks:
        v = phi.at(block[0])
        for i in block[1:]:
            if phi.at(i) != v:
                raise NotTwistedClassFunction((block[0], i))


def shintani_descend(algebra, phi, m=1):
    """Sh_{n,m}(phi) = phi o Nm^-1 for phi constant on twisted classes.

    A superclass function comes back as a superclass function of G(q^m)
    (constancy on superclasses is checked); anything else comes back on the
    conjugacy classes of G(q^m).
    """
    n = phi.level
    corr = norm_correspondence(algebra, n, m)
    if not corr.certified_bijection:
        raise VerificationError(f"norm map {n} -> {m} is not a bijection")
    top = get_level(algebra, n)
    low = get_level(algebra, m)
    fpart = top.twisted_partition(m)
    check_twisted_constant(phi, fpart)
    conj_low = low.conjugacy_partition
    values = [phi.at(fpart.blocks[corr.backward[c]][0]) for c in range(len(conj_low))]
    out = ClassFunction(conj_low, values, phi.p)
    if isinstance(phi, SuperclassFunction):
        return out.coarsen(low.superclass_partition, SuperclassFunction)
    return out


def norm_pullback(algebra, psi, n):
    """Nm*_{n,m}(psi) = psi o Nm, the inverse of descent, as a function on G(q^n)."""
    m = psi.level
    corr = norm_correspondence(algebra, n, m)
    top = get_level(algebra, n)
    low = get_level(algebra, m)
    fpart = top.twisted_partition(m)
    conj_low = low.conjugacy_partition
    values = [psi.at(conj_low.blocks[corr.forward[k]][0]) for k in range(len(fpart))]
    out = ClassFunction(fpart, values, psi.p)
    if isinstance(psi, SuperclassFunction):
        try:
            return out.coarsen(top.superclass_partition, SuperclassFunction)
        except NotSuperclassFunction:
            raise VerificationError("pull-back of a superclass function is not a "
                                    "superclass function") from None
    return out


def dual_trace_lift(tau, n):
    """tau o Tr_{n,m} at level n: the same dual coordinates, read at level n."""
    m = tau.level
    if m < 1 or n % m:
        raise LevelMismatch(f"{m} does not divide {n}")
    return AdditiveCharacter(n, tuple(tau.dual_coords))


def frobenius_dual(algebra, f, m=1):
    """Dual vector of theta_f o F^m, namely F^-m applied coordinatewise."""
    return tuple(algebra.F.frobenius(x, -m) for x in f)


def f_invariant_characters(algebra, n, m=1):
    """Dual vectors f at level n with theta_f(F^m a) = theta_f(a), tested on values."""
    level = get_level(algebra, n)
    A = algebra
    basis = [A.basis_vector(i, x) for i in range(A.r) for x in A.F.level_basis(n)]
    images = [A.frob(a, m) for a in basis]
    return {f for f in level.elements
            if all(level.char_exponent(f, a) == level.char_exponent(f, b)
                   for a, b in zip(basis, images))}


def lifted_characters(algebra, n, m=1):
    """Dual vectors of tau o Tr_{n,m} for all tau at level m."""
    low = get_level(algebra, m)
    return {dual_trace_lift(AdditiveCharacter(m, tau), n).dual_coords for tau in low.elements}


@dataclass
class FAction:
    level: int
    twist: int
    permutation: list
    fixed: list


def f_action_on_supercharacters(algebra, n, m=1):
    """xi -> xi o F^m on the supercharacters of G(q^n), and its fixed points."""
    level = get_level(algebra, n)
    table = supercharacter_table(level)
    A = algebra
    perm = []
    # superclass of F^m(a) for each superclass rep
    part = level.superclass_partition
    frob_block = [part.block_of[level.index[A.frob(cls.rep, m)]] for cls in level.superclasses]
    for xi in table:
        g = frobenius_dual(A, xi.rep, m)
        k = level.dual_orbit_of[g]
        twisted = [xi.values.values[b] for b in frob_block]
        if list(table[k].values.values) != twisted:
            raise VerificationError(f"xi o F differs from xi_(theta o F) for orbit {xi.rep}")
        perm.append(k)
    fixed = [k for k, j in enumerate(perm) if j == k]
    for k in fixed:
        if not any(A.at_level(f, m) for f in table[k].orbit.members):
            raise VerificationError(f"F-fixed supercharacter {table[k].rep} has no "
                                    "F-invariant character in its orbit")
    return FAction(n, m, perm, fixed)


def invariance_criterion(algebra, n, m=1):
    """Per supercharacter: (fixed by F^m as a function, orbit has an F^m-invariant member)."""
    level = get_level(algebra, n)
    A = algebra
    table = supercharacter_table(level)
    images = [level.index[A.frob(a, m)] for a in level.elements]
    out = []
    for xi in table:
        fixed = all(xi(i) == xi(j) for i, j in enumerate(images))
        has_inv = any(A.at_level(f, m) for f in xi.orbit.members)
        out.append((fixed, has_inv))
    return out


def twisted_induction_check(algebra, character, m=1):
    """Does twisted induction from the left centraliser reproduce xi_theta?

    Compared elementwise.  Only linear supercharacters pass in general:
    xi_theta itself need not be constant on twisted classes.
    """
    n = character.level
    f = tuple(character.dual_coords)
    A = algebra
    if not A.at_level(f, m):
        raise InputError(f"character {f} is not F^{m}-invariant")
    level = get_level(A, n)
    return twisted_induction(level, f, m) == supercharacter_table(level).of(f).values


def twisted_extension(algebra, character, m=1):
    """The twisted-class function g -> (1/|L|) sum_x nu°(x^-1 g F^m(x)).

    These are the values of the extension of xi_theta to G(q^n) <F^m> on the
    coset G(q^n) F^m; they, not xi_theta, are what descends to xi_tau.
    Evaluated as a sum over each twisted class K:
    |G| / (|L| |K|) sum_{k in K, k in L} nu(k).
    """
    f = tuple(character.dual_coords)
    if not algebra.at_level(f, m):
        raise InputError(f"character {f} is not F^{m}-invariant")
    level = get_level(algebra, character.level)
    members = _subalgebra_ids(level, level.left_centraliser(f))
    part = level.twisted_partition(m)
    p = level.p
    values = []
    for block in part.blocks:
        counts = [0] * p
        for i in block:
            if i in members:
                counts[level.char_exponent(f, level.elements[i])] += 1
        scale = Fraction(level.order, len(members) * len(block))
        values.append(CycValue.from_powers(p, counts) * scale)
    return ClassFunction(part, values, p)


def linear_descent_check(algebra, tau, n):
    """L_{G(q^m)}(tau) = L_{G(q^n)}(theta)^{F^m}, and nu_tau(norm) = nu_theta.

    theta = tau o Tr_{n,m}.  For every g in L(theta) the norm is conjugated
    inside L(theta) into G(q^m) and nu_tau is compared with nu_theta(g).
    The conjugate is looked up through the conjugacy classes of L(theta).
    """
    m = tau.level
    A = algebra
    f = tuple(tau.dual_coords)
    top = get_level(A, n)
    low = get_level(A, m)
    L_top = _subalgebra_ids(top, top.left_centraliser(f))
    L_low = _subalgebra_ids(low, low.left_centraliser(f))
    fixed = {top.elements[i] for i in L_top if A.at_level(top.elements[i], m)}
    if fixed != {low.elements[i] for i in L_low}:
        return False
    L_els = [top.elements[i] for i in sorted(L_top)]
    # conjugacy classes of L(theta); nu_tau must be constant on the part of
    # each class lying at level m
    value_of = {}
    for cls in _conjugacy_classes(A, L_els, top):
        vals = {low.char_exponent(f, c) for c in cls if A.at_level(c, m)}
        if len(vals) > 1:
            return False
        for c in cls:
            value_of[c] = next(iter(vals)) if vals else None
    for g in L_els:
        got = value_of[norm_element(A, g, n, m)]
        if got is None or got != top.char_exponent(f, g):
            return False
    return True


def _conjugacy_classes(A, elements, level):
    """Conjugacy classes of the subgroup whose bodies are `elements`."""
    members = set(elements)
    basis = A.span_basis(elements)
    gens = [A.scale(x, b) for b in basis for x in level.F.level_basis(level.n)]
    if len(closure(A.zero, [lambda a, s=s: A.gmul(s, a) for s in gens])) != len(members):
        gens = [a for a in elements if any(a)]
    pairs = [(s, A.ginv(s)) for s in gens]
    maps = [lambda a, s=s, si=si: A.gmul(A.gmul(s, a), si) for s, si in pairs]
    return partition_by_orbits(elements, maps)


@dataclass
class DescentRow:
    tau: tuple
    low_index: int
    high_index: int
    supercharacter_descends: bool   # Sh(xi_theta) defined and equal to xi_tau
    extension_descends: bool        # Sh(twisted extension of theta) == xi_tau


def descend_supercharacters(algebra, n, m=1):
    """One DescentRow per tau at level m, theta = tau o Tr_{n,m}."""
    top = get_level(algebra, n)
    low = get_level(algebra, m)
    top_table = supercharacter_table(top)
    low_table = supercharacter_table(low)
    rows = []
    for tau in low.elements:
        theta = dual_trace_lift(AdditiveCharacter(m, tau), n)
        xi = top_table.of(theta.dual_coords)
        target = low_table.of(tau)
        try:
            literal = shintani_descend(algebra, xi.values, m) == target.values
        except NotTwistedClassFunction:
            literal = False
        ext = shintani_descend(algebra, twisted_extension(algebra, theta, m), m)
        rows.append(DescentRow(tau, target.orbit_index, xi.orbit_index, literal,
                               ext == target.values))
    return rows


def random_twisted_class_function(algebra, n, m, rng, spread=3):
    level = get_level(algebra, n)
    fpart = level.twisted_partition(m)
    p = algebra.F.p
    vals = [CycValue(p, [rng.randint(-spread, spread) for _ in range(p - 1)])
            for _ in fpart.blocks]
    return ClassFunction(fpart, vals, p)


def isometry_check(algebra, n, m=1, samples=100, seed=0, basis="supercharacters"):
    """<Sh phi, Sh psi> = <phi, psi> on an F-fixed basis and random functions.

    basis="supercharacters" uses the F-fixed supercharacters themselves; a
    pair whose member cannot be descended counts as a failure.
    basis="extensions" uses the twisted extensions of F-invariant characters
    (one per F-fixed orbit).  Returns (number of pairs checked, failures).
    """
    action = f_action_on_supercharacters(algebra, n, m)
    level = get_level(algebra, n)
    table = supercharacter_table(level)
    funcs = []
    for k in action.fixed:
        if basis == "supercharacters":
            funcs.append(table[k].values)
        elif basis == "extensions":
            f = next(f for f in table[k].orbit.members if algebra.at_level(f, m))
            funcs.append(twisted_extension(algebra, AdditiveCharacter(n, f), m))
        else:
            raise InputError(f"unknown basis {basis!r}")
    desc = []
    for phi in funcs:
        try:
            desc.append(shintani_descend(algebra, phi, m))
        except NotTwistedClassFunction:
            desc.append(None)
    rng = random.Random(seed)
    randoms = [random_twisted_class_function(algebra, n, m, rng) for _ in range(samples)]
    rdesc = [shintani_descend(algebra, phi, m) for phi in randoms]
    checked = failures = 0

    def compare(a, b, sa, sb):
        nonlocal checked, failures
        checked += 1
        if sa is None or sb is None or inner_product(sa, sb) != inner_product(a, b):
            failures += 1

    for phi, sphi in zip(funcs, desc):
        for psi, spsi in zip(funcs, desc):
            compare(phi, psi, sphi, spsi)
    for i in range(samples):
        j = (i + 1) % samples
        compare(randoms[i], randoms[j], rdesc[i], rdesc[j])
        compare(randoms[i], randoms[i], rdesc[i], rdesc[i])
        for phi, sphi in zip(funcs, desc):
            compare(randoms[i], phi, rdesc[i], sphi)
    return checked, failures
