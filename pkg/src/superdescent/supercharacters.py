"""Supercharacters of G(q^n) by three independent routes, and the functions
they live among.

* :func:`supercharacter_value` sums the two-sided dual orbit (closed form);
* :func:`supercharacter_by_class_sum` sums the character over a superclass;
* :func:`induced_character_oracle` literally induces the linear character
  of the left (or right) centraliser.  It is slow and serves as referee.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cyclotomic import CycValue, root_of_unity
from .errors import LevelMismatch, NotSuperclassFunction, VerificationError
from .linalg import span
from .orbits import get_level


class ClassFunction:
    """Values of a function on G(q^n), one CycValue per block of a partition."""

    def __init__(self, partition, values, p):
        if len(values) != len(partition.blocks):
            raise ValueError("one value per block expected")
        self.partition = partition
        self.values = tuple(values)
        self.p = p

    @property
    def level(self):
        return self.partition.level

    @property
    def kind(self):
        return self.partition.kind

    def at(self, element_id):
        return self.values[self.partition.block_of[element_id]]

    def element_values(self):
        return [self.values[b] for b in self.partition.block_of]

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.level != other.level:
            return False
        if self.partition.blocks == other.partition.blocks:
            return self.values == other.values
        return self.element_values() == other.element_values()

    def __hash__(self):
        return hash((self.level, self.values))

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"{type(self).__name__}(level={self.level}, {self.kind}: [{vals}])"

    def _combine(self, other, op):
        if self.partition.blocks == other.partition.blocks:
            return type(self)(self.partition, [op(a, b) for a, b in
                                               zip(self.values, other.values)], self.p)
        raise ValueError("functions on different partitions")

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, c):
        return type(self)(self.partition, [v * c for v in self.values], self.p)

    __rmul__ = __mul__

    def coarsen(self, partition, cls=None):
        """Same function on a coarser partition; raises if not constant on it."""
        cls = cls or ClassFunction
        vals = []
        for block in partition.blocks:
            v = self.at(block[0])
            for i in block[1:]:
                if self.at(i) != v:
                    raise NotSuperclassFunction((block[0], i))
            vals.append(v)
        return cls(partition, vals, self.p)


class SuperclassFunction(ClassFunction):
    """A ClassFunction whose blocks are the superclasses of its level."""

    def __init__(self, partition, values, p):
        if partition.kind != "superclass":
            raise ValueError("SuperclassFunction needs the superclass partition")
        super().__init__(partition, values, p)


def constant_function(level, value=1):
    part = level.superclass_partition
    return SuperclassFunction(part, [CycValue.from_int(level.p, value)] * len(part), level.p)


def inner_product(phi, psi):
    """(1/|G|) sum_g phi(g) conj(psi(g)), exact."""
    if phi.level != psi.level:
        raise LevelMismatch(f"level {phi.level} vs level {psi.level}")
    p = phi.p
    total = CycValue(p)
    if phi.partition.blocks == psi.partition.blocks:
        for size, a, b in zip(phi.partition.sizes, phi.values, psi.values):
            total = total + a * b.conj() * size
        order = sum(phi.partition.sizes)
    else:
        pv, qv = phi.element_values(), psi.element_values()
        for a, b in zip(pv, qv):
            total = total + a * b.conj()
        order = len(pv)
    return total / order


@dataclass(frozen=True)
class Supercharacter:
    level: int
    orbit_index: int
    orbit: object
    values: SuperclassFunction
    degree: CycValue
    norm: int

    @property
    def rep(self):
        return self.orbit.rep

    def __call__(self, element_id):
        return self.values.at(element_id)


class SupercharacterTable:
    """Supercharacters of one level, rows in dual-orbit order."""

    def __init__(self, level):
        self.level = level
        self.p = level.p

    def _orbit_value(self, orbit, a):
        lv = self.level
        counts = [0] * self.p
        for f in orbit.members:
            counts[lv.char_exponent(f, a)] += 1
        scalar = Fraction(orbit.left_orbit_size, orbit.size)
        return CycValue.from_powers(self.p, counts) * scalar

    @cached_property
    def characters(self):
        lv = self.level
        part = lv.superclass_partition
        out = []
        for k, orbit in enumerate(lv.dual_orbits):
            vals = [self._orbit_value(orbit, cls.rep) for cls in lv.superclasses]
            func = SuperclassFunction(part, vals, self.p)
            degree = vals[0]
            if degree != orbit.left_orbit_size:
                raise VerificationError(f"degree {degree} != |G theta| = {orbit.left_orbit_size}")
            out.append(Supercharacter(lv.n, k, orbit, func, degree, orbit.biinvariant_size))
        return out

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, k):
        return self.characters[k]

    def of(self, f):
        """The supercharacter attached to dual vector f."""
        return self.characters[self.level.dual_orbit_of[tuple(f)]]


def supercharacter_table(level):
    cache = level.__dict__.setdefault("_sch_table", None)
    if cache is None:
        cache = level.__dict__["_sch_table"] = SupercharacterTable(level)
    return cache


def supercharacters(algebra, n):
    return supercharacter_table(get_level(algebra, n)).characters


def supercharacter_value(level, f, g):
    """xi_theta(1 + g) by the closed orbit-sum formula."""
    orbit = level.dual_orbits[level.dual_orbit_of[tuple(f)]]
    return supercharacter_table(level)._orbit_value(orbit, tuple(g))


def supercharacter_by_class_sum(level, f, superclass, left_size=None):
    """(|G theta| / |K|) sum_{b in K} theta(b) for the superclass K = 1 + GaG.

    |G theta| is found by closing the left orbit unless left_size is given.
    """
    f = tuple(f)
    left = left_size or len(level.left_orbit(f))
    counts = [0] * level.p
    for i in superclass.member_ids:
        counts[level.char_exponent(f, level.elements[i])] += 1
    return CycValue.from_powers(level.p, counts) * Fraction(left, superclass.size)


def _subalgebra_ids(level, basis):
    vecs = span(basis, level.F.enumerate_level(level.n), level.F)
    return {level.index[v] for v in vecs}


def conjugation_table(level, twist=None):
    """table[g][x] = id of x^-1 g F^twist(x) (twist None: x g x^-1)."""
    cache = level.__dict__.setdefault("_conj_tables", {})
    if twist in cache:
        return cache[twist]
    A = level.A
    els = level.elements
    index = level.index
    if twist is None:
        left = els
        right = [A.ginv(x) for x in els]
    else:
        left = [A.ginv(x) for x in els]
        right = [A.frob(x, twist) for x in els]
    table = []
    for g in els:
        table.append([index[A.gmul(A.gmul(lx, g), rx)] for lx, rx in zip(left, right)])
    cache[twist] = table
    return table


def induced_character_oracle(level, f, side="left"):
    """Ind from the left (or right) centraliser of nu_theta, by the definition.

    xi(g) = (1/|L|) sum_{h in G} nu°(h g h^-1).  Verified constant on
    superclasses before being returned as a SuperclassFunction.
    """
    f = tuple(f)
    basis = level.left_centraliser(f) if side == "left" else level.right_centraliser(f)
    members = _subalgebra_ids(level, basis)
    return _induce(level, f, members, conjugation_table(level))


def twisted_induction(level, f, twist=1):
    """(1/|L|) sum_x nu°(x^-1 g F^twist(x)) as a function on G(q^n).

    The result is constant on the F^twist-classes and is returned on that
    partition; it need not be constant on superclasses.
    """
    f = tuple(f)
    members = _subalgebra_ids(level, level.left_centraliser(f))
    values = _induced_values(level, f, members, conjugation_table(level, twist))
    part = level.twisted_partition(twist)
    out = []
    for block in part.blocks:
        v = values[block[0]]
        for i in block[1:]:
            if values[i] != v:  # pragma: no cover - holds by construction
                raise VerificationError(f"twisted induction not constant at {(block[0], i)}")
        out.append(v)
    return ClassFunction(part, out, level.p)


def _induce(level, f, members, table):
    return _from_element_values(level, _induced_values(level, f, members, table))


def _induced_values(level, f, members, table):
    p = level.p
    nu = {i: level.char_exponent(f, level.elements[i]) for i in members}
    size = len(members)
    values = []
    for row in table:
        counts = [0] * p
        for i in row:
            k = nu.get(i)
            if k is not None:
                counts[k] += 1
        values.append(CycValue.from_powers(p, counts) / size)
    return values


def _from_element_values(level, values):
    part = level.superclass_partition
    out = []
    for block in part.blocks:
        v = values[block[0]]
        for i in block[1:]:
            if values[i] != v:
                raise NotSuperclassFunction((block[0], i))
        out.append(v)
    return SuperclassFunction(part, out, level.p)


def gram_matrix(level):
    """All <xi, xi'> at once, exactly, as a list of lists of CycValue.

    Values are kept as integer counts over zeta^0..zeta^(p-1) times a
    rational scale, so the sum over superclasses is an integer matrix product.
    """
    table = supercharacter_table(level)
    p = level.p
    orbits = [xi.orbit for xi in table]
    weights = np.array(level.superclass_partition.sizes, dtype=object)
    counts = []
    for orbit in orbits:
        rows = []
        for cls in level.superclasses:
            c = [0] * p
            for f in orbit.members:
                c[level.char_exponent(f, cls.rep)] += 1
            rows.append(c)
        counts.append(rows)
    A = np.array(counts, dtype=np.int64)            # orbit x superclass x exponent
    bound = int(A.max()) ** 2 * int(sum(weights)) * p
    dtype = np.int64 if bound < 2 ** 62 else object
    A = A.astype(dtype)
    W = (A * weights.astype(dtype)[None, :, None]).reshape(len(orbits), -1)
    # coefficient of zeta^e: sum_{K, j} w_K a_K[j] b_K[j - e]
    coeff = [W @ np.roll(A, e, axis=2).reshape(len(orbits), -1).T for e in range(p)]
    scales = [Fraction(o.left_orbit_size, o.size) for o in orbits]
    out = []
    for a in range(len(orbits)):
        row = []
        for b in range(len(orbits)):
            v = CycValue.from_powers(p, [int(coeff[e][a, b]) for e in range(p)])
            row.append(v * (scales[a] * scales[b] / level.order))
        out.append(row)
    return out


def regular_decomposition(level):
    """[(supercharacter, multiplicity)] with multiplicity xi(1) / <xi, xi>."""
    table = supercharacter_table(level)
    out = []
    total = None
    for xi in table:
        norm = inner_product(xi.values, xi.values)
        m = xi.degree.rational() / norm.rational()
        if m.denominator != 1 or m < 0:
            raise VerificationError(f"non-integral multiplicity {m} for orbit {xi.rep}")
        m = int(m)
        out.append((xi, m))
        term = xi.values * m
        total = term if total is None else total + term
    identity_block = level.superclass_partition.block_of[level.index[level.identity]]
    for b, v in enumerate(total.values):
        expected = level.order if b == identity_block else 0
        if v != expected:
            raise VerificationError(f"regular character mismatch on superclass {b}: {v}")
    return out


def normalize(xi, level=None):
    """xi / xi(1), checked against the orbit average (1/|w|) sum theta(a)."""
    vals = xi.values
    normalized = vals * Fraction(1, xi.degree.rational())
    if level is not None:
        p = level.p
        for cls, v in zip(level.superclasses, normalized.values):
            counts = [0] * p
            for f in xi.orbit.members:
                counts[level.char_exponent(f, cls.rep)] += 1
            avg = CycValue.from_powers(p, counts) / xi.orbit.size
            if avg != v:
                raise VerificationError(f"normalised value mismatch on {cls.rep}")
    return normalized


def character_value(level, f, a):
    """theta_f(a) as a CycValue."""
    return root_of_unity(level.p, level.char_exponent(tuple(f), tuple(a)))
