"""Nilpotent algebras by structure constants and their algebra groups.

An element of A(q^n) is a tuple of r field codes (coordinates on the fixed
F_q-basis e_1, ..., e_r); the group element 1 + a is represented by its
body a.  The tuple kernels (``mul``, ``gmul``, ``ginv``, ...) are what the
rest of the package runs on; :class:`AlgebraElement` and
:class:`GroupElement` wrap them with a level tag for the public API.
"""

from dataclasses import dataclass
from itertools import product

from .errors import AssocViolation, InputError, LevelMismatch, NotNilpotent, SizeBoundExceeded
from .linalg import rank, row_echelon

DEFAULT_SIZE_BOUND = 1 << 24


class NilpotentAlgebra:
    """A finite-dimensional associative nilpotent F_q-algebra.

    ``constants[i][j]`` lists pairs (k, c) with e_i e_j = sum c e_k, c in F_q
    (ambient field codes), all indices 0-based.  Validation happens here.
    """

    def __init__(self, tower, r, constants, name=None, size_bound=DEFAULT_SIZE_BOUND):
        self.F = tower
        self.r = r
        self.name = name or f"algebra(r={r})"
        self.size_bound = size_bound
        table = [[[] for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                acc = {}
                for k, c in constants[i][j]:
                    if not 0 <= k < r:
                        raise InputError(f"structure constant index {k + 1} outside [1, {r}]")
                    if not tower.at_level(c, 1):
                        raise InputError(f"structure constant {c} is not in F_q")
                    acc[k] = tower.add(acc.get(k, 0), c)
                table[i][j] = [(k, c) for k, c in sorted(acc.items()) if c]
        self.constants = table
        self._pairs = [(i, j, table[i][j]) for i in range(r) for j in range(r) if table[i][j]]
        self._check_associative()
        self.nilpotency_class, self.power_dims = self._nilpotency()
        self._enum_cache = {}

    def __repr__(self):
        return f"NilpotentAlgebra({self.name}, q={self.F.q})"

    # -- tuple kernels ----------------------------------------------------

    @property
    def zero(self):
        return (0,) * self.r

    def basis_vector(self, i, scalar=1):
        v = [0] * self.r
        v[i] = scalar
        return tuple(v)

    def add(self, a, b):
        add = self.F.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.F.neg
        return tuple(neg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, s, a):
        mul = self.F.mul
        return tuple(mul(s, x) for x in a)

    def mul(self, a, b):
        F = self.F
        out = [0] * self.r
        for i, j, terms in self._pairs:
            ai = a[i]
            if not ai:
                continue
            bj = b[j]
            if not bj:
                continue
            s = F.mul(ai, bj)
            for k, c in terms:
                out[k] = F.add(out[k], F.mul(c, s))
        return tuple(out)

    def gmul(self, a, b):
        """Body of (1+a)(1+b) = 1 + a + b + ab."""
        return self.add(self.add(a, b), self.mul(a, b))

    def ginv(self, a):
        """Body of (1+a)^-1 = 1 - a + a^2 - ..., finite by nilpotency."""
        m = self.neg(a)
        term = m
        acc = m
        while any(term):
            term = self.mul(term, m)
            acc = self.add(acc, term)
        return acc

    def frob(self, a, times=1):
        fr = self.F.frobenius
        return tuple(fr(x, times) for x in a)

    def at_level(self, a, n):
        return all(self.F.at_level(x, n) for x in a)

    # -- validation ---------------------------------------------------------

    def _check_associative(self):
        r = self.r
        e = [self.basis_vector(i) for i in range(r)]
        for i in range(r):
            for j in range(r):
                eij = self.mul(e[i], e[j])
                for k in range(r):
                    left = self.mul(eij, e[k])
                    right = self.mul(e[i], self.mul(e[j], e[k]))
                    if left != right:
                        raise AssocViolation(i + 1, j + 1, k + 1, left, right)

    def _nilpotency(self):
        """Dimensions of A, A^2, ... and the smallest s with A^s = 0.

        A^k is spanned by basis monomials of length k; a spanning family of
        monomials is carried along so a witness chain exists on failure.
        """
        r = self.r
        F = self.F
        if r == 0:
            return 1, [0]
        layer = [((i,), self.basis_vector(i)) for i in range(r)]
        dims = [r]
        for _ in range(r):
            cands = [(chain + (j,), self.mul(v, self.basis_vector(j)))
                     for chain, v in layer for j in range(r)]
            kept, rows = [], []
            for chain, v in cands:
                if any(v) and rank(rows + [v], F) > len(rows):
                    rows.append(v)
                    kept.append((chain, v))
            layer = kept
            dims.append(len(kept))
            if not kept:
                return len(dims), dims[:-1]
        raise NotNilpotent([i + 1 for i in layer[0][0]])

    # -- levels ------------------------------------------------------------

    def order(self, n):
        return self.F.q ** (self.r * n)

    def check_size(self, n):
        size = self.order(n)
        if size > self.size_bound:
            raise SizeBoundExceeded(f"|A(q^{n})|", size, self.size_bound)

    def enumerate(self, n):
        """All elements of A(q^n) in canonical (lexicographic) order."""
        if n not in self._enum_cache:
            self.check_size(n)
            scalars = self.F.enumerate_level(n)
            self._enum_cache[n] = tuple(product(scalars, repeat=self.r))
        return self._enum_cache[n]

    def element(self, coords, n=1):
        coords = tuple(coords)
        if len(coords) != self.r:
            raise InputError(f"expected {self.r} coordinates, got {len(coords)}")
        if not self.at_level(coords, n):
            raise LevelMismatch(f"{coords} is not at level {n}")
        return AlgebraElement(self, n, coords)

    def span_basis(self, vectors):
        return row_echelon(vectors, self.F)[0]

    def describe(self):
        return {
            "name": self.name,
            "r": self.r,
            "nilpotency_class": self.nilpotency_class,
            "power_dims": self.power_dims,
            "constants": [
                {"i": i + 1, "j": j + 1, "k": k + 1, "coeff": self.F.base_coordinates(c)}
                for i, j, terms in self._pairs for k, c in terms
            ],
        }


# -- public level-tagged wrappers --------------------------------------------

@dataclass(frozen=True)
class AlgebraElement:
    algebra: NilpotentAlgebra
    level: int
    coords: tuple

    def __repr__(self):
        return f"AlgebraElement(level={self.level}, coords={list(self.coords)})"


@dataclass(frozen=True)
class GroupElement:
    body: AlgebraElement

    @property
    def level(self):
        return self.body.level

    def __repr__(self):
        return f"1 + {list(self.body.coords)} @ level {self.level}"


def _same(a, b):
    if a.algebra is not b.algebra:
        raise InputError("elements belong to different algebras")
    if a.level != b.level:
        raise LevelMismatch(f"level {a.level} vs level {b.level}")


def alg_mul(a, b):
    _same(a, b)
    return AlgebraElement(a.algebra, a.level, a.algebra.mul(a.coords, b.coords))


def group_mul(g, h):
    _same(g.body, h.body)
    A = g.body.algebra
    return GroupElement(AlgebraElement(A, g.level, A.gmul(g.body.coords, h.body.coords)))


def group_inv(g):
    A = g.body.algebra
    return GroupElement(AlgebraElement(A, g.level, A.ginv(g.body.coords)))


def frobenius_alg(a, times=1):
    return AlgebraElement(a.algebra, a.level, a.algebra.frob(a.coords, times))


def group_element(algebra, coords, n=1):
    return GroupElement(algebra.element(coords, n))


def enumerate_group(algebra, n):
    return [GroupElement(AlgebraElement(algebra, n, a)) for a in algebra.enumerate(n)]


# -- builtin families ----------------------------------------------------------

def ut_basis(n):
    """Index pairs (i, j), i < j, ordered by superdiagonal then row."""
    return [(i, i + s) for s in range(1, n) for i in range(1, n - s + 1)]


def builtin_algebra(family, params, tower, size_bound=DEFAULT_SIZE_BOUND):
    if isinstance(params, int):
        params = [params]
    if len(params) != 1 or not isinstance(params[0], int) or params[0] < 1:
        raise InputError(f"builtin {family!r} takes one positive integer parameter")
    n = params[0]
    if family == "ut":
        if n < 2:
            raise InputError("ut(n) needs n >= 2")
        pairs = ut_basis(n)
        index = {pq: k for k, pq in enumerate(pairs)}
        r = len(pairs)
        constants = [[[] for _ in range(r)] for _ in range(r)]
        for a, (i, j) in enumerate(pairs):
            for b, (j2, k) in enumerate(pairs):
                if j == j2:
                    constants[a][b].append((index[(i, k)], 1))
        name = f"ut({n})"
    elif family == "abelian":
        r = n
        constants = [[[] for _ in range(r)] for _ in range(r)]
        name = f"abelian({n})"
    elif family == "truncpoly":
        r = n
        constants = [[[] for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                if i + j + 2 <= r:
                    constants[i][j].append((i + j + 1, 1))
        name = f"truncpoly({n})"
    else:
        raise InputError(f"unknown builtin family {family!r}")
    return NilpotentAlgebra(tower, r, constants, name=name, size_bound=size_bound)
