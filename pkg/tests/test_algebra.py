import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_algebra
from superdescent.algebra import (NilpotentAlgebra, alg_mul, builtin_algebra, enumerate_group,
                                  frobenius_alg, group_element, group_inv, group_mul, ut_basis)
from superdescent.errors import (AssocViolation, InputError, LevelMismatch, NotNilpotent,
                                 SizeBoundExceeded)
from superdescent.field_tower import build_tower


def test_ut3_structure():
    A = make_algebra("ut", 3, 2, (1, 2))
    assert A.r == 3 and A.nilpotency_class == 3
    e1, e2, e3 = (A.element(A.basis_vector(i)) for i in range(3))
    assert alg_mul(e1, e2).coords == e3.coords
    assert alg_mul(e2, e1).coords == A.zero
    assert alg_mul(e1, A.element(A.zero)).coords == A.zero
    nonzero = [(i, j) for i in range(3) for j in range(3) if A.constants[i][j]]
    assert nonzero == [(0, 1)]


def test_group_examples():
    A = make_algebra("ut", 3, 2, (1, 2))
    g1 = group_element(A, (1, 0, 0))
    g2 = group_element(A, (0, 1, 0))
    assert group_mul(g1, g2).body.coords == (1, 1, 1)
    assert group_mul(g1, g1).body.coords == A.zero
    assert group_inv(g1).body.coords == (1, 0, 0)
    one = group_element(A, A.zero)
    assert group_inv(one) == one
    assert group_mul(g1, one) == g1


def test_truncpoly_inverse():
    A = make_algebra("truncpoly", 2, 3, (1,))
    # (1 + t)^-1 = 1 - t + t^2, body (-1, 1) = (2, 1) mod 3
    assert A.ginv((1, 0)) == (2, 1)
    assert A.mul((1, 0), (1, 0)) == (0, 1)
    assert A.mul((1, 0), (0, 1)) == A.mul((0, 1), (0, 1)) == (0, 0)


@pytest.mark.parametrize("family,param,p,n,count", [
    ("ut", 3, 2, 1, 8), ("ut", 3, 2, 2, 64), ("abelian", 1, 3, 1, 3), ("abelian", 2, 2, 1, 4),
])
def test_enumeration_counts(family, param, p, n, count):
    A = make_algebra(family, param, p, (n,))
    assert len(A.enumerate(n)) == count == len(set(A.enumerate(n)))
    assert len(enumerate_group(A, n)) == count


@pytest.mark.parametrize("family,param,p,n", [
    ("ut", 3, 2, 2), ("ut", 3, 3, 1), ("truncpoly", 3, 2, 1), ("ut", 4, 2, 1),
])
def test_group_axioms_exhaustive(family, param, p, n):
    A = make_algebra(family, param, p, (n,))
    els = A.enumerate(n)
    zero = A.zero
    for a in els:
        assert A.gmul(a, zero) == A.gmul(zero, a) == a
        assert A.gmul(a, A.ginv(a)) == zero == A.gmul(A.ginv(a), a)
    sample = els if len(els) <= 64 else els[::7]
    for a, b, c in itertools.product(sample, repeat=3):
        assert A.gmul(A.gmul(a, b), c) == A.gmul(a, A.gmul(b, c))
    # closed under multiplication at this level
    for a, b in itertools.product(sample, repeat=2):
        assert A.at_level(A.gmul(a, b), n)


def test_frobenius_fixes_rational_points():
    A = make_algebra("ut", 3, 2, (1, 2))
    for a in A.enumerate(1):
        assert A.frob(a) == a
    for a in A.enumerate(2):
        assert A.frob(a, 2) == a
    moved = [a for a in A.enumerate(2) if A.frob(a) != a]
    assert len(moved) == 64 - 8
    x = A.element((2, 0, 0), 2)
    assert frobenius_alg(x).coords == (3, 0, 0)


@pytest.mark.parametrize("family,param,dims", [
    ("ut", 3, [3, 1]), ("ut", 4, [6, 3, 1]), ("truncpoly", 3, [3, 2, 1]), ("abelian", 2, [2]),
])
def test_nilpotency(family, param, dims):
    A = make_algebra(family, param, 2, (1,))
    assert A.power_dims == dims
    assert A.nilpotency_class == len(dims) + 1


def test_nilpotency_brute_force():
    # A^k spanned by all k-fold products; compare dimension counts at q = 2
    A = make_algebra("ut", 4, 2, (1,))
    layer = set(A.enumerate(1))
    k = 1
    while any(any(a) for a in layer):
        k += 1
        prods = {A.mul(a, b) for a in layer for b in A.enumerate(1)}
        # close under addition
        span = {A.zero}
        for v in prods:
            span |= {A.add(s, v) for s in span}
        layer = span
    assert k == A.nilpotency_class


def test_not_nilpotent():
    F = build_tower(2, 1, [1])
    with pytest.raises(NotNilpotent):
        NilpotentAlgebra(F, 1, [[[(0, 1)]]])


def test_assoc_violation():
    F = build_tower(2, 1, [1])
    # e1 e1 = e2, e1 e2 = e3, but e2 e1 = 0: (e1 e1) e1 = 0 != e1 (e1 e1) = e3
    consts = [[[] for _ in range(3)] for _ in range(3)]
    consts[0][0] = [(1, 1)]
    consts[0][1] = [(2, 1)]
    with pytest.raises(AssocViolation) as info:
        NilpotentAlgebra(F, 3, consts)
    assert info.value.triple == (1, 1, 1)


def test_input_errors():
    F = build_tower(2, 1, [1, 2])
    with pytest.raises(InputError):
        builtin_algebra("lie", [3], F)
    with pytest.raises(InputError):
        builtin_algebra("ut", [1], F)
    with pytest.raises(InputError):
        NilpotentAlgebra(F, 1, [[[(0, 2)]]])       # coefficient outside F_q
    A = builtin_algebra("ut", [3], F)
    with pytest.raises(LevelMismatch):
        A.element((2, 0, 0), 1)
    with pytest.raises(LevelMismatch):
        group_mul(group_element(A, (1, 0, 0), 1), group_element(A, (1, 0, 0), 2))
    small = builtin_algebra("ut", [3], F, size_bound=10)
    with pytest.raises(SizeBoundExceeded):
        small.enumerate(2)


# matrix model of ut(4) over F_16 as the oracle for gmul / ginv / frob
F16 = build_tower(2, 1, [4])
UT4 = builtin_algebra("ut", [4], F16)
PAIRS = ut_basis(4)


def to_matrix(a):
    M = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    for (i, j), x in zip(PAIRS, a):
        M[i - 1][j - 1] = x
    return M


def matmul(M, N):
    F = F16
    out = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            s = 0
            for k in range(4):
                s = F.add(s, F.mul(M[i][k], N[k][j]))
            out[i][j] = s
    return out


bodies = st.lists(st.integers(0, 15), min_size=6, max_size=6).map(tuple)


@settings(max_examples=150, deadline=None)
@given(bodies, bodies)
def test_ut4_matches_matrices(a, b):
    A = UT4
    assert to_matrix(A.gmul(a, b)) == matmul(to_matrix(a), to_matrix(b))
    assert matmul(to_matrix(a), to_matrix(A.ginv(a))) == to_matrix(A.zero)
    assert A.frob(A.gmul(a, b)) == A.gmul(A.frob(a), A.frob(b))
    assert A.ginv(A.frob(a)) == A.frob(A.ginv(a))
