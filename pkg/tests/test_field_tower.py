import pytest
from hypothesis import given, settings, strategies as st

from superdescent.errors import InputError, LevelMismatch, SizeBoundExceeded
from superdescent.field_tower import (build_tower, divisors, is_irreducible, lcm,
                                      smallest_irreducible)


def poly_eval(F, coeffs, x):
    out = 0
    for c in reversed(coeffs):
        out = F.add(F.mul(out, x), F.from_int(c))
    return out


@pytest.mark.parametrize("p,d,levels,q,L,size", [
    (2, 1, [1, 2], 2, 2, 4),
    (3, 1, [1], 3, 1, 3),
    (2, 1, [2, 3], 2, 6, 64),
    (2, 2, [1, 3], 4, 3, 64),
])
def test_tower_parameters(p, d, levels, q, L, size):
    F = build_tower(p, d, levels)
    assert (F.q, F.L, F.size) == (q, L, size)
    assert is_irreducible(F.modulus, p)
    assert F.modulus[-1] == 1 and len(F.modulus) == F.degree + 1


def test_modulus_is_lex_smallest():
    # a quartic over F_2 is reducible iff it has a root or equals (x^2+x+1)^2
    cands = [[c0, c1, c2, c3, 1] for c3 in (0, 1) for c2 in (0, 1)
             for c1 in (0, 1) for c0 in (0, 1)]
    irr = [f for f in cands
           if f[0] == 1 and sum(f) % 2 == 1 and f != [1, 0, 1, 0, 1]]
    assert irr == [f for f in cands if is_irreducible(f, 2)]
    assert smallest_irreducible(2, 4) == min(irr, key=lambda f: f[::-1])


def test_frobenius_on_f4():
    F = build_tower(2, 1, [1, 2])
    w = F.generator
    assert poly_eval(F, [1, 1, 1], w) == 0
    assert F.frobenius(w) == F.mul(w, w) == F.add(w, 1)
    assert F.field_trace(w, 2, 1) == 1
    assert F.field_trace(0, 2, 1) == 0
    for x in F.enumerate_level(1):
        assert F.frobenius(x) == x


def test_frobenius_has_order_L():
    F = build_tower(2, 1, [2, 3])
    for x in range(F.size):
        assert F.frobenius(x, F.L) == x
    assert any(F.frobenius(x, 3) != x for x in range(F.size))


@pytest.mark.parametrize("p,d,levels", [(2, 1, [1, 2, 4]), (3, 1, [1, 2]), (2, 2, [1, 2])])
def test_enumerate_level(p, d, levels):
    F = build_tower(p, d, levels)
    for n in divisors(F.L):
        els = F.enumerate_level(n)
        assert len(els) == F.q ** n == len(set(els))
        assert list(els) == sorted(els)
        brute = [x for x in range(F.size) if F.frobenius(x, n) == x]
        assert list(els) == brute


@pytest.mark.parametrize("p,d,levels", [(2, 1, [1, 2, 4]), (3, 1, [1, 2]), (2, 2, [1, 2])])
def test_trace_properties(p, d, levels):
    F = build_tower(p, d, levels)
    for n in divisors(F.L):
        for m in divisors(n):
            images = set()
            for x in F.enumerate_level(n):
                t = F.field_trace(x, n, m)
                assert F.at_level(t, m)
                images.add(t)
            assert images == set(F.enumerate_level(m))
        for x in F.enumerate_level(n):
            assert F.field_trace(x, n, n) == x
            # transitivity of traces through the prime field
            assert F.prime_trace(x, n) == F.prime_trace(F.field_trace(x, n, 1), 1)


def test_prime_trace_matches_power_sum():
    F = build_tower(3, 1, [2])
    for x in F.enumerate_level(2):
        s = F.add(x, F.power(x, 3))
        assert s < 3 and F.prime_trace(x, 2) == s


def test_base_scalar_roundtrip():
    F = build_tower(2, 2, [1, 2])
    g = F.base_generator
    assert poly_eval(F, smallest_irreducible(2, 2), g) == 0
    seen = set()
    for x in F.enumerate_level(1):
        coeffs = F.base_coordinates(x)
        assert F.base_scalar(coeffs) == x
        seen.add(tuple(coeffs))
    assert len(seen) == 4
    with pytest.raises(InputError):
        F.base_scalar([1, 0, 1])


@pytest.mark.parametrize("bad", [4, 1, 0])
def test_bad_prime(bad):
    with pytest.raises(InputError):
        build_tower(bad, 1, [1])


def test_level_errors():
    F = build_tower(2, 1, [1, 2])
    with pytest.raises(LevelMismatch):
        F.enumerate_level(3)
    with pytest.raises(LevelMismatch):
        F.field_trace(F.generator, 1, 1)
    with pytest.raises(SizeBoundExceeded):
        build_tower(2, 1, [12], size_bound=1000)


def test_small_helpers():
    assert lcm(2, 3, 4) == 12
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


# table-driven arithmetic against the slow polynomial route
@pytest.mark.parametrize("p,d,levels", [(2, 1, [1, 2, 3]), (3, 1, [1, 2]), (5, 1, [2])])
def test_tables_agree_with_polynomials(p, d, levels):
    F = build_tower(p, d, levels)
    xs = range(F.size)
    for a in xs:
        for b in list(xs)[:: max(1, F.size // 12)]:
            assert F.mul(a, b) == F._mul_slow(a, b)
            assert F.add(a, b) == F._add_slow(a, b)


F64 = build_tower(2, 1, [2, 3])
F81 = build_tower(3, 1, [4])
elems = st.sampled_from(range(64))
elems3 = st.sampled_from(range(81))


@settings(max_examples=200, deadline=None)
@given(elems, elems, elems)
def test_field_axioms_char2(a, b, c):
    F = F64
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    # Frobenius is a ring homomorphism
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@settings(max_examples=200, deadline=None)
@given(elems3, elems3)
def test_field_axioms_char3(a, b):
    F = F81
    assert F.sub(F.add(a, b), b) == a
    assert F.power(a, 81) == a
    assert F.field_trace(F.add(a, b), 4, 2) == F.add(F.field_trace(a, 4, 2), F.field_trace(b, 4, 2))
