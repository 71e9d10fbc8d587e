import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from augtrace.errors import DivisionByZero, NotDivisor, NotInSubfield, NotOddPrime
from augtrace.gf import (
    arith,
    build_tower,
    divisors,
    factorize,
    find_irreducible,
    is_irreducible,
    is_prime,
)
from oracles import SlowField

SMALL_TOWERS = [(3, 2, 1, 2), (3, 3, 1, 3), (3, 4, 2, 1), (5, 2, 1, 2), (7, 2, 2, 1), (3, 6, 2, 3)]


def test_tower_sizes():
    t = build_tower(3, 6, 2, 1)
    assert (t.q, t.size(t.m1), t.size(t.m2)) == (729, 9, 3)


@pytest.mark.parametrize("args,exc", [((3, 6, 4, 1), NotDivisor), ((2, 4, 2, 1), NotOddPrime),
                                      ((9, 2, 1, 1), NotOddPrime), ((3, 6, 1, 4), NotDivisor)])
def test_build_rejects(args, exc):
    with pytest.raises(exc):
        build_tower(*args)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 4), (3, 7), (5, 3), (7, 2), (11, 2)])
def test_modulus_irreducible_and_first(p, m):
    f = find_irreducible(p, m)
    assert len(f) == m + 1 and f[-1] == 1
    assert is_irreducible(f, p)
    # no root in F_p as a cheap independent sanity check
    assert all(sum(c * x ** i for i, c in enumerate(f)) % p for x in range(p)) or m == 1


def test_is_irreducible_rejects_products():
    # (x + 1)(x + 2) = x^2 + 3x + 2 over F_5
    assert not is_irreducible((2, 3, 1), 5)
    assert is_irreducible((2, 0, 1), 5)      # x^2 = 3 has no root mod 5
    assert not is_irreducible((1, 0, 1), 5)  # x^2 + 1 = (x - 2)(x + 2)


@pytest.mark.parametrize("p,m", [(3, 6), (3, 5), (5, 4), (7, 3)])
def test_alpha_primitive(p, m):
    t = build_tower(p, m, 1, 1)
    q = t.q
    assert t.power(t.alpha, q - 1) == 1
    for ell in factorize(q - 1):
        assert t.power(t.alpha, (q - 1) // ell) != 1


def test_number_theory_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(728) == {2: 3, 7: 1, 13: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("params", SMALL_TOWERS)
def test_multiplication_matches_polynomial_oracle(params):
    t = build_tower(*params)
    F = SlowField(t.p, t.modulus)
    rng = np.random.default_rng(1)
    xs = rng.integers(0, t.q, size=60)
    ys = rng.integers(0, t.q, size=60)
    for x, y in zip(xs, ys):
        assert t.mul(int(x), int(y)) == F.mul(int(x), int(y))
        assert t.add(int(x), int(y)) == F.add(int(x), int(y))


@pytest.mark.parametrize("params", SMALL_TOWERS)
def test_trace_matches_oracle_and_transitivity(params):
    t = build_tower(*params)
    F = SlowField(t.p, t.modulus)
    for L in divisors(t.m):
        tab = t.trace_table(L)
        for x in range(t.q):
            r = int(tab[x])
            assert r == F.trace(x, t.m, L)
            assert t.in_subfield(r, L)
        # transitivity through every intermediate level
        for K in divisors(t.m):
            if K % L == 0:
                inner = t.trace_table(K)
                outer = t.trace_table(L, K)
                assert np.array_equal(outer[inner], tab)


def test_trace_exhaustive_sweep_up_to_3_8():
    for m in range(1, 9):
        t = build_tower(3, m, 1, 1)
        xs = t.elements()
        for L in divisors(m):
            r = t.trace_table(L)[xs]
            assert np.all(t.in_subfield(r, L))
            for K in divisors(m):
                if K % L == 0:
                    assert np.array_equal(t.trace_table(L, K)[t.trace_table(K)[xs]], r)


def test_trace_examples():
    t = build_tower(3, 2, 1, 1)
    assert t.trace(1, 1) == 2
    t27 = build_tower(3, 3, 1, 1)
    assert np.count_nonzero(t27.trace_table(1) == 0) == 9
    t6 = build_tower(3, 6, 2, 3)
    for x in t6.subfield_elements(3):
        assert t6.trace(int(x), 3) == t6.scale(2, int(x))


def test_trace_rejects_bad_levels():
    t = build_tower(3, 6, 2, 1)
    with pytest.raises(NotDivisor):
        t.trace_table(4)
    with pytest.raises(NotDivisor):
        t.trace_table(2, 3)


def test_quad_char_examples_and_restriction():
    for p, m in [(3, 4), (3, 5), (5, 2), (5, 3), (7, 2)]:
        t = build_tower(p, m, 1, 1)
        a = t.alpha
        assert t.quad_char(t.mul(a, a)) == 1
        assert t.quad_char(a) == -1
        assert t.quad_char(0) == 0
        prime = list(range(1, p))
        got = [t.quad_char(y) for y in prime]
        if m % 2 == 0:
            assert got == [1] * (p - 1)
        else:
            assert got == [t.quad_char(y, 1) for y in prime]


def test_quad_char_matches_squares():
    t = build_tower(3, 4, 2, 2)
    F = SlowField(t.p, t.modulus)
    for level in (1, 2, 4):
        for x in t.subfield_elements(level):
            assert t.quad_char(int(x), level) == F.eta(int(x), level)


def test_quad_char_not_in_subfield():
    t = build_tower(3, 4, 2, 2)
    outside = next(int(x) for x in t.elements() if not t.in_subfield(int(x), 2))
    with pytest.raises(NotInSubfield):
        t.quad_char(outside, 2)


def test_subfield_elements():
    t = build_tower(3, 6, 2, 1)
    s = t.subfield_elements(2)
    assert len(s) == 9 and s[0] == 0 and len(set(s.tolist())) == 9
    prods = t.mul(s[:, None], s[None, :])
    assert set(prods.ravel().tolist()) <= set(s.tolist())
    t2 = build_tower(3, 6, 1, 2)
    assert set(t2.subfield_elements(1).tolist()) <= set(t2.subfield_elements(2).tolist())
    F = SlowField(t.p, t.modulus)
    assert sorted(s.tolist()) == F.subfield(2)


def test_inverse_of_zero():
    t = build_tower(3, 3, 1, 1)
    with pytest.raises(DivisionByZero):
        t.inv(0)
    with pytest.raises(DivisionByZero):
        arith(t, "inv", 0)


def test_arith_dispatch_and_encoding():
    t = build_tower(5, 3, 1, 1)
    x, y = 17, 99
    assert arith(t, "add", x, 0) == x
    assert arith(t, "sub", arith(t, "add", x, y), y) == x
    assert arith(t, "mul", x, arith(t, "inv", x)) == 1
    assert arith(t, "pow", t.alpha, t.q - 1) == 1
    assert t.from_coeffs(t.coeffs(x)) == x
    assert t.encode_digits(t.digits(np.arange(t.q))).tolist() == list(range(t.q))


@st.composite
def tower_and_elements(draw, count=3):
    params = draw(st.sampled_from([(3, 4, 1, 1), (5, 3, 1, 1), (7, 2, 1, 1), (3, 6, 2, 1)]))
    t = build_tower(*params)
    xs = [draw(st.integers(0, t.q - 1)) for _ in range(count)]
    return t, xs


@settings(max_examples=150, deadline=None)
@given(tower_and_elements())
def test_field_axioms(data):
    t, (x, y, z) = data
    assert t.add(x, y) == t.add(y, x)
    assert t.mul(x, y) == t.mul(y, x)
    assert t.add(t.add(x, y), z) == t.add(x, t.add(y, z))
    assert t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z))
    assert t.mul(x, t.add(y, z)) == t.add(t.mul(x, y), t.mul(x, z))
    assert t.add(x, t.neg(x)) == 0
    if x:
        assert t.mul(x, t.inv(x)) == 1


@settings(max_examples=150, deadline=None)
@given(tower_and_elements(2))
def test_quad_char_multiplicative(data):
    t, (x, y) = data
    if x and y:
        assert t.quad_char(t.mul(x, y)) == t.quad_char(x) * t.quad_char(y)


@settings(max_examples=100, deadline=None)
@given(tower_and_elements(2))
def test_trace_is_linear_and_frobenius_invariant(data):
    t, (x, y) = data
    for L in divisors(t.m):
        assert t.trace(t.add(x, y), L) == t.add(t.trace(x, L), t.trace(y, L))
        assert t.trace(t.frobenius(x, L), L) == t.trace(x, L)
