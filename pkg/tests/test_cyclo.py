import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from augtrace.cyclo import CycInt, from_exponent_counts, root
from augtrace.errors import MixedPrimes, NotOddPrime


def test_root_examples():
    assert root(3, 3) == 1
    assert root(3, 2).coeffs == (-1, -1)
    for p in (3, 5, 7):
        assert sum((root(p, k) for k in range(p)), CycInt.zero(p)).is_zero()


def test_root_rejects_even_or_composite():
    for p in (2, 4, 9):
        with pytest.raises(NotOddPrime):
            root(p, 1)


def test_ring_examples():
    assert root(3, 1) * root(3, 2) == 1
    g = root(3, 1) - root(3, 2)
    assert (g * g).as_integer() == -3
    a = CycInt(5, [3, -1, 4, 2])
    assert (a + (-a)).is_zero()


def test_mixed_primes():
    with pytest.raises(MixedPrimes):
        root(3, 1) + root(5, 1)


def test_as_integer():
    assert (root(3, 0) * 5).as_integer() == 5
    assert root(3, 1).as_integer() is None


def test_to_complex():
    assert root(7, 0).to_complex() == 1
    assert CycInt.zero(5).to_complex() == 0
    assert abs(root(5, 2).to_complex() - cmath.exp(4j * cmath.pi / 5)) < 1e-12


def test_exact_div():
    assert (root(5, 1) * 6).exact_div(3) == root(5, 1) * 2
    with pytest.raises(ArithmeticError):
        root(5, 1).exact_div(2)


def test_from_exponent_counts_reduces():
    # 1 + z + z^2 = 0 in Z[zeta_3]
    assert from_exponent_counts(3, [1, 1, 1]).is_zero()
    assert from_exponent_counts(5, [0, 0, 0, 0, 1]) == root(5, 4)
    with pytest.raises(ValueError):
        from_exponent_counts(3, [1, 2])


def cyc(p):
    return st.lists(st.integers(-10 ** 4, 10 ** 4), min_size=p - 1, max_size=p - 1).map(
        lambda c: CycInt(p, c))


triples = st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(cyc(p), cyc(p), cyc(p)))


@settings(max_examples=200, deadline=None)
@given(triples)
def test_ring_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@settings(max_examples=200, deadline=None)
@given(triples)
def test_complex_bridge_respects_ring_ops(abc):
    a, b, _ = abc
    for got, want in [((a + b).to_complex(), a.to_complex() + b.to_complex()),
                      ((a - b).to_complex(), a.to_complex() - b.to_complex()),
                      ((a * b).to_complex(), a.to_complex() * b.to_complex())]:
        assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7]).flatmap(
    lambda p: st.tuples(st.just(p), st.lists(st.integers(-50, 50), min_size=p, max_size=3 * p))))
def test_reduction_is_canonical(pc):
    p, coeffs = pc
    x = CycInt(p, coeffs)
    assert len(x.coeffs) == p - 1
    assert CycInt(p, x.coeffs) == x
    # the long form and its reduction describe the same complex number
    z = cmath.exp(2j * cmath.pi / p)
    want = sum(c * z ** k for k, c in enumerate(coeffs))
    assert abs(x.to_complex() - want) <= 1e-7 * max(1.0, abs(want))
