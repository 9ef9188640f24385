import json
import math

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksclass.errors import DivisionByNonUnit, InvariantViolation, NonDivisibleByZPower
from ksclass.series import (
    TruncatedSeries, add, binomial_series, differentiate, divide, mul, rotate, shift,
)
from ksclass.synthesis import catalog

N = 16


def S(*coeffs, order=N):
    return TruncatedSeries.from_coeffs(coeffs, order)


def koebe(order=N):
    return TruncatedSeries(np.arange(order + 1, dtype=float))


# --- examples ---------------------------------------------------------------

def test_add_examples():
    npt.assert_array_equal(add(S(0, 1), S(0, 1)).coeffs, S(0, 2).coeffs)
    npt.assert_array_equal(add(S(1, 1), S(1, -1)).coeffs, S(2).coeffs)
    assert np.all(add(koebe(), -koebe()).coeffs == 0)


def test_add_pads_shorter_operand():
    out = add(TruncatedSeries([1, 2]), TruncatedSeries([1, 1, 1, 1]))
    assert out.order == 3
    npt.assert_array_equal(out.coeffs, [2, 3, 1, 1])


def test_mul_examples():
    npt.assert_array_equal(mul(S(1, 1), S(1, -1)).coeffs, S(1, 0, -1).coeffs)
    # (1 - z)^{-2} has coefficients comb(n + 1, 1) = n + 1
    inv_sq = TruncatedSeries([math.comb(n + 1, 1) for n in range(N + 1)])
    npt.assert_allclose(mul(S(0, 1), inv_sq).coeffs, koebe().coeffs)
    geometric = TruncatedSeries(np.ones(N + 1))
    npt.assert_allclose(mul(S(1, -1), geometric).coeffs, S(1).coeffs)


def test_mul_truncates_to_shorter_order():
    assert mul(TruncatedSeries(np.ones(5)), TruncatedSeries(np.ones(9))).order == 4


def test_divide_examples():
    npt.assert_allclose(divide(S(1, 0, -1), S(1, -1)).coeffs, S(1, 1).coeffs, atol=1e-15)
    k = koebe()
    g = TruncatedSeries(np.r_[0, np.ones(N)])  # z/(1-z)
    q = divide(shift(k, -1), shift(g, -1))
    npt.assert_allclose(q.coeffs, np.ones(N), atol=1e-13)
    a = S(2, 1, -0.5, 0.25)
    npt.assert_allclose(divide(a, a).coeffs, S(1).coeffs, atol=1e-15)


def test_divide_rejects_non_unit():
    with pytest.raises(DivisionByNonUnit):
        divide(S(1), S(1e-13, 1))


def test_differentiate_examples():
    npt.assert_array_equal(differentiate(S(0, 1)).coeffs, np.r_[1, np.zeros(N - 1)])
    npt.assert_array_equal(differentiate(koebe()).coeffs, np.arange(1, N + 1) ** 2)
    assert np.all(differentiate(S(3)).coeffs == 0)
    assert differentiate(koebe()).order == N - 1
    with pytest.raises(ValueError):
        differentiate(TruncatedSeries([1.0]))


def test_shift_examples():
    npt.assert_array_equal(shift(S(0, 0, 1), -1).coeffs[:2], [0, 1])
    g2 = TruncatedSeries(np.r_[0, 0, [1 - n % 2 for n in range(N - 1)]])  # z^2/(1-z^2)
    npt.assert_array_equal(shift(g2, -1).coeffs[:6], [0, 1, 0, 1, 0, 1])
    out = shift(S(1, order=3), 2)
    assert out.order == 5
    npt.assert_array_equal(out.coeffs, [0, 0, 1, 0, 0, 0])


def test_shift_rejects_nonzero_low_coefficient():
    with pytest.raises(NonDivisibleByZPower):
        shift(S(0, 1), -2)
    with pytest.raises(NonDivisibleByZPower):
        shift(TruncatedSeries([0.0, 1.0]), -3)


def test_rotate_examples():
    npt.assert_allclose(rotate(S(0, 1), 1.234).coeffs, S(0, 1).coeffs)
    npt.assert_allclose(rotate(S(0, 1, 1), np.pi).coeffs, S(0, 1, -1).coeffs, atol=1e-15)
    g = catalog("koebe_sqrt2", N)
    npt.assert_allclose(rotate(g, 2 * np.pi).coeffs, g.coeffs, atol=1e-13)


@pytest.mark.parametrize("c", [0.5, 1, 2, 3, 2 / 3])
def test_binomial_series_matches_direct_coefficients(c):
    # generalized binomial coefficient (c)_n / n! via math.gamma
    expected = [math.gamma(c + n) / (math.gamma(c) * math.factorial(n)) for n in range(12)]
    npt.assert_allclose(binomial_series(c, 11).coeffs.real, expected, rtol=1e-13)


def test_binomial_series_examples():
    npt.assert_array_equal(binomial_series(2, 3).coeffs, [1, 2, 3, 4])
    npt.assert_array_equal(binomial_series(0, 5).coeffs, [1, 0, 0, 0, 0, 0])
    npt.assert_array_equal(binomial_series(1, 5).coeffs, np.ones(6))


def test_tag_invariants():
    with pytest.raises(InvariantViolation):
        TruncatedSeries([1.0, 1.0], "normalized")
    with pytest.raises(InvariantViolation):
        TruncatedSeries([0.0, 1.0], "P-candidate")
    TruncatedSeries([0.0, 1.0, 5.0], "normalized")


def test_series_is_immutable():
    s = koebe()
    with pytest.raises(ValueError):
        s.coeffs[0] = 1.0


def test_json_roundtrip():
    s = TruncatedSeries([0, 1, 0.5 - 0.25j], "f")
    data = json.loads(s.to_json())
    assert data == {"order": 2, "coeffs": [[0.0, 0.0], [1.0, 0.0], [0.5, -0.25]], "tag": "f"}
    back = TruncatedSeries.from_json(s.to_json())
    npt.assert_array_equal(back.coeffs, s.coeffs)
    assert back.tag == "f"


def test_json_rejects_length_mismatch():
    with pytest.raises(ValueError):
        TruncatedSeries.from_dict({"order": 3, "coeffs": [[0, 0]], "tag": ""})


# --- invariants ---------------------------------------------------------------

def _series(order):
    part = st.floats(-0.7, 0.7, allow_nan=False)
    return st.lists(st.builds(complex, part, part), min_size=order + 1, max_size=order + 1).map(
        TruncatedSeries
    )


same_order = st.integers(1, 64).flatmap(lambda n: st.tuples(_series(n), _series(n), _series(n)))


@settings(max_examples=60, deadline=None)
@given(same_order)
def test_ring_axioms(abc):
    a, b, c = abc
    assert mul(a, b).max_abs_diff(mul(b, a)) <= 1e-12
    assert mul(mul(a, b), c).max_abs_diff(mul(a, mul(b, c))) <= 1e-12
    assert mul(a, add(b, c)).max_abs_diff(add(mul(a, b), mul(a, c))) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(same_order)
def test_divide_roundtrip(abc):
    a, b, _ = abc
    c = b.coeffs.copy()
    c[0] = 1.5 * np.abs(c[1:]).sum() + 0.1
    b = TruncatedSeries(c)
    assert mul(divide(a, b), b).max_abs_diff(a) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(same_order)
def test_product_rule(abc):
    a, b, _ = abc
    lhs = differentiate(mul(a, b))
    rhs = add(mul(differentiate(a), b), mul(a, differentiate(b)))
    assert lhs.max_abs_diff(rhs) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(_series(20), st.floats(-7, 7), st.floats(-7, 7))
def test_rotate_composes(a, t1, t2):
    assert rotate(rotate(a, t1), t2).max_abs_diff(rotate(a, t1 + t2)) <= 1e-13


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 4.0))
def test_binomial_inverse_pair(c):
    prod = mul(binomial_series(c, 64), binomial_series(-c, 64))
    assert prod.max_abs_diff(TruncatedSeries.constant(1.0, 64)) <= 1e-10
