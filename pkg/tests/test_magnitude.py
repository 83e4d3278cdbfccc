from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from irredbound.magnitude import (
    GREATER,
    LESS,
    OVERLAPPING,
    Interval,
    LogMagnitude,
    PrecisionError,
    decide_max,
    exp_bounds,
    lm_add_values,
    lm_compare,
    lm_from_integer,
    lm_from_rational,
    lm_mul,
    lm_pow,
    ln_bounds,
    sqrt_bounds,
)

from oracles import mp_ln, mpf


def contains(lm: LogMagnitude, value) -> bool:
    return mpf(lm.lower) <= value <= mpf(lm.upper)


def test_ln_one_is_exact():
    lm = lm_from_integer(1)
    assert lm.lower == lm.upper == 0
    assert lm.exact == 1


def test_ln_1000_at_53_bits():
    lm = lm_from_integer(1000, 53)
    assert contains(lm, mp_ln(1000))
    assert mpf(lm.width) <= mpf(F(2) ** (1 - 53)) * mp_ln(1000)


def test_ln_power_of_two():
    lm = lm_from_integer(2**100)
    assert contains(lm, 100 * mpmath.log(2))


def test_rejects_non_positive():
    with pytest.raises(ValueError):
        lm_from_integer(0)
    with pytest.raises(ValueError):
        lm_from_integer(-3)


def test_pow_zero_is_one():
    lm = lm_pow(lm_from_integer(2), 0)
    assert lm.lower == lm.upper == 0


def test_mul_six_seven():
    assert contains(lm_mul(lm_from_integer(6), lm_from_integer(7)), mp_ln(42))
    assert lm_mul(lm_from_integer(6), lm_from_integer(7)).exact == 42


def test_pow_ten_six():
    lm = lm_pow(lm_from_integer(10), 6)
    assert contains(lm, 6 * mpmath.log(10))
    assert lm.exact == 10**6


def test_add_values_examples():
    one = lm_from_integer(1)
    assert contains(lm_add_values(one, one), mpmath.log(2))
    assert contains(lm_add_values(lm_from_integer(4), lm_from_integer(2)), mp_ln(6))
    big = lm_add_values(lm_from_integer(10**40), one)
    assert contains(big, mp_ln(10**40 + 1))
    assert big.width <= F(1, 10**9) * big.upper


def test_add_values_without_exact_parts():
    a = LogMagnitude(F(1), F(1) + F(1, 10**30))
    b = LogMagnitude(F(2), F(2) + F(1, 10**30))
    s = lm_add_values(a, b)
    assert mpf(s.lower) <= mpmath.log(mpmath.e + mpmath.e**2) + mpf(F(1, 10**29))
    assert mpf(s.upper) >= mpmath.log(mpmath.e + mpmath.e**2)


def test_compare_examples():
    assert lm_compare(lm_from_integer(10**6), lm_from_integer(2**20)) == LESS
    assert lm_compare(lm_from_integer(2**20), lm_from_integer(10**6)) == GREATER
    x = lm_from_integer(16)
    assert lm_compare(x, x) == OVERLAPPING
    wide = LogMagnitude(x.lower - F(1, 100), x.upper + F(1, 100))
    assert lm_compare(x, wide) == OVERLAPPING


def test_decide_max_escalates_then_gives_up():
    calls = []

    def build(p):
        calls.append(p)
        lo = F(1) - F(1, p)
        return LogMagnitude(lo, F(1)), LogMagnitude(F(1), F(1) + F(1, p))

    with pytest.raises(PrecisionError):
        decide_max(build, 64, 512)
    assert calls == [64, 128, 256, 512]


def test_decide_max_uses_exact_values():
    idx, *_ = decide_max(lambda p: (lm_from_integer(5), lm_from_integer(5)))
    assert idx == 0


@pytest.mark.parametrize("x", [F(1, 3), F(7, 5), F(10**20, 3), F(3, 10**15), F(2)])
def test_ln_bounds_against_mpmath(x):
    lo, hi = ln_bounds(x, 200)
    v = mp_ln(x)
    assert mpf(lo) <= v <= mpf(hi)
    assert hi - lo < F(1, 2**190)


@pytest.mark.parametrize("t", [F(0), F(-1, 7), F(-5), F(-100), F(-10**4, 3)])
def test_exp_bounds_against_mpmath(t):
    lo, hi = exp_bounds(t, 200)
    v = mpmath.exp(mpf(t))
    assert mpf(lo) <= v <= mpf(hi)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 10**30 + 7])
def test_sqrt_bounds(n):
    lo, hi = sqrt_bounds(n, 128)
    assert lo * lo <= n <= hi * hi


def test_interval_arithmetic():
    a, b = Interval(F(1), F(2)), Interval(F(-3), F(4))
    assert (a + b) == Interval(F(-2), F(6))
    assert (a - b) == Interval(F(-3), F(5))
    assert (a * b) == Interval(F(-6), F(8))
    assert (a / Interval(F(2), F(4))) == Interval(F(1, 4), F(1))
    with pytest.raises(ZeroDivisionError):
        a / b


def test_decimal_digits():
    assert lm_from_integer(10**6).decimal_digits() == (7, 7)
    lm = LogMagnitude(F(230), F(231))
    lo, hi = lm.decimal_digits()
    assert lo <= 100 <= hi + 1


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

ints = st.integers(min_value=1, max_value=10**60)


@settings(max_examples=60, deadline=None)
@given(ints, ints, st.integers(min_value=0, max_value=6))
def test_bracket_soundness_expression_tree(a, b, k):
    # (a*b)^k + a, evaluated in log space and exactly
    la, lb = lm_from_integer(a), lm_from_integer(b)
    expr = lm_add_values(lm_pow(lm_mul(la, lb), k), la)
    exact = (a * b) ** k + a
    assert expr.exact == exact
    assert contains(expr, mp_ln(exact))


@settings(max_examples=40, deadline=None)
@given(ints, ints, st.sampled_from([32, 64, 128]))
def test_monotone_refinement(a, b, p):
    coarse = lm_add_values(lm_from_integer(a, p), lm_from_integer(b, p), p)
    fine = lm_add_values(lm_from_integer(a, 2 * p), lm_from_integer(b, 2 * p), 2 * p)
    assert fine.width <= coarse.width


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=10**80))
def test_decimal_digit_report(n):
    lm = lm_from_rational(n)
    inexact = LogMagnitude(lm.lower, lm.upper)
    lo, hi = inexact.decimal_digits()
    assert lo - 1 <= len(str(n)) <= hi


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=F(1, 10**6), max_value=10**6))
def test_ln_bracket_contains(x):
    lo, hi = ln_bounds(x, 96)
    assert mpf(lo) <= mp_ln(x) <= mpf(hi)
