"""Exact rationals plus bracketed natural logarithms of huge positive reals.

Quantities such as ``C(K, 2|Delta|^(A h))`` have far too many digits to
materialise.  They are carried as a :class:`LogMagnitude`: a closed interval
``[lower, upper]`` of dyadic rationals that is guaranteed to contain
``ln(x)``.  Every transcendental step (``ln``, ``exp``) is evaluated in
fixed point with floor/ceiling rounding on the appropriate side, so brackets
are sound independently of the platform floating point environment.

When the underlying value is rational and small enough (see
:data:`MATERIALIZATION_CAP`) the exact value rides along in ``exact``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Optional, Tuple, Union

DEFAULT_PRECISION = 128
PRECISION_CEILING = 4096
MATERIALIZATION_CAP = 10**6  # bits

Rational = Union[int, Fraction]


class PrecisionError(ArithmeticError):
    """Raised when a comparison stays undecided at the precision ceiling."""


def _guard(precision: int) -> int:
    return precision + 2 * precision.bit_length() + 8


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


# ---------------------------------------------------------------------------
# fixed point kernels: integers scaled by 2**G, (lo, hi) pairs
# ---------------------------------------------------------------------------

def _atanh_fixed(p: int, q: int, G: int) -> Tuple[int, int]:
    # requires 0 <= p/q <= 1/3
    if p == 0:
        return 0, 0
    one = 1 << G
    zl = (p << G) // q
    zh = _ceil_div(p << G, q)
    z2l = (zl * zl) >> G
    z2h = _ceil_div(zh * zh, one)

    lo, t, k = 0, zl, 1
    while t:
        lo += t // k
        t = (t * z2l) >> G
        k += 2

    hi, t, k = 0, zh, 1
    while t > 1:
        hi += _ceil_div(t, k)
        t = _ceil_div(t * z2h, one)
        k += 2
    # remaining tail <= t * 9/8 with t <= 1 ulp
    return lo, hi + 2


@lru_cache(maxsize=64)
def _ln2_fixed(G: int) -> Tuple[int, int]:
    lo, hi = _atanh_fixed(1, 3, G)
    return 2 * lo, 2 * hi


def _ln_fixed(x: Fraction, G: int) -> Tuple[int, int]:
    n, d = x.numerator, x.denominator
    k = n.bit_length() - d.bit_length()
    if k >= 0:
        num, den = n, d << k
    else:
        num, den = n << -k, d
    if num < den:
        num <<= 1
        k -= 1
    # 1 <= num/den < 2, so z = (num-den)/(num+den) lies in [0, 1/3)
    alo, ahi = _atanh_fixed(num - den, num + den, G)
    l2lo, l2hi = _ln2_fixed(G)
    if k >= 0:
        return k * l2lo + 2 * alo, k * l2hi + 2 * ahi
    return k * l2hi + 2 * alo, k * l2lo + 2 * ahi


def _exp_small_fixed(w: Fraction, G: int) -> Tuple[int, int]:
    # exp(w) for 0 <= w <= 1/2
    one = 1 << G
    wl = (w.numerator << G) // w.denominator
    wh = _ceil_div(w.numerator << G, w.denominator)

    lo, t, i = one, one, 1
    while t:
        t = ((t * wl) >> G) // i
        lo += t
        i += 1

    hi, t, i = one, one, 1
    while t > 1:
        t = _ceil_div(_ceil_div(t * wh, one), i)
        hi += t
        i += 1
    return lo, hi + 2


def _exp_neg_fixed(t: Fraction, G: int) -> Tuple[int, int]:
    # exp(t) for t <= 0
    if t == 0:
        return 1 << G, 1 << G
    w = -t
    if w > G + 2:
        return 0, 1
    j = 0
    while w > Fraction(1, 2) * (1 << j):
        j += 1
    H = G + j + 4
    el, eh = _exp_small_fixed(w / (1 << j), H)
    rl = (1 << (2 * H)) // eh
    rh = _ceil_div(1 << (2 * H), el)
    for _ in range(j):
        rl = (rl * rl) >> H
        rh = _ceil_div(rh * rh, 1 << H)
    s = H - G
    return rl >> s, _ceil_div(rh, 1 << s)


def ln_bounds(x: Rational, precision: int = DEFAULT_PRECISION) -> Tuple[Fraction, Fraction]:
    """Dyadic ``(lo, hi)`` with ``lo <= ln(x) <= hi`` for rational ``x > 0``."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"logarithm of non-positive value {x}")
    if x == 1:
        return Fraction(0), Fraction(0)
    G = _guard(precision)
    lo, hi = _ln_fixed(x, G)
    return Fraction(lo, 1 << G), Fraction(hi, 1 << G)


def exp_bounds(t: Rational, precision: int = DEFAULT_PRECISION) -> Tuple[Fraction, Fraction]:
    """Dyadic ``(lo, hi)`` bracketing ``exp(t)`` for rational ``t <= 0``."""
    t = Fraction(t)
    if t > 0:
        raise ValueError("exp_bounds only handles non-positive arguments")
    G = _guard(precision)
    lo, hi = _exp_neg_fixed(t, G)
    return Fraction(lo, 1 << G), Fraction(hi, 1 << G)


def sqrt_bounds(n: int, precision: int = DEFAULT_PRECISION) -> Tuple[Fraction, Fraction]:
    """Dyadic bracket of ``sqrt(n)`` for a non-negative integer ``n``."""
    if n < 0:
        raise ValueError("square root of a negative integer")
    r = isqrt(n)
    if r * r == n:
        return Fraction(r), Fraction(r)
    G = _guard(precision)
    s = isqrt(n << (2 * G))
    return Fraction(s, 1 << G), Fraction(s + 1, 1 << G)


def _round_out(lo: Fraction, hi: Fraction, G: int) -> Tuple[Fraction, Fraction]:
    scale = 1 << G
    if lo.denominator > scale:
        lo = Fraction((lo.numerator * scale) // lo.denominator, scale)
    if hi.denominator > scale:
        hi = Fraction(_ceil_div(hi.numerator * scale, hi.denominator), scale)
    return lo, hi


# ---------------------------------------------------------------------------
# value-scale intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]`` around a real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rational) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: Union["Interval", Rational]) -> "Interval":
        if not isinstance(other, Interval):
            other = Interval.point(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Interval", Rational]) -> "Interval":
        if not isinstance(other, Interval):
            other = Interval.point(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __pow__(self, k: int) -> "Interval":
        if k < 0 or self.lo < 0:
            raise ValueError("only non-negative powers of non-negative intervals")
        return Interval(self.lo**k, self.hi**k)

    def rounded(self, precision: int = DEFAULT_PRECISION) -> "Interval":
        """Outward rounding to dyadic endpoints, keeping sizes bounded."""
        return Interval(*_round_out(self.lo, self.hi, _guard(precision)))

    def max(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))


def ln_interval(x: Interval, precision: int = DEFAULT_PRECISION) -> Interval:
    if x.lo <= 0:
        raise ValueError("logarithm of an interval reaching zero")
    return Interval(ln_bounds(x.lo, precision)[0], ln_bounds(x.hi, precision)[1])


# ---------------------------------------------------------------------------
# LogMagnitude
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogMagnitude:
    """Bracket ``[lower, upper]`` containing ``ln(x)`` for a real ``x >= 0``.

    ``x = 0`` is encoded by ``lower = upper = None`` (``ln 0 = -inf``).
    ``exact`` holds ``x`` itself when it is a known rational no larger than
    the materialisation cap.
    """

    lower: Optional[Fraction]
    upper: Optional[Fraction]
    exact: Optional[Fraction] = None

    def __post_init__(self):
        if (self.lower is None) != (self.upper is None):
            raise ValueError("zero magnitude needs both bounds unset")
        if self.lower is not None and self.lower > self.upper:
            raise ValueError(f"inverted bracket [{self.lower}, {self.upper}]")

    @classmethod
    def zero(cls) -> "LogMagnitude":
        return cls(None, None, Fraction(0))

    @classmethod
    def one(cls) -> "LogMagnitude":
        return cls(Fraction(0), Fraction(0), Fraction(1))

    @property
    def is_zero(self) -> bool:
        return self.lower is None

    @property
    def width(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.upper - self.lower

    @property
    def ln(self) -> Interval:
        if self.is_zero:
            raise ValueError("ln of zero magnitude")
        return Interval(self.lower, self.upper)

    def contains_ln(self, y: Rational) -> bool:
        return not self.is_zero and self.lower <= y <= self.upper

    def decimal_digits(self, precision: int = DEFAULT_PRECISION) -> Tuple[int, int]:
        """Bounds on the number of decimal digits of ``floor(x)`` for ``x >= 1``."""
        if self.exact is not None and self.exact >= 1:
            n = len(str(self.exact.numerator // self.exact.denominator))
            return n, n
        if self.is_zero or self.upper < 0:
            return 0, 0
        l10 = ln_bounds(10, precision)
        lo = int(max(self.lower, Fraction(0)) // l10[1]) + 1
        hi = int(self.upper // l10[0]) + 1
        return lo, hi


def _cap_exact(x: Optional[Fraction], cap: int) -> Optional[Fraction]:
    if x is None or _size(x) > cap:
        return None
    return x


def lm_from_rational(x: Rational, precision: int = DEFAULT_PRECISION,
                     cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    x = Fraction(x)
    if x < 0:
        raise ValueError("LogMagnitude of a negative value")
    if x == 0:
        return LogMagnitude.zero()
    lo, hi = ln_bounds(x, precision)
    return LogMagnitude(lo, hi, _cap_exact(x, cap))


def lm_from_integer(n: int, precision: int = DEFAULT_PRECISION,
                    cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    """Bracket ``ln(n)`` for an integer ``n >= 1``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"lm_from_integer needs a positive integer, got {n!r}")
    return lm_from_rational(Fraction(n), precision, cap)


def lm_from_interval(x: Interval, precision: int = DEFAULT_PRECISION) -> LogMagnitude:
    """Log bracket of a positive value known only through an interval."""
    if x.is_point:
        return lm_from_rational(x.lo, precision)
    iv = ln_interval(x, precision)
    return LogMagnitude(iv.lo, iv.hi)


def lm_from_ln(ln: Interval, exact: Optional[Rational] = None) -> LogMagnitude:
    """Wrap an interval that already brackets ``ln(x)``."""
    return LogMagnitude(ln.lo, ln.hi, None if exact is None else Fraction(exact))


def lm_mul(a: LogMagnitude, b: LogMagnitude, cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    if a.is_zero or b.is_zero:
        return LogMagnitude.zero()
    exact = None
    if a.exact is not None and b.exact is not None and _size(a.exact) + _size(b.exact) <= cap:
        exact = a.exact * b.exact
    return LogMagnitude(a.lower + b.lower, a.upper + b.upper, exact)


def lm_pow(a: LogMagnitude, k: Rational, precision: int = DEFAULT_PRECISION,
           cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    """``x**k`` for a non-negative exponent (integer or rational)."""
    k = Fraction(k)
    if k < 0:
        raise ValueError("negative exponent")
    if k == 0:
        return LogMagnitude.one()
    if a.is_zero:
        return LogMagnitude.zero()
    lo, hi = a.lower * k, a.upper * k
    if k.denominator != 1:
        lo, hi = _round_out(lo, hi, _guard(precision))
    exact = None
    if a.exact is not None and k.denominator == 1 and _size(a.exact) * int(k) <= cap:
        exact = a.exact ** int(k)
    return LogMagnitude(lo, hi, exact)


def _log_sum(u: Fraction, v: Fraction, upward: bool, precision: int) -> Fraction:
    hi_, lo_ = (u, v) if u >= v else (v, u)
    e = exp_bounds(lo_ - hi_, precision)[1 if upward else 0]
    ln1p = ln_bounds(1 + e, precision)[1 if upward else 0]
    return hi_ + ln1p


def lm_add_values(a: LogMagnitude, b: LogMagnitude, precision: int = DEFAULT_PRECISION,
                  cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    """Bracket of ``ln(x_a + x_b)`` by the directed log-sum rule."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    exact = None
    if a.exact is not None and b.exact is not None:
        exact = _cap_exact(a.exact + b.exact, cap)
        if exact is not None:
            return LogMagnitude(*ln_bounds(exact, precision), exact)
    lo = _log_sum(a.lower, b.lower, False, precision)
    hi = _log_sum(a.upper, b.upper, True, precision)
    lo, hi = _round_out(lo, hi, _guard(precision))
    return LogMagnitude(lo, hi, exact)


LESS, GREATER, OVERLAPPING = "less", "greater", "overlapping"


def lm_compare(a: LogMagnitude, b: LogMagnitude) -> str:
    if a.is_zero and b.is_zero:
        return OVERLAPPING
    if a.is_zero:
        return LESS
    if b.is_zero:
        return GREATER
    if a.upper < b.lower:
        return LESS
    if a.lower > b.upper:
        return GREATER
    return OVERLAPPING


def decide_max(build: Callable[[int], Tuple[LogMagnitude, LogMagnitude]],
               precision: int = DEFAULT_PRECISION,
               ceiling: int = PRECISION_CEILING) -> Tuple[int, LogMagnitude, LogMagnitude, int]:
    """Decide which of two lazily built magnitudes is larger.

    ``build(precision)`` returns the pair.  Overlapping brackets are rebuilt at
    doubled precision until the ceiling; exact values settle ties directly.
    Returns ``(index_of_max, a, b, precision_used)``.
    """
    p = precision
    while True:
        a, b = build(p)
        if a.exact is not None and b.exact is not None:
            return (0 if a.exact >= b.exact else 1), a, b, p
        verdict = lm_compare(a, b)
        if verdict != OVERLAPPING:
            return (1 if verdict == LESS else 0), a, b, p
        if p >= ceiling:
            raise PrecisionError(f"comparison still undecided at {p} bits")
        p = min(2 * p, ceiling)


def format_fraction(x: Fraction, digits: int = 20, upward: bool = False) -> str:
    """Decimal string of ``x`` rounded toward -inf (or +inf if ``upward``)."""
    scale = 10**digits
    v = x * scale
    n = -((-v.numerator) // v.denominator) if upward else v.numerator // v.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    ip, fp = divmod(n, scale)
    return f"{sign}{ip}.{fp:0{digits}d}"
