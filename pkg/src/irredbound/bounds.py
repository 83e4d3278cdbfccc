"""The bound tower ``C_1 -> C_2 -> C(K, n) -> C_K``.

Everything is carried as log-brackets; exact integers ride along while they
stay below the materialisation cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PrecisionError, ValidationError
from .invariants import FieldInvariants, delta_K
from .magnitude import (
    DEFAULT_PRECISION,
    MATERIALIZATION_CAP,
    PRECISION_CEILING,
    Interval,
    LogMagnitude,
    decide_max,
    lm_add_values,
    lm_from_integer,
    lm_from_interval,
    lm_from_ln,
    lm_from_rational,
    lm_mul,
    lm_pow,
)


def c1_value(inv: FieldInvariants, precision: int = DEFAULT_PRECISION) -> Interval:
    """Value bracket of ``r^(r+1) * delta^-(r-1) / 2``; literally 0 when ``r = 0``."""
    r = inv.unit_rank
    if r == 0:
        return Interval.point(0)
    head = Fraction(r ** (r + 1), 2)
    if r == 1:
        return Interval.point(head)
    delta = delta_K(inv, precision)
    return Interval(head / delta.hi ** (r - 1), head / delta.lo ** (r - 1)).rounded(precision)


def c1(inv: FieldInvariants, precision: int = DEFAULT_PRECISION) -> LogMagnitude:
    return lm_from_interval(c1_value(inv, precision), precision) if inv.unit_rank else LogMagnitude.zero()


@lru_cache(maxsize=256)
def c2(inv: FieldInvariants, precision: int = DEFAULT_PRECISION) -> LogMagnitude:
    """``exp(2 d C_1 R)``, carried by its logarithm."""
    v = c1_value(inv, precision)
    if v.hi == 0:
        return LogMagnitude.one()
    ln = (v * inv.regulator * (2 * inv.degree)).rounded(precision)
    return lm_from_ln(ln)


def _as_magnitude(n, precision: int) -> LogMagnitude:
    if isinstance(n, LogMagnitude):
        if n.exact is not None and n.exact.denominator == 1:
            return lm_from_integer(int(n.exact), precision)
        return n
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    return lm_from_integer(n, precision)


def c_of_n(inv: FieldInvariants, n, precision: int = DEFAULT_PRECISION,
           cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    """``(n^(2h) C_2 + n^h)^(2d)``; ``n`` may be an int or a log-bracket."""
    h, d = inv.class_number, inv.degree
    ln_n = _as_magnitude(n, precision)
    first = lm_mul(lm_pow(ln_n, 2 * h, precision, cap), c2(inv, precision), cap)
    second = lm_pow(ln_n, h, precision, cap)
    return lm_pow(lm_add_values(first, second, precision, cap), 2 * d, precision, cap)


def merel_term(inv: FieldInvariants, precision: int = DEFAULT_PRECISION,
               cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    """``(1 + 3^(d h / 2))^2``; odd ``d h`` goes through a rounded sqrt(3) power."""
    e = Fraction(inv.degree * inv.class_number, 2)
    power = lm_pow(lm_from_integer(3, precision, cap), e, precision, cap)
    return lm_pow(lm_add_values(LogMagnitude.one(), power, precision, cap), 2, precision, cap)


def jk_cap(inv: FieldInvariants, A, precision: int = DEFAULT_PRECISION,
           cap: int = MATERIALIZATION_CAP) -> LogMagnitude:
    """``2 |Delta|^(A h)``, the prime-norm cap of the effective Chebotarev step."""
    A = Fraction(A)
    if A <= 0:
        raise ValidationError("the constant A must be positive")
    e = A * inv.class_number
    disc = lm_from_integer(abs(inv.discriminant), precision, cap)
    return lm_mul(lm_from_integer(2, precision, cap), lm_pow(disc, e, precision, cap), cap)


@dataclass(frozen=True)
class BoundReport:
    inv: FieldInvariants
    lmo_A: Fraction
    c1: LogMagnitude
    c2: LogMagnitude
    merel: LogMagnitude
    jk_cap: LogMagnitude
    c_of_cap: LogMagnitude
    c_K: LogMagnitude
    c_K_from: str  # "c_of_cap" or "merel"
    precision: int

    @property
    def degenerate_rank(self) -> bool:
        """Unit rank 0: the formula for ``C_1`` collapses to 0."""
        return self.inv.unit_rank == 0

    def entries(self) -> dict:
        return {"C_1": self.c1, "C_2": self.c2, "merel": self.merel, "jk_cap": self.jk_cap,
                "C(K,jk_cap)": self.c_of_cap, "C_K": self.c_K}

    def decimal_digits(self) -> dict:
        return {k: v.decimal_digits(self.precision) for k, v in self.entries().items()}


def c_K(inv: FieldInvariants, A, precision: int = DEFAULT_PRECISION,
        ceiling: int = PRECISION_CEILING, cap: int = MATERIALIZATION_CAP) -> BoundReport:
    """``max(C(K, 2|Delta|^(A h)), (1 + 3^(d h/2))^2)`` with the max decided rigorously."""
    A = Fraction(A)
    if A <= 0:
        raise ValidationError("the constant A must be positive")

    def build(p):
        return c_of_n(inv, jk_cap(inv, A, p, cap), p, cap), merel_term(inv, p, cap)

    idx, big, merel, p = decide_max(build, precision, ceiling)
    return BoundReport(
        inv=inv, lmo_A=A, c1=c1(inv, p), c2=c2(inv, p), merel=merel,
        jk_cap=jk_cap(inv, A, p, cap), c_of_cap=big,
        c_K=big if idx == 0 else merel, c_K_from="c_of_cap" if idx == 0 else "merel",
        precision=p,
    )


def exceeds_four_q(inv: FieldInvariants, q: int, precision: int = 32,
                   ceiling: int = PRECISION_CEILING) -> bool:
    """Rigorous check of ``C(K, q) > 4q``, refining the brackets until they separate."""
    p = precision
    while True:
        big = c_of_n(inv, q, p)
        if big.exact is not None:
            return big.exact > 4 * q
        four_q = lm_from_rational(4 * q, p)
        if big.lower > four_q.upper:
            return True
        if big.upper <= four_q.lower:
            return False
        if p >= ceiling:
            raise PrecisionError(f"C(K, {q}) and 4q not separated at {p} bits")
        p *= 2
