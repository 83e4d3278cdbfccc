"""Elliptic curves over Q given by long Weierstrass models.

Reduction types are relative to the model as supplied; no minimal model is
computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from sympy import factorint

from . import kernels
from .arith import require_prime, squarefree_part
from .errors import CapExceededError, ValidationError

GOOD, MULTIPLICATIVE, ADDITIVE = "good", "multiplicative", "additive"
POINT_COUNT_CAP = 10**6


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self) -> int:
        return self.a1**2 + 4 * self.a2

    @cached_property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> int:
        return self.a3**2 + 4 * self.a6

    @cached_property
    def b8(self) -> int:
        a1, a2, a3, a4, a6 = self.coeffs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def c4(self) -> int:
        return self.b2**2 - 24 * self.b4

    @cached_property
    def c6(self) -> int:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


def curve_from_coeffs(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    E = WeierstrassCurve(a1, a2, a3, a4, a6)
    if E.discriminant == 0:
        raise ValidationError(f"singular model {E}")
    return E


def parse_curve(text: str) -> WeierstrassCurve:
    try:
        parts = [int(t) for t in text.replace("[", "").replace("]", "").split(",")]
    except ValueError:
        raise ValidationError(f"curve must be five comma-separated integers, got {text!r}") from None
    if len(parts) != 5:
        raise ValidationError(f"curve needs exactly five coefficients a1,a2,a3,a4,a6, got {len(parts)}")
    return curve_from_coeffs(*parts)


def reduction_type(E: WeierstrassCurve, q: int) -> str:
    require_prime(q)
    if E.discriminant % q:
        return GOOD
    return ADDITIVE if E.c4 % q == 0 else MULTIPLICATIVE


def bad_primes(E: WeierstrassCurve) -> list[int]:
    return sorted(int(p) for p in factorint(abs(E.discriminant)))


def is_semistable(E: WeierstrassCurve, primes=None) -> tuple[bool, list[int]]:
    """``(True, [])`` when no listed prime is additive; the list must exhaust the primes of ``Delta``."""
    if primes is None:
        primes = bad_primes(E)
    rest = abs(E.discriminant)
    for p in primes:
        while rest % p == 0:
            rest //= p
    if rest != 1:
        raise ValidationError(f"prime list does not factor the discriminant (cofactor {rest})")
    offenders = [p for p in primes if E.discriminant % p == 0 and reduction_type(E, p) == ADDITIVE]
    return not offenders, offenders


def possibly_nonminimal_primes(E: WeierstrassCurve) -> list[int]:
    """Primes whose twelfth power divides ``Delta`` (the model might not be minimal there)."""
    return [p for p, e in factorint(abs(E.discriminant)).items() if e >= 12]


def count_points(E: WeierstrassCurve, q: int, cap: int = POINT_COUNT_CAP) -> int:
    """``#E(F_q)`` including the point at infinity."""
    require_prime(q)
    if q > cap:
        raise CapExceededError(f"q = {q} exceeds the point-counting cap {cap}")
    if E.discriminant % q == 0:
        raise ValidationError(f"bad reduction at {q}")
    if q <= 3:
        return kernels.count_points_full(*E.coeffs, q)
    return kernels.count_points_odd(E.b2, E.b4, E.b6, q)


@dataclass(frozen=True)
class LocalData:
    q: int
    Nq: int
    reduction: str
    T: int | None = None
    disc: int | None = None
    L_core: int | None = None

    @property
    def P_q(self) -> tuple[int, int] | None:
        """``(T, Nq)`` encoding ``X^2 - T X + Nq``."""
        return None if self.T is None else (self.T, self.Nq)

    @property
    def supersingular(self) -> bool:
        return self.T is not None and self.T % self.q == 0


def frobenius_data(E: WeierstrassCurve, q: int, cap: int = POINT_COUNT_CAP,
                   trial_bound: int | None = None) -> LocalData:
    n = count_points(E, q, cap)
    T = q + 1 - n
    disc = T * T - 4 * q
    if disc >= 0:
        raise ArithmeticError(f"Hasse bound violated at q={q}: T={T}")
    return LocalData(q, q, GOOD, T, disc, squarefree_part(disc, trial_bound))


def local_data(E: WeierstrassCurve, q: int, cap: int = POINT_COUNT_CAP) -> LocalData:
    kind = reduction_type(E, q)
    if kind == GOOD:
        return frobenius_data(E, q, cap)
    return LocalData(q, q, kind)
