"""Exact arithmetic in quadratic fields ``Q(sqrt m)``.

Elements of the maximal order are ``a + b*w`` with ``w = sqrt(m)`` when
``m = 2, 3 (mod 4)`` and ``w = (1 + sqrt(m))/2`` when ``m = 1 (mod 4)``.
Ideals are stored in Hermite normal form as the Z-basis ``{a, b + c*w}``.

Generators of principal ideals are found by enumerating lattice points of a
Gauss-reduced basis inside the norm ellipse for imaginary fields, and by
walking the cycle of reduced ideals for real fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Iterator, NamedTuple

from sympy.core.intfunc import igcdex

from . import kernels
from .arith import is_squarefree, kronecker, primes_up_to, require_prime, roots_mod_prime
from .errors import CapExceededError, NonPrincipalError, ValidationError
from .magnitude import (
    DEFAULT_PRECISION,
    Interval,
    LogMagnitude,
    lm_from_interval,
    ln_interval,
    sqrt_bounds,
)

IMAGINARY_DISC_CAP = 10**7
MINKOWSKI_CAP = 10**6
SEARCH_CAP = 10**7
UNIT_ITERATION_CAP = 10**6

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"


class QuadraticField:
    """``Q(sqrt m)`` with ``w**2 = tw*w - nw`` (``tw`` trace and ``nw`` norm of ``w``)."""

    def __init__(self, m: int):
        if not isinstance(m, int) or m in (0, 1) or not is_squarefree(m):
            raise ValidationError(f"m must be a squarefree integer other than 0 and 1, got {m!r}")
        self.m = m
        if m % 4 == 1:
            self.D, self.tw, self.nw = m, 1, (1 - m) // 4
        else:
            self.D, self.tw, self.nw = 4 * m, 0, -m

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.m == self.m

    def __hash__(self):
        return hash(("QuadraticField", self.m))

    def __repr__(self):
        return f"QuadraticField({self.m})"

    def __str__(self):
        return f"Q(sqrt({self.m}))"

    @property
    def is_real(self) -> bool:
        return self.m > 0

    @property
    def omega_str(self) -> str:
        return f"(1+sqrt({self.m}))/2" if self.tw else f"sqrt({self.m})"

    def __call__(self, a: int, b: int = 0) -> "QuadInt":
        return QuadInt(a, b, self)

    @property
    def omega(self) -> "QuadInt":
        return QuadInt(0, 1, self)

    @cached_property
    def roots_of_unity(self) -> list["QuadInt"]:
        if self.D == -4:
            return [self(1), self(0, 1), self(-1), self(0, -1)]
        if self.D == -3:
            w = self.omega
            return [w**k for k in range(6)]
        return [self(1), self(-1)]

    @cached_property
    def _cache(self) -> dict:
        return {}

    @cached_property
    def unit_ideal(self) -> "QuadIdeal":
        return QuadIdeal(self, 1, 0, 1)


@lru_cache(maxsize=None)
def make_field(m: int) -> QuadraticField:
    return QuadraticField(m)


@dataclass(frozen=True)
class QuadInt:
    """The element ``a + b*w`` of the ring of integers of ``F``."""

    a: int
    b: int
    F: QuadraticField

    def _lift(self, other) -> "QuadInt":
        if isinstance(other, QuadInt):
            if other.F != self.F:
                raise ValidationError("elements of different fields")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.F)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.a + other.a, self.b + other.b, self.F)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.F)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.a - other.a, self.b - other.b, self.F)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.F
        bb = self.b * other.b
        return QuadInt(self.a * other.a - F.nw * bb,
                       self.a * other.b + self.b * other.a + F.tw * bb, F)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            raise ValueError("negative powers are not integral")
        result, base = QuadInt(1, 0, self.F), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def conj(self) -> "QuadInt":
        return QuadInt(self.a + self.F.tw * self.b, -self.b, self.F)

    def norm(self) -> int:
        F = self.F
        return self.a * self.a + F.tw * self.a * self.b + F.nw * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.F.tw * self.b

    @property
    def xy(self) -> tuple[int, int]:
        """``(X, Y)`` with ``self = (X + Y*sqrt(D)) / 2``."""
        return 2 * self.a + self.F.tw * self.b, self.b

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def divexact(self, n: int) -> "QuadInt":
        if self.a % n or self.b % n:
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return QuadInt(self.a // n, self.b // n, self.F)

    def __str__(self):
        X, Y = self.xy
        r = f"sqrt({self.F.m})"
        if self.F.tw and X % 2:
            # half-integral coordinates in the sqrt(m) basis
            return f"({X}{'+' if Y > 0 else '-'}{'' if abs(Y) == 1 else f'{abs(Y)}*'}{r})/2"
        u, v = (X // 2, Y // 2) if self.F.tw else (self.a, self.b)
        if v == 0:
            return str(u)
        coef = "" if abs(v) == 1 else f"{abs(v)}*"
        if u == 0:
            return f"{'-' if v < 0 else ''}{coef}{r}"
        return f"{u}{'+' if v > 0 else '-'}{coef}{r}"


# ---------------------------------------------------------------------------
# exact sign and size of real quadratic numbers u + v*sqrt(D)
# ---------------------------------------------------------------------------

def _sign(u: int, v: int, D: int) -> int:
    if v == 0 or D == 0:
        return (u > 0) - (u < 0)
    if u >= 0 and v >= 0:
        return 1
    if u <= 0 and v <= 0:
        return -1
    lhs, rhs = u * u, v * v * D
    if lhs == rhs:
        return 0
    if u > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def _abs_uv(u: int, v: int, D: int) -> tuple[int, int]:
    return (u, v) if _sign(u, v, D) >= 0 else (-u, -v)


def _cmp_abs(p: tuple[int, int], q: tuple[int, int], D: int) -> int:
    (u1, v1), (u2, v2) = _abs_uv(*p, D), _abs_uv(*q, D)
    return _sign(u1 - u2, v1 - v2, D)


def embedding_abs(alpha: QuadInt, tau: int = 0, precision: int = DEFAULT_PRECISION) -> Interval:
    """Bracket of ``|tau(alpha)|_C``; ``tau = 0`` is the identity, ``1`` conjugation."""
    if not alpha:
        return Interval.point(0)
    F = alpha.F
    if not F.is_real:
        n = alpha.norm()
        lo, hi = sqrt_bounds(n, precision)
        return Interval(lo, hi)
    X, Y = alpha.xy
    if tau:
        Y = -Y
    p = precision
    while True:
        tl, th = sqrt_bounds(Y * Y * F.D, p)
        lo, hi = ((X + tl) / 2, (X + th) / 2) if Y >= 0 else ((X - th) / 2, (X - tl) / 2)
        if _sign(X, Y, F.D) < 0:
            lo, hi = -hi, -lo
        if lo > 0:
            return Interval(lo, hi)
        p *= 2


def ln_embedding_abs(alpha: QuadInt, tau: int = 0, precision: int = DEFAULT_PRECISION) -> Interval:
    if not alpha:
        raise ValidationError("zero has no logarithm")
    if not alpha.F.is_real:
        n = Interval.point(alpha.norm())
        return ln_interval(n, precision) * Fraction(1, 2)
    return ln_interval(embedding_abs(alpha, tau, precision), precision)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

def _hnf(F: QuadraticField, vectors) -> "QuadIdeal":
    pivot = None
    axis: list[int] = []
    for x, y in vectors:
        if x == 0 and y == 0:
            continue
        if y == 0:
            axis.append(x)
            continue
        if pivot is None:
            pivot = (x, y) if y > 0 else (-x, -y)
            continue
        px, py = pivot
        s, t, g = igcdex(py, y)
        s, t, g = int(s), int(t), int(g)
        axis.append((y // g) * px - (py // g) * x)
        pivot = (s * px + t * x, g) if g > 0 else (-(s * px + t * x), -g)
    a = 0
    for x in axis:
        a = gcd(a, x)
    if pivot is None or a == 0:
        raise ValidationError("vectors do not span a rank-2 lattice")
    return QuadIdeal(F, a, pivot[0] % a, pivot[1])


@dataclass(frozen=True)
class QuadIdeal:
    """Ideal with Z-basis ``{a, b + c*w}`` in Hermite normal form."""

    F: QuadraticField
    a: int
    b: int
    c: int

    @classmethod
    def generated_by(cls, F: QuadraticField, gens) -> "QuadIdeal":
        vecs = []
        for g in gens:
            for h in (g, g * F.omega):
                vecs.append((h.a, h.b))
        return _hnf(F, vecs)

    @property
    def norm(self) -> int:
        return self.a * self.c

    @property
    def basis(self) -> tuple[QuadInt, QuadInt]:
        return QuadInt(self.a, 0, self.F), QuadInt(self.b, self.c, self.F)

    @property
    def is_unit(self) -> bool:
        return self.norm == 1

    def contains(self, alpha: QuadInt) -> bool:
        if alpha.b % self.c:
            return False
        return (alpha.a - (alpha.b // self.c) * self.b) % self.a == 0

    def __contains__(self, alpha: QuadInt) -> bool:
        return self.contains(alpha)

    def __mul__(self, other):
        if isinstance(other, QuadInt):
            return QuadIdeal.generated_by(self.F, [e * other for e in self.basis])
        vecs = [(x.a, x.b) for x in (e * f for e in self.basis for f in other.basis)]
        return _hnf(self.F, vecs)

    def __pow__(self, k: int) -> "QuadIdeal":
        result, base = self.F.unit_ideal, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "QuadIdeal":
        return _hnf(self.F, [(e.conj().a, e.conj().b) for e in self.basis])

    def divexact(self, n: int) -> "QuadIdeal":
        return _hnf(self.F, [(e.divexact(n).a, e.divexact(n).b) for e in self.basis])

    def __str__(self):
        return f"({self.a}, {QuadInt(self.b, self.c, self.F)})"


def splitting_type(F: QuadraticField, q: int) -> str:
    require_prime(q)
    k = kronecker(F.D, q)
    return SPLIT if k == 1 else (INERT if k == -1 else RAMIFIED)


def ideal_above(F: QuadraticField, q: int) -> QuadIdeal:
    """Prime ideal ``(q, w - r)`` for the largest root ``r`` of the minimal polynomial of ``w`` mod ``q``."""
    if splitting_type(F, q) == INERT:
        raise ValidationError(f"{q} is inert in {F}")
    roots = roots_mod_prime([F.nw, -F.tw], q)
    r = max(roots)
    return QuadIdeal(F, q, (-r) % q, 1)


# ---------------------------------------------------------------------------
# lattice enumeration
# ---------------------------------------------------------------------------

def _size_form(F: QuadraticField):
    """Positive definite integer form used for reduction and enumeration."""
    if F.is_real:
        D = F.D

        def form(x: QuadInt) -> int:
            X, Y = x.xy
            return X * X + D * Y * Y  # 2(|x|^2 + |x'|^2)
        return form
    return QuadInt.norm


def _round_div(p: int, q: int) -> int:
    return (2 * p + q) // (2 * q)


def _gauss_reduce(e1: QuadInt, e2: QuadInt, form) -> tuple[QuadInt, QuadInt]:
    A, C = form(e1), form(e2)
    if A > C:
        e1, e2, A, C = e2, e1, C, A
    while True:
        B = form(e1 + e2) - A - C
        mu = _round_div(B, 2 * A)
        if mu:
            e2 = e2 - mu * e1
            C = form(e2)
        if C < A:
            e1, e2, A, C = e2, e1, C, A
            continue
        return e1, e2


def lattice_points(I: QuadIdeal, form, bound: int, cap: int = SEARCH_CAP) -> Iterator[QuadInt]:
    """All elements ``x`` of ``I`` with ``form(x) <= bound`` (plus a thin margin)."""
    e1, e2 = _gauss_reduce(*I.basis, form)
    A, C = form(e1), form(e2)
    B = form(e1 + e2) - A - C
    disc = 4 * A * C - B * B
    vmax = isqrt(4 * A * bound // disc) + 1
    estimate = (2 * vmax + 1) * (2 * isqrt(bound // A + 1) + 3)
    if estimate > cap:
        raise CapExceededError(f"lattice search of ~{estimate} points exceeds cap {cap}")
    for v in range(-vmax, vmax + 1):
        rad = B * B * v * v - 4 * A * (C * v * v - bound)
        if rad < 0:
            continue
        s = isqrt(rad) + 1
        ulo = -((B * v + s) // (2 * A))
        uhi = (s - B * v) // (2 * A)
        for u in range(ulo, uhi + 1):
            yield u * e1 + v * e2


CYCLE_CAP = 10**6


def _theta(F: QuadraticField, B: int) -> QuadInt:
    # (B + sqrt D)/2 in the basis {1, w}
    return QuadInt((B - F.tw) // 2, 1, F)


def _rho_residue(b: int, c: int, D: int, s: int) -> int:
    """Representative of ``b mod 2|c|`` in the reduction window."""
    m = 2 * abs(c)
    if c * c > D:
        r = b % m
        return r - m if r > m // 2 else r
    return s - ((s - b) % m)


def _cycle_generator(I: QuadIdeal, cap: int = CYCLE_CAP) -> QuadInt | None:
    """Generator of ``I`` in a real field by walking its reduction cycle, or ``None``.

    ``I = [a, theta]`` with ``theta = (B + sqrt D)/2`` satisfies
    ``I = (theta / c) * [c, conj(theta)]`` where ``c = N(theta)/a``, so the
    product of the factors ``theta/c`` generates ``I`` once the walk reaches ``O``.
    """
    F = I.F
    D, s = F.D, isqrt(F.D)
    g = I.c
    a, B = I.a // g, 2 * (I.b // g) + F.tw
    num, den = F(g), 1
    seen = None
    for step in range(cap):
        if a == 1:
            gamma = num.divexact(den)
            assert gamma in I and abs(gamma.norm()) == I.norm
            return gamma
        c = (B * B - D) // (4 * a)
        reduced = 0 < B <= s and s - B < 2 * a <= s + B
        if reduced:
            if seen is None:
                seen = (a, B)
            elif seen == (a, B):
                return None
        num = num * _theta(F, B)
        den *= c
        k = gcd(gcd(num.a, num.b), den)
        num, den = QuadInt(num.a // k, num.b // k, F), den // k
        a, B = abs(c), _rho_residue(-B, c, D, s)
    raise CapExceededError(f"reduction cycle longer than cap {cap}")


def find_generator(I: QuadIdeal, cap: int = SEARCH_CAP) -> QuadInt | None:
    """Some generator of ``I``, or ``None`` when ``I`` is not principal."""
    if I.F.is_real:
        return _cycle_generator(I)
    n = I.norm
    form = _size_form(I.F)
    for x in lattice_points(I, form, n, cap):
        if abs(x.norm()) == n and x:
            return x
    return None


def is_principal(I: QuadIdeal, cap: int = SEARCH_CAP) -> bool:
    return I.is_unit or find_generator(I, cap) is not None


def same_class(I: QuadIdeal, J: QuadIdeal, cap: int = SEARCH_CAP) -> bool:
    return is_principal(I * J.conj(), cap)


def reduce_ideal(I: QuadIdeal) -> QuadIdeal:
    """An ideal in the class of ``I`` with norm of order sqrt(|D|)."""
    if I.is_unit:
        return I
    form = _size_form(I.F)
    alpha, _ = _gauss_reduce(*I.basis, form)
    J0 = QuadIdeal.generated_by(I.F, [alpha * e.conj() for e in I.basis]).divexact(I.norm)
    return J0.conj()


# ---------------------------------------------------------------------------
# class numbers
# ---------------------------------------------------------------------------

def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms ``(a, b, c)`` of discriminant ``D < 0``."""
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                forms.append((a, b, c))
        a += 1
    return forms


def class_number_imaginary(F: QuadraticField, cap: int = IMAGINARY_DISC_CAP) -> int:
    if F.is_real:
        raise ValidationError("real field: use class_number_real")
    if -F.D > cap:
        raise CapExceededError(f"|D| = {-F.D} exceeds the form-enumeration cap {cap}")
    if "h" not in F._cache:
        F._cache["h"] = kernels.count_reduced_forms(F.D)
    return F._cache["h"]


def class_group_representatives(F: QuadraticField, minkowski_cap: int = MINKOWSKI_CAP,
                                search_cap: int = SEARCH_CAP) -> list[QuadIdeal]:
    """One reduced ideal per class, closing the Minkowski-bound primes under products."""
    D = abs(F.D)
    bound = isqrt(D) // 2 + 1 if F.is_real else isqrt(4 * D) // 3 + 1
    if bound > minkowski_cap:
        raise CapExceededError(
            f"Minkowski bound ~{bound} exceeds cap {minkowski_cap}; supply h_K via invariants file")

    def within(p):
        # real: p <= sqrt(D)/2; imaginary: p <= (2/pi) sqrt|D| < (2/3) sqrt|D|
        return 4 * p * p <= D if F.is_real else 9 * p * p <= 4 * D

    gens = [ideal_above(F, p) for p in primes_up_to(bound)
            if within(p) and splitting_type(F, p) != INERT]
    reps = [F.unit_ideal]
    try:
        i = 0
        while i < len(reps):
            for P in gens:
                J = reduce_ideal(reps[i] * P)
                if not any(same_class(J, R, search_cap) for R in reps):
                    reps.append(J)
            i += 1
    except CapExceededError as exc:
        raise CapExceededError(f"{exc}; supply h_K via invariants file") from exc
    return reps


def class_number_real(F: QuadraticField, minkowski_cap: int = MINKOWSKI_CAP,
                      search_cap: int = SEARCH_CAP) -> int:
    if not F.is_real:
        raise ValidationError("imaginary field: use class_number_imaginary")
    if "h" not in F._cache:
        F._cache["h"] = len(class_group_representatives(F, minkowski_cap, search_cap))
    return F._cache["h"]


def class_number(F: QuadraticField) -> int:
    return class_number_real(F) if F.is_real else class_number_imaginary(F)


# ---------------------------------------------------------------------------
# units
# ---------------------------------------------------------------------------

class FundamentalUnit(NamedTuple):
    unit: QuadInt
    regulator: LogMagnitude  # bracket of ln(unit)
    norm: int


def _floor_quadratic(P: int, Q: int, d: int) -> int:
    # floor((P + sqrt d) / Q) for non-square d > 0
    s = isqrt(d)
    if Q > 0:
        return (P + s) // Q
    return -((P + s) // -Q) - 1


def continued_fraction_units(F: QuadraticField, limit: int = UNIT_ITERATION_CAP) -> Iterator[tuple[int, int, int]]:
    """Yield ``(p, q, N(p - q*w))`` over the convergents ``p/q`` of ``w``."""
    d = F.m
    P, Q = (1, 2) if F.tw else (0, 1)
    p0, p1, q0, q1 = 0, 1, 1, 0
    for _ in range(limit):
        a = _floor_quadratic(P, Q, d)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        yield p1, q1, QuadInt(p1, -q1, F).norm()
        P = a * Q - P
        Q = (d - P * P) // Q


def fundamental_unit(F: QuadraticField, precision: int = DEFAULT_PRECISION) -> FundamentalUnit:
    """Smallest unit ``> 1`` of a real quadratic field, with its regulator bracket."""
    if not F.is_real:
        raise ValidationError("imaginary quadratic fields have no fundamental unit")
    key = ("eps", precision)
    if key not in F._cache:
        for p, q, n in continued_fraction_units(F):
            if abs(n) == 1:
                eps = QuadInt(p - F.tw * q, q, F)  # conjugate of p - q*w
                break
        else:
            raise CapExceededError("continued fraction period exceeds iteration cap")
        F._cache[key] = FundamentalUnit(eps, lm_from_interval(embedding_abs(eps, 0, precision), precision),
                                        eps.norm())
    return F._cache[key]


# ---------------------------------------------------------------------------
# generators, twisted norms, heights
# ---------------------------------------------------------------------------

def _lex_best(cands: list[QuadInt]) -> QuadInt:
    return max(cands, key=lambda x: (x.a, x.b))


def normalize_generator(gamma: QuadInt) -> QuadInt:
    """Canonical associate: unit-balanced for real fields, then the lexicographically largest ``(a, b)``."""
    F = gamma.F
    if not F.is_real:
        return _lex_best([gamma * u for u in F.roots_of_unity])
    eps = fundamental_unit(F).unit
    inv = eps.conj() * eps.norm()  # eps**-1
    D = F.D

    def size(x):
        X, Y = x.xy
        return (X, Y) if _cmp_abs((X, Y), (X, -Y), D) >= 0 else (X, -Y)

    best = gamma
    for step in (eps, inv):
        while True:
            nxt = best * step
            if _cmp_abs(size(nxt), size(best), D) < 0:
                best = nxt
            else:
                break
    cands = [best, -best]
    for step in (eps, inv):
        other = best * step
        if _cmp_abs(size(other), size(best), D) == 0:
            cands += [other, -other]
    return _lex_best(cands)


def class_order(I: QuadIdeal, h: int, cap: int = SEARCH_CAP) -> int:
    J = I
    for k in range(1, h + 1):
        if is_principal(J, cap):
            return k
        J = J * I
    raise ValidationError(f"no power of {I} up to {h} is principal")


def ideal_pow_generator(F: QuadraticField, I: QuadIdeal, h: int, cap: int = SEARCH_CAP) -> QuadInt:
    """A normalised generator of ``I**h``."""
    if h < 1:
        raise ValidationError("h must be positive")
    J = I**h
    gamma = F(1) if J.is_unit else find_generator(J, cap)
    if gamma is None:
        order = None
        try:
            order = class_order(I, max(h, class_number(F)), cap)
        except (ValidationError, CapExceededError):
            pass
        raise NonPrincipalError(f"{I}^{h} is not principal (class order {order})", order)
    gamma = normalize_generator(gamma)
    assert gamma in J and abs(gamma.norm()) == J.norm
    return gamma


def twisted_norm(alpha: QuadInt, family: tuple[int, int]) -> QuadInt:
    """``alpha**(2 a_id) * conj(alpha)**(2 a_conj)``."""
    if not alpha:
        raise ValidationError("twisted norm of zero")
    a_id, a_conj = family
    if a_id not in (0, 1) or a_conj not in (0, 1):
        raise ValidationError(f"family exponents must be 0 or 1, got {family}")
    return alpha ** (2 * a_id) * alpha.conj() ** (2 * a_conj)


def height_bracket(alpha: QuadInt, precision: int = DEFAULT_PRECISION) -> LogMagnitude:
    """Bracket of ``ln H(alpha)`` for a non-zero integral ``alpha``.

    Real places use ``|.|``, the complex place ``|.|**2``; ``H**2`` is the
    product of ``max(1, |alpha|_v)``.
    """
    if not alpha:
        raise ValidationError("height of zero")
    F = alpha.F
    if not F.is_real:
        n = alpha.norm()
        if n <= 1:
            return LogMagnitude.one()
        iv = ln_interval(Interval.point(n), precision) * Fraction(1, 2)
        return LogMagnitude(iv.lo, iv.hi)
    total = Interval.point(0)
    for tau in (0, 1):
        x = embedding_abs(alpha, tau, precision)
        if x.hi <= 1:
            continue
        lnx = ln_interval(x, precision)
        total = total + Interval(max(lnx.lo, Fraction(0)), lnx.hi)
    iv = total * Fraction(1, 2)
    return LogMagnitude(iv.lo, iv.hi)


def split_primes(F: QuadraticField, cap: int, start: int = 2) -> list[int]:
    return [q for q in primes_up_to(cap) if q >= start and kronecker(F.D, q) == 1]


# ---------------------------------------------------------------------------
# coverage of classes by small split primes
# ---------------------------------------------------------------------------

def represents(form: tuple[int, int, int], n: int) -> bool:
    """Whether the positive definite form takes the value ``n``."""
    a, b, c = form
    D = b * b - 4 * a * c
    ymax = isqrt(4 * a * n // -D) + 1
    for y in range(-ymax, ymax + 1):
        rad = b * b * y * y - 4 * a * (c * y * y - n)
        if rad < 0:
            continue
        s = isqrt(rad)
        if s * s != rad:
            continue
        for num in (-b * y + s, -b * y - s):
            if num % (2 * a) == 0:
                return True
    return False


@dataclass
class Coverage:
    covered: dict
    uncovered: list


def class_coverage(F: QuadraticField, cap: int) -> Coverage:
    """Least split prime ``q <= cap`` represented by each reduced form of ``D``."""
    if F.is_real:
        raise ValidationError("class coverage is implemented for imaginary fields")
    forms = reduced_forms(F.D)
    covered = {}
    for q in split_primes(F, cap):
        for f in forms:
            if f not in covered and represents(f, q):
                covered[f] = q
        if len(covered) == len(forms):
            break
    return Coverage(covered, [f for f in forms if f not in covered])
