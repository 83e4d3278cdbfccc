"""Small integer helpers shared by the field and curve modules."""

from math import isqrt

from sympy import isprime, nextprime, primerange
from gmpy2 import kronecker as _kronecker
from sympy.ntheory import sqrt_mod

from .errors import ValidationError


class TrialDivisionError(ArithmeticError):
    """Cofactor left after trial division is neither 1 nor a perfect square."""


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def require_prime(q: int) -> None:
    if not is_prime(q):
        raise ValidationError(f"{q} is not prime")


def primes_up_to(bound: int) -> list[int]:
    return [int(p) for p in primerange(2, bound + 1)]


def next_prime(n: int) -> int:
    return int(nextprime(n))


def kronecker(D: int, q: int) -> int:
    """Kronecker symbol (D | q) for a prime q; D a discriminant (0 or 1 mod 4)."""
    return int(_kronecker(D, q))


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return squarefree_part(n) == n


def squarefree_part(n: int, trial_bound: int | None = None) -> int:
    """Signed squarefree kernel of ``n``: the ``s`` with ``n = s * k**2``.

    Divides out primes up to ``trial_bound`` (default: enough to finish);
    whatever remains must be 1, a prime, or a perfect square.
    """
    if n == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    core = 1
    if trial_bound is None:
        trial_bound = isqrt(n)
    d = 2
    while d <= trial_bound and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                core *= d
        d += 1 if d == 2 else 2
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            pass
        elif d * d > n or is_prime(n):
            core *= n
        else:
            raise TrialDivisionError(f"unresolved cofactor {n}")
    return sign * core


def roots_mod_prime(coeffs: list[int], q: int) -> list[int]:
    """Roots in [0, q) of the monic quadratic ``x^2 + c1 x + c0`` (``coeffs = [c0, c1]``)."""
    c0, c1 = coeffs
    if q == 2:
        return [x for x in range(2) if (x * x + c1 * x + c0) % 2 == 0]
    # x = (-c1 +- sqrt(c1^2 - 4 c0)) / 2
    disc = (c1 * c1 - 4 * c0) % q
    inv2 = pow(2, -1, q)
    if disc == 0:
        return [(-c1 * inv2) % q]
    s = sqrt_mod(disc, q, all_roots=True)
    return sorted({(-c1 + int(r)) * inv2 % q for r in s})
