"""Pure-Python enumeration kernels, used when the compiled module is absent."""

from math import gcd


def count_points_odd(b2, b4, b6, q):
    """#E(F_q) for odd q from the completed square ``(2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6``."""
    if q < 3 or q % 2 == 0:
        raise ValueError("count_points_odd needs an odd modulus")
    chi = bytearray(q)  # 0: non-residue, 1: zero, 2: non-zero square
    for x in range(1, (q - 1) // 2 + 1):
        chi[x * x % q] = 2
    chi[0] = 1
    c2, c1, c0 = b2 % q, 2 * b4 % q, b6 % q
    total = 1
    for x in range(q):
        total += chi[(((4 * x + c2) * x + c1) * x + c0) % q]
    return total


def count_points_full(a1, a2, a3, a4, a6, q):
    """#E(F_q) by enumerating every affine pair of the long Weierstrass equation."""
    total = 1
    for x in range(q):
        rhs = (((x + a2) * x + a4) * x + a6) % q
        s = (a1 * x + a3) % q
        for y in range(q):
            if (y * (y + s) - rhs) % q == 0:
                total += 1
    return total


def count_reduced_forms(D):
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("need a negative discriminant D = 0, 1 mod 4")
    h = 0
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
                h += 1
        a += 1
    return h
