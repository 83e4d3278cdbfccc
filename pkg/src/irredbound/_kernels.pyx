# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.  Same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

DEF MAX_MODULUS = 2147483647


cdef inline long long _mod(long long v, long long q) nogil:
    v %= q
    if v < 0:
        v += q
    return v


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


def count_points_odd(long long b2, long long b4, long long b6, long long q):
    if q < 3 or q % 2 == 0 or q > MAX_MODULUS:
        raise ValueError("count_points_odd needs an odd modulus below 2**31")
    cdef signed char* chi = <signed char*>malloc(q)
    if chi == NULL:
        raise MemoryError()
    cdef long long x, f, total = 0
    cdef long long c2 = _mod(b2, q), c1 = _mod(2 * b4, q), c0 = _mod(b6, q)
    with nogil:
        memset(chi, -1, q)
        chi[0] = 0
        for x in range(1, (q - 1) // 2 + 1):
            chi[(x * x) % q] = 1
        for x in range(q):
            f = ((4 * x) % q + c2) % q
            f = (f * x + c1) % q
            f = (f * x + c0) % q
            total += 1 + chi[f]
    free(chi)
    return total + 1


def count_points_full(long long a1, long long a2, long long a3, long long a4,
                      long long a6, long long q):
    if q < 2 or q > 46340:
        raise ValueError("count_points_full is meant for tiny moduli")
    cdef long long x, y, lhs, rhs, total = 1
    a1 = _mod(a1, q); a2 = _mod(a2, q); a3 = _mod(a3, q)
    a4 = _mod(a4, q); a6 = _mod(a6, q)
    with nogil:
        for x in range(q):
            rhs = (((x + a2) * x % q + a4) * x + a6) % q
            for y in range(q):
                lhs = (y * y + (a1 * x + a3) % q * y) % q
                if lhs == rhs:
                    total += 1
    return total


def count_reduced_forms(long long D):
    if D >= 0 or (D % 4 != 0 and D % 4 != -3):
        raise ValueError("need a negative discriminant D = 0, 1 mod 4")
    cdef long long absD = -D, a, b, c, num, h = 0
    with nogil:
        a = 1
        while 3 * a * a <= absD:
            for b in range(-a + 1, a + 1):
                if (b - D) % 2 != 0:
                    continue
                num = b * b - D
                if num % (4 * a) != 0:
                    continue
                c = num // (4 * a)
                if c < a or (c == a and b < 0):
                    continue
                if _gcd(_gcd(a, b), c) != 1:
                    continue
                h += 1
            a += 1
    return h
