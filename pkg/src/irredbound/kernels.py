"""Backend selection for the enumeration kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python twin.  Setting ``IRREDBOUND_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("IRREDBOUND_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

# the compiled kernels use 64-bit intermediates
COMPILED_MODULUS_LIMIT = 46340


def count_points_odd(b2, b4, b6, q):
    if _impl is not _kernels_py and q > 2**31 - 1:
        return _kernels_py.count_points_odd(b2, b4, b6, q)
    return _impl.count_points_odd(b2 % q, b4 % q, b6 % q, q)


def count_points_full(a1, a2, a3, a4, a6, q):
    if q > COMPILED_MODULUS_LIMIT:
        return _kernels_py.count_points_full(a1, a2, a3, a4, a6, q)
    return _impl.count_points_full(a1 % q, a2 % q, a3 % q, a4 % q, a6 % q, q)


def count_reduced_forms(D):
    if _impl is not _kernels_py and -D > 10**12:
        return _kernels_py.count_reduced_forms(D)
    return _impl.count_reduced_forms(D)
