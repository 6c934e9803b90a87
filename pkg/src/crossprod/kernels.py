"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
fallback is used. Set ``CROSSPROD_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("CROSSPROD_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def twisted_conv(a, b, idx):
    return _impl.twisted_conv(
        np.ascontiguousarray(a, dtype=np.complex128),
        np.ascontiguousarray(b, dtype=np.complex128),
        np.ascontiguousarray(idx, dtype=np.int64),
    )


def laurent_conv(u, v):
    return _impl.laurent_conv(
        np.ascontiguousarray(u, dtype=np.complex128),
        np.ascontiguousarray(v, dtype=np.complex128),
    )


def matrix_laurent_mul(a, b):
    return _impl.matrix_laurent_mul(
        np.ascontiguousarray(a, dtype=np.complex128),
        np.ascontiguousarray(b, dtype=np.complex128),
    )
