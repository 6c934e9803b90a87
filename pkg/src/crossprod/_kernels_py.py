"""Pure numpy versions of the compiled kernels.

Accumulation order matches the Cython loops. numpy's vectorised complex
multiply may round differently from the scalar C loop, so the two backends
agree to rounding level rather than bit for bit.
"""

import numpy as np


def twisted_conv(a, b, idx):
    """Dense twisted convolution.

    ``a`` has shape (Ka, m), ``b`` has shape (Kb, m) and ``idx[r]`` is the
    index array of sigma^{-(k_a0 + r)}, so that ``b[s][idx[r]]`` is
    alpha^{k}(b_s) for the r-th degree k of ``a``.
    """
    ka, m = a.shape
    kb = b.shape[0]
    out = np.zeros((ka + kb - 1, m), dtype=np.complex128)
    for r in range(ka):
        out[r:r + kb] += a[r][None, :] * b[:, idx[r]]
    return out


def laurent_conv(u, v):
    nu, nv = u.shape[0], v.shape[0]
    out = np.zeros(nu + nv - 1, dtype=np.complex128)
    for i in range(nu):
        out[i:i + nv] += u[i] * v
    return out


def matrix_laurent_mul(a, b):
    """Product of matrices whose entries are coefficient arrays.

    ``a`` has shape (p, q, La), ``b`` has shape (q, r, Lb); entries share a
    common lowest degree per operand, which the caller tracks.
    """
    p, q, la = a.shape
    r, lb = b.shape[1], b.shape[2]
    out = np.zeros((p, r, la + lb - 1), dtype=np.complex128)
    for l in range(q):
        for s in range(la):
            out[:, :, s:s + lb] += a[:, l, s][:, None, None] * b[l][None, :, :]
    return out
