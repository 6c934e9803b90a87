import os
import subprocess
import sys

import numpy as np
import pytest

from crossprod import _kernels_py, kernels

try:
    from crossprod import _kernels as compiled
except ImportError:
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def _cplx(rng, *shape, zero_frac=0.3):
    z = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    z[rng.uniform(size=shape) < zero_frac] = 0
    return z


def _naive_twisted(a, b, idx):
    K, m = a.shape
    out = np.zeros((K + b.shape[0] - 1, m), dtype=complex)
    for r in range(K):
        for s in range(b.shape[0]):
            out[r + s] += a[r] * b[s][idx[r]]
    return out


@pytest.mark.parametrize("seed", range(5))
def test_python_twisted_matches_naive(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 6))
    a, b = _cplx(rng, 4, m), _cplx(rng, 3, m)
    idx = np.stack([rng.permutation(m) for _ in range(4)]).astype(np.int64)
    assert np.allclose(_kernels_py.twisted_conv(a, b, idx), _naive_twisted(a, b, idx), atol=1e-14)


def test_python_laurent_matches_numpy():
    rng = np.random.default_rng(1)
    u, v = _cplx(rng, 17), _cplx(rng, 9)
    assert np.allclose(_kernels_py.laurent_conv(u, v), np.convolve(u, v), atol=1e-13)


def test_python_matrix_mul_matches_naive():
    rng = np.random.default_rng(2)
    a, b = _cplx(rng, 2, 3, 5), _cplx(rng, 3, 4, 4)
    ref = np.zeros((2, 4, 8), dtype=complex)
    for i in range(2):
        for j in range(4):
            for k in range(3):
                ref[i, j] += np.convolve(a[i, k], b[k, j])
    assert np.allclose(_kernels_py.matrix_laurent_mul(a, b), ref, atol=1e-13)


@needs_ext
@pytest.mark.parametrize("seed", range(5))
def test_backends_agree(seed):
    rng = np.random.default_rng(100 + seed)
    m = int(rng.integers(1, 7))
    a, b = _cplx(rng, 6, m), _cplx(rng, 5, m)
    idx = np.stack([rng.permutation(m) for _ in range(6)]).astype(np.int64)
    close = lambda x, y: np.allclose(x, y, rtol=1e-14, atol=1e-14)  # noqa: E731
    assert close(compiled.twisted_conv(a, b, idx), _kernels_py.twisted_conv(a, b, idx))
    u, v = _cplx(rng, 33), _cplx(rng, 12)
    assert close(compiled.laurent_conv(u, v), _kernels_py.laurent_conv(u, v))
    A, B = _cplx(rng, 3, 3, 7), _cplx(rng, 3, 2, 4)
    assert close(compiled.matrix_laurent_mul(A, B), _kernels_py.matrix_laurent_mul(A, B))


def test_wrappers_accept_non_contiguous_real_input():
    u = np.arange(10.0)[::2]
    assert np.allclose(kernels.laurent_conv(u, [1.0]), u)


def test_env_var_forces_fallback():
    env = dict(os.environ, CROSSPROD_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import crossprod; print(crossprod.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
