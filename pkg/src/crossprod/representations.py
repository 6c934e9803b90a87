"""Matrices of the two representation families.

``pi_finite`` is the n-dimensional representation at a point of Fix_n with
corner entry z = e^{i theta}: f acts diagonally by f(sigma^j x) and delta
sends e_j to e_{j+1} and e_{n-1} to z e_0. ``pi_window`` is the compression
of the infinite representation on l2(Z) to the basis vectors lo..hi, where
delta is the bilateral shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Ell1Elem, as_cfun, embed, monomial
from .dynsys import DomainError, DynSys, fix_points


@dataclass(frozen=True)
class ReprMatrix:
    entries: np.ndarray
    basis_offset: int = 0

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def op_norm(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.linalg.norm(self.entries, 2))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis_offset": self.basis_offset,
            "re": self.entries.real.tolist(),
            "im": self.entries.imag.tolist(),
        }


def pi_finite(sys: DynSys, x: int, n: int, theta: float, a: Ell1Elem) -> ReprMatrix:
    sys.check_point(x)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if x not in fix_points(sys, n):
        raise DomainError(f"x={x} is not in Fix_{n}")
    if a.sys != sys:
        raise DomainError("element belongs to a different system")
    pts = np.array([sys.apply(x, j) for j in range(n)])
    out = np.zeros((n, n), dtype=np.complex128)
    cols = np.arange(n)
    for k, f in a.terms.items():
        t = cols + k
        rows = t % n
        wraps = t // n  # delta^k e_j = z^{floor((j+k)/n)} e_{(j+k) mod n}
        phase = np.exp(1j * theta * wraps)
        out[rows, cols] += f[pts[rows]] * phase
    return ReprMatrix(out)


def pi_window(sys: DynSys, x: int, a: Ell1Elem, lo: int, hi: int) -> ReprMatrix:
    """Entries <e_j, pi_x(a) e_i> = a_{j-i}(sigma^j x) for lo <= i, j <= hi."""
    sys.check_point(x)
    if lo > hi:
        raise DomainError(f"empty window [{lo}, {hi}]")
    size = hi - lo + 1
    idx = np.arange(lo, hi + 1)
    vals_at = np.array([sys.apply(x, int(j)) for j in idx])
    out = np.zeros((size, size), dtype=np.complex128)
    for k, f in a.terms.items():
        if abs(k) >= size:
            continue
        cols = np.arange(max(0, -k), min(size, size - k))
        rows = cols + k
        out[rows, cols] = f[vals_at[rows]]
    return ReprMatrix(out, basis_offset=lo)


def kernel_witness(sys: DynSys, n0: int, f) -> Ell1Elem:
    """w = f - f delta^{n0} for f supported in Fix_{n0}."""
    if n0 < 1:
        raise DomainError(f"n0 must be >= 1, got {n0}")
    f = as_cfun(sys, f)
    fix = fix_points(sys, n0)
    if len(fix) == 0:
        raise DomainError(f"Fix_{n0} is empty")
    if not np.any(f != 0):
        raise DomainError("f must be non-zero")
    outside = fix.complement().to_list()
    if np.any(f[outside] != 0):
        raise DomainError(f"f is supported outside Fix_{n0} = {fix.to_list()}")
    return embed(sys, f) - monomial(sys, f, n0)
