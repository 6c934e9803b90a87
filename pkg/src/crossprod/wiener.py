"""Truncated absolutely convergent Fourier series on the circle.

A series ``u(theta) = sum_n c_n e^{i n theta}`` is kept as a sparse map
``n -> c_n`` with exact zeros dropped. Products are coefficient convolutions,
the involution is ``c_n -> conj(c_{-n})`` and the norm is ``sum |c_n|``.

Inversion follows Wiener's theorem constructively: check that ``u`` has no
zero on a dense grid, take the pointwise reciprocal on a power-of-two grid
back to coefficients, then polish with Newton steps ``v <- v (2 - u v)``.
The returned series is certified by its residual ``||u v - 1||``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dynsys import DomainError

LOGGER = logging.getLogger(__name__)

#: grid minimum of |u| at or below which u is declared non-invertible
INVERTIBILITY_THRESHOLD = 1e-10
MIN_GRID = 256


class NotInvertibleError(DomainError):
    pass


class ToleranceNotReachedError(DomainError):
    def __init__(self, msg, best=None, residual=None):
        super().__init__(msg)
        self.best = best
        self.residual = residual


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


class FourierSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for n, c in (coeffs or {}).items():
            c = complex(c)
            if c != 0:
                clean[int(n)] = c
        self._coeffs = dict(sorted(clean.items()))

    @classmethod
    def constant(cls, c) -> FourierSeries:
        return cls({0: c})

    @classmethod
    def monomial(cls, n: int, c=1.0) -> FourierSeries:
        return cls({n: c})

    @classmethod
    def from_dense(cls, lo: int, arr) -> FourierSeries:
        return cls({lo + i: c for i, c in enumerate(np.asarray(arr)) if c != 0})

    @property
    def coeffs(self) -> dict[int, complex]:
        return dict(self._coeffs)

    @property
    def support(self) -> list[int]:
        return list(self._coeffs)

    def __getitem__(self, n: int) -> complex:
        return self._coeffs.get(int(n), 0j)

    def is_zero(self) -> bool:
        return not self._coeffs

    def width(self) -> int:
        if not self._coeffs:
            return 0
        return max(self._coeffs) - min(self._coeffs) + 1

    def dense(self) -> tuple[int, np.ndarray]:
        if not self._coeffs:
            return 0, np.zeros(0, dtype=np.complex128)
        lo = min(self._coeffs)
        out = np.zeros(self.width(), dtype=np.complex128)
        for n, c in self._coeffs.items():
            out[n - lo] = c
        return lo, out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self._coeffs:
            return "FourierSeries(0)"
        return "FourierSeries(" + " + ".join(f"({c:.6g})z^{n}" for n, c in self._coeffs.items()) + ")"

    def __add__(self, other) -> FourierSeries:
        if not isinstance(other, FourierSeries):
            other = FourierSeries.constant(other)
        out = dict(self._coeffs)
        for n, c in other._coeffs.items():
            out[n] = out.get(n, 0j) + c
        return FourierSeries(out)

    __radd__ = __add__

    def __neg__(self) -> FourierSeries:
        return FourierSeries({n: -c for n, c in self._coeffs.items()})

    def __sub__(self, other) -> FourierSeries:
        if not isinstance(other, FourierSeries):
            other = FourierSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> FourierSeries:
        return (-self) + other

    def __mul__(self, other) -> FourierSeries:
        if isinstance(other, FourierSeries):
            return conv(self, other)
        c = complex(other)
        return FourierSeries({n: c * v for n, v in self._coeffs.items()})

    def __rmul__(self, c) -> FourierSeries:
        return self * c

    def adjoint(self) -> FourierSeries:
        return ac_adjoint(self)

    def norm(self) -> float:
        return ac_norm(self)

    def __call__(self, theta):
        return eval_at(self, theta)

    def truncate(self, threshold: float) -> tuple[FourierSeries, float]:
        """Drop coefficients with modulus <= threshold; returns the discarded l1 mass."""
        kept, lost = {}, 0.0
        for n, c in self._coeffs.items():
            if abs(c) > threshold:
                kept[n] = c
            else:
                lost += abs(c)
        return FourierSeries(kept), lost


def conv(u: FourierSeries, v: FourierSeries) -> FourierSeries:
    if u.is_zero() or v.is_zero():
        return FourierSeries()
    lu, du = u.dense()
    lv, dv = v.dense()
    return FourierSeries.from_dense(lu + lv, kernels.laurent_conv(du, dv))


def ac_adjoint(u: FourierSeries) -> FourierSeries:
    return FourierSeries({-n: np.conj(c) for n, c in u.coeffs.items()})


def ac_norm(u: FourierSeries) -> float:
    # np.abs (not builtin abs) so the moduli match sup_norm on the algebra side
    return math.fsum(np.abs(np.fromiter(u.coeffs.values(), dtype=np.complex128, count=len(u.coeffs))))


def eval_at(u: FourierSeries, theta):
    """sum_n c_n e^{i n theta}; theta may be a scalar or an array (radians)."""
    th = np.asarray(theta, dtype=float)
    if u.is_zero():
        return np.zeros(th.shape, dtype=np.complex128) if th.ndim else 0j
    ns = np.fromiter(u.coeffs.keys(), dtype=float)
    cs = np.fromiter(u.coeffs.values(), dtype=np.complex128)
    vals = np.exp(1j * np.multiply.outer(th, ns)) @ cs
    return vals if th.ndim else complex(vals)


def grid_thetas(size: int) -> np.ndarray:
    return 2 * np.pi * np.arange(size) / size


def sample_grid(u: FourierSeries, size: int) -> np.ndarray:
    """Values at theta_j = 2 pi j / size. Coefficients are folded mod size, which is exact."""
    buf = np.zeros(size, dtype=np.complex128)
    for n, c in u.coeffs.items():
        buf[n % size] += c
    return np.fft.ifft(buf) * size


def coefficients_from_grid(values: np.ndarray) -> FourierSeries:
    """Inverse of sample_grid for series supported in [-size/2, size/2)."""
    size = values.shape[0]
    c = np.fft.fft(values) / size
    ns = np.arange(size)
    ns = np.where(ns < size // 2, ns, ns - size)
    return FourierSeries({int(n): v for n, v in zip(ns, c)})


def check_grid_size(u: FourierSeries) -> int:
    return max(MIN_GRID, next_pow2(8 * max(u.width(), 1)))


def grid_minimum(u: FourierSeries, size: int | None = None) -> float:
    size = size or check_grid_size(u)
    return float(np.min(np.abs(sample_grid(u, size))))


def is_invertible(u: FourierSeries) -> bool:
    return grid_minimum(u) > INVERTIBILITY_THRESHOLD


@dataclass
class Inversion:
    series: FourierSeries
    residual: float
    discarded_mass: float
    grid: int
    newton_steps: int

    def to_json(self) -> dict:
        return {"residual": self.residual, "discarded_mass": self.discarded_mass,
                "grid": self.grid, "newton_steps": self.newton_steps}


def residual(u: FourierSeries, v: FourierSeries) -> float:
    return ac_norm(conv(u, v) - 1.0)


def invert_report(u: FourierSeries, tol: float = 1e-9, max_support: int = 1 << 16,
                  max_newton: int = 30) -> Inversion:
    if tol <= 0:
        raise DomainError("tol must be positive")
    if u.is_zero():
        raise NotInvertibleError("non-invertible: the zero series")
    gmin = grid_minimum(u)
    if gmin <= INVERTIBILITY_THRESHOLD:
        raise NotInvertibleError(
            f"non-invertible: |u| reaches {gmin:.3g} on the {check_grid_size(u)}-point grid")
    unorm = ac_norm(u)
    best = None
    size = check_grid_size(u)
    while True:
        # dropped mass is at most size * thr, so it adds at most tol/4 to the residual
        thr = tol / (4.0 * size * max(1.0, unorm))
        v, lost = coefficients_from_grid(1.0 / sample_grid(u, size)).truncate(thr)
        res = residual(u, v)
        steps = 0
        while res > tol and steps < max_newton:
            cand, cand_lost = (v * (2.0 - conv(u, v))).truncate(thr)
            cand_res = residual(u, cand)
            steps += 1
            if cand_res >= res:
                break
            v, res, lost = cand, cand_res, lost + cand_lost
        LOGGER.debug("grid %d: residual %.3g after %d Newton steps", size, res, steps)
        if best is None or res < best.residual:
            best = Inversion(v, res, lost, size, steps)
        if res <= tol:
            return best
        if 2 * size > max_support:
            raise ToleranceNotReachedError(
                f"tolerance {tol:g} not reached within support {max_support}; "
                f"best residual {best.residual:.3g}", best.series, best.residual)
        size *= 2


def invert(u: FourierSeries, tol: float = 1e-9, max_support: int = 1 << 16) -> FourierSeries:
    return invert_report(u, tol, max_support).series


def series_to_json(u: FourierSeries) -> dict:
    return {"coeffs": [{"n": n, "re": float(c.real), "im": float(c.imag)}
                       for n, c in u.coeffs.items()]}


def series_from_json(data: dict) -> FourierSeries:
    out, last = {}, None
    for t in data.get("coeffs", []):
        n = int(t["n"])
        if last is not None and n <= last:
            raise DomainError("series coefficients must be sorted by n without duplicates")
        last = n
        out[n] = complex(float(t["re"]), float(t.get("im", 0.0)))
    return FourierSeries(out)
