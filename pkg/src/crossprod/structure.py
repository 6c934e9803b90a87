"""The isomorphism onto p x p matrices over the Wiener algebra for one orbit.

For ``X = {x0, sigma x0, ..., sigma^{p-1} x0}`` the image of ``sum_k a_k delta^k``
has entry (i, j), 0-based, equal to

    sum_n a_{n p + i - j}(sigma^i x0) z^n,

which is the unique layout for which evaluation at z = e^{i theta} reproduces
the finite representation at x0 with corner entry z. Every value
``a_k(sigma^i x0)`` lands in exactly one slot, so the inverse map is a read-back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, wiener
from .algebra import Ell1Elem, max_abs_diff
from .dynsys import DomainError, DynSys
from .wiener import FourierSeries, NotInvertibleError, grid_thetas

ADJUGATE_MAX_P = 4


class ACMatrix:
    """A square matrix of FourierSeries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        p = len(rows)
        if p < 1 or any(len(r) != p for r in rows):
            raise DomainError("ACMatrix must be square and non-empty")
        self.entries = tuple(
            tuple(e if isinstance(e, FourierSeries) else FourierSeries.constant(e) for e in r)
            for r in rows
        )

    @property
    def p(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> FourierSeries:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, p: int) -> ACMatrix:
        return cls([[FourierSeries.constant(1.0 if i == j else 0.0) for j in range(p)]
                    for i in range(p)])

    @classmethod
    def zeros(cls, p: int) -> ACMatrix:
        return cls([[FourierSeries() for _ in range(p)] for _ in range(p)])

    @classmethod
    def diagonal(cls, series) -> ACMatrix:
        series = list(series)
        p = len(series)
        return cls([[series[i] if i == j else FourierSeries() for j in range(p)]
                    for i in range(p)])

    def dense(self) -> tuple[int, np.ndarray]:
        sup = [n for r in self.entries for e in r for n in e.support]
        if not sup:
            return 0, np.zeros((self.p, self.p, 1), dtype=np.complex128)
        lo, hi = min(sup), max(sup)
        out = np.zeros((self.p, self.p, hi - lo + 1), dtype=np.complex128)
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                for n, c in e.coeffs.items():
                    out[i, j, n - lo] = c
        return lo, out

    @classmethod
    def from_dense(cls, lo: int, arr) -> ACMatrix:
        p = arr.shape[0]
        return cls([[FourierSeries.from_dense(lo, arr[i, j]) for j in range(p)]
                    for i in range(p)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ACMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def __repr__(self) -> str:
        return "ACMatrix(" + repr([list(r) for r in self.entries]) + ")"

    def _check(self, other: ACMatrix) -> None:
        if not isinstance(other, ACMatrix) or other.p != self.p:
            raise DomainError("ACMatrix dimension mismatch")

    def __add__(self, other: ACMatrix) -> ACMatrix:
        self._check(other)
        return ACMatrix([[a + b for a, b in zip(r, s)]
                         for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> ACMatrix:
        return ACMatrix([[-a for a in r] for r in self.entries])

    def __sub__(self, other: ACMatrix) -> ACMatrix:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ACMatrix):
            return mat_mul(self, other)
        if isinstance(other, FourierSeries):
            return ACMatrix([[a * other for a in r] for r in self.entries])
        return ACMatrix([[a * other for a in r] for r in self.entries])

    def __rmul__(self, c):
        return self * c

    def __pow__(self, n: int) -> ACMatrix:
        out = ACMatrix.identity(self.p)
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> ACMatrix:
        return mat_adjoint(self)

    def norm(self) -> float:
        return mat_norm(self)


def mat_mul(A: ACMatrix, B: ACMatrix) -> ACMatrix:
    A._check(B)
    la, da = A.dense()
    lb, db = B.dense()
    return ACMatrix.from_dense(la + lb, kernels.matrix_laurent_mul(da, db))


def mat_adjoint(A: ACMatrix) -> ACMatrix:
    p = A.p
    return ACMatrix([[A[j, i].adjoint() for j in range(p)] for i in range(p)])


def mat_norm(A: ACMatrix) -> float:
    return max(e.norm() for r in A.entries for e in r)


def ev_z(A: ACMatrix, theta: float) -> np.ndarray:
    p = A.p
    out = np.zeros((p, p), dtype=np.complex128)
    for i in range(p):
        for j in range(p):
            out[i, j] = wiener.eval_at(A[i, j], theta)
    return out


def ev_grid(A: ACMatrix, size: int) -> np.ndarray:
    """ev_z at theta_j = 2 pi j / size for all j; shape (size, p, p)."""
    p = A.p
    out = np.empty((size, p, p), dtype=np.complex128)
    for i in range(p):
        for j in range(p):
            out[:, i, j] = wiener.sample_grid(A[i, j], size)
    return out


def orbit_points(sys: DynSys, x0: int) -> list[int]:
    sys.check_point(x0)
    if len(sys.cycles) != 1:
        raise DomainError(f"system has {len(sys.cycles)} orbits; the structure map needs one")
    return [sys.apply(x0, i) for i in range(sys.size)]


def psi(a: Ell1Elem, x0: int) -> ACMatrix:
    pts = orbit_points(a.sys, x0)
    p = len(pts)
    cells = [[{} for _ in range(p)] for _ in range(p)]
    for k, f in a.terms.items():
        for i, x in enumerate(pts):
            j = (i - k) % p
            n = (k - i + j) // p
            cells[i][j][n] = f[x]
    return ACMatrix([[FourierSeries(c) for c in r] for r in cells])


def psi_inverse(A: ACMatrix, sys: DynSys, x0: int) -> Ell1Elem:
    pts = orbit_points(sys, x0)
    p = len(pts)
    if A.p != p:
        raise DomainError(f"matrix is {A.p}x{A.p} but the orbit has {p} points")
    terms: dict[int, np.ndarray] = {}
    for i, x in enumerate(pts):
        for j in range(p):
            for n, c in A[i, j].coeffs.items():
                k = n * p + i - j
                terms.setdefault(k, np.zeros(p, dtype=np.complex128))[x] = c
    return Ell1Elem(sys, terms)


def _det(M):
    """Laplace expansion over FourierSeries entries (p <= ADJUGATE_MAX_P)."""
    p = len(M)
    if p == 1:
        return M[0][0]
    total = FourierSeries()
    for j in range(p):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def mat_det(A: ACMatrix) -> FourierSeries:
    return _det([list(r) for r in A.entries])


def adjugate(A: ACMatrix) -> ACMatrix:
    p = A.p
    if p == 1:
        return ACMatrix.identity(1)
    M = [list(r) for r in A.entries]
    cof = [[None] * p for _ in range(p)]
    for i in range(p):
        for j in range(p):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]
            d = _det(minor)
            cof[j][i] = d if (i + j) % 2 == 0 else -d
    return ACMatrix(cof)


@dataclass
class MatInversion:
    inverse: ACMatrix
    residual: float
    method: str


def _residual(A: ACMatrix, R: ACMatrix) -> float:
    return mat_norm(mat_mul(A, R) - ACMatrix.identity(A.p))


def mat_invert_report(A: ACMatrix, tol: float = 1e-9, max_support: int = 1 << 14) -> MatInversion:
    if A.p <= ADJUGATE_MAX_P:
        det = mat_det(A)
        dinv = wiener.invert(det, tol / 2, max_support)
        R = adjugate(A) * dinv
        return MatInversion(R, _residual(A, R), "adjugate")
    return _invert_by_sampling(A, tol, max_support)


def _invert_by_sampling(A: ACMatrix, tol: float, max_support: int) -> MatInversion:
    p = A.p
    lo, d = A.dense()
    width = d.shape[2] + abs(lo)
    size = max(wiener.MIN_GRID, wiener.next_pow2(8 * max(width, 1)))
    samples = ev_grid(A, size)
    dets = np.linalg.det(samples)
    if float(np.min(np.abs(dets))) <= wiener.INVERTIBILITY_THRESHOLD:
        raise NotInvertibleError(
            f"non-invertible: det(ev_z(A)) reaches {np.min(np.abs(dets)):.3g} on the grid")
    eye = ACMatrix.identity(p)
    best = None
    while True:
        pinv = np.linalg.inv(ev_grid(A, size))
        R = ACMatrix([[wiener.coefficients_from_grid(pinv[:, i, j]) for j in range(p)]
                      for i in range(p)])
        thr = tol / (4.0 * size * p * max(1.0, mat_norm(A)))
        R = _truncate(R, thr)
        res = _residual(A, R)
        for _ in range(20):
            if res <= tol:
                break
            cand = _truncate(mat_mul(R, eye * 2.0 - mat_mul(A, R)), thr)
            cres = _residual(A, cand)
            if cres >= res:
                break
            R, res = cand, cres
        if best is None or res < best.residual:
            best = MatInversion(R, res, "sampled-newton")
        if res <= tol:
            return best
        if 2 * size > max_support:
            raise wiener.ToleranceNotReachedError(
                f"tolerance {tol:g} not reached; best residual {best.residual:.3g}",
                best.inverse, best.residual)
        size *= 2


def _truncate(A: ACMatrix, thr: float) -> ACMatrix:
    return ACMatrix([[e.truncate(thr)[0] for e in r] for r in A.entries])


def mat_invert(A: ACMatrix, tol: float = 1e-9) -> ACMatrix:
    return mat_invert_report(A, tol).inverse


@dataclass
class SpectrumCloud:
    thetas: np.ndarray
    eigenvalues: np.ndarray  # shape (grid_size, p)
    failures: list

    @property
    def grid_size(self) -> int:
        return self.thetas.shape[0]

    @property
    def samples(self):
        return [(float(t), list(ev)) for t, ev in zip(self.thetas, self.eigenvalues)]

    def max_imag(self) -> float:
        return float(np.max(np.abs(self.eigenvalues.imag)))

    def csv_rows(self):
        for t, evs in zip(self.thetas, self.eigenvalues):
            for ev in evs:
                yield f"{t:.17g},{ev.real:.17g},{ev.imag:.17g}"


def spectrum(a: Ell1Elem, x0: int, grid_size: int = 1024) -> SpectrumCloud:
    """Eigenvalues of ev_z(psi(a)) on a uniform theta grid (sorted per point)."""
    A = psi(a, x0)
    thetas = grid_thetas(grid_size)
    mats = ev_grid(A, grid_size)
    evs = np.empty((grid_size, A.p), dtype=np.complex128)
    failures = []
    for g in range(grid_size):
        try:
            w = np.linalg.eigvals(mats[g])
        except np.linalg.LinAlgError as exc:
            failures.append((float(thetas[g]), str(exc)))
            w = np.full(A.p, np.nan + 0j)
        evs[g] = w[np.lexsort((w.imag, w.real))]
    return SpectrumCloud(thetas, evs, failures)


@dataclass
class HermitianReport:
    max_imag: float
    tol: float
    grid_size: int
    p: int
    structurally_hermitian: bool

    @property
    def passed(self) -> bool:
        return self.structurally_hermitian and self.max_imag <= self.tol

    def to_json(self) -> dict:
        return {"max_imag": self.max_imag, "tol": self.tol, "grid": self.grid_size,
                "p": self.p, "structurally_hermitian": self.structurally_hermitian,
                "passed": self.passed}


def hermitian_check(a: Ell1Elem, x0: int, grid_size: int = 1024,
                    tol: float = 1e-8) -> HermitianReport:
    """Real-spectrum check for a self-adjoint a, via a general (non-Hermitian) eigensolver."""
    if max_abs_diff(a.adjoint(), a) > 1e-12:
        raise DomainError("element is not self-adjoint")
    A = psi(a, x0)
    herm = mat_adjoint(A) == A
    cloud = spectrum(a, x0, grid_size)
    return HermitianReport(cloud.max_imag(), tol, grid_size, a.sys.size, herm)


def matrix_to_json(A: ACMatrix) -> dict:
    return {"p": A.p, "entries": [[wiener.series_to_json(e) for e in r] for r in A.entries]}


def matrix_from_json(data: dict) -> ACMatrix:
    return ACMatrix([[wiener.series_from_json(e) for e in r] for r in data["entries"]])


def orbit_blocks(sys: DynSys) -> list[tuple[DynSys, list[int]]]:
    """One single-orbit subsystem per orbit, with the global points it relabels."""
    blocks = []
    for cyc in sorted(sorted(c) for c in sys.cycles):
        local = {x: i for i, x in enumerate(cyc)}
        blocks.append((DynSys(tuple(local[sys.perm[x]] for x in cyc)), cyc))
    return blocks


def restrict(a: Ell1Elem, sub: DynSys, points: list[int]) -> Ell1Elem:
    """Component of a in the direct summand of an invariant set of points."""
    return Ell1Elem(sub, {k: f[points] for k, f in a.terms.items()})
