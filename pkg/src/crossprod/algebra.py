"""Finitely supported elements of the crossed product and their arithmetic.

An element is ``sum_k a_k delta^k`` with each coefficient ``a_k`` a complex
function on X, stored as a length-m numpy array. Multiplication is twisted
convolution

    (ab)_n = sum_k a_k * alpha^k(b_{n-k}),   alpha(f) = f o sigma^{-1},

and the involution is ``a*_n = conj(alpha^n(a_{-n}))``. Coefficients that are
exactly zero are dropped after every operation, so two elements built from
the same exact data compare equal structurally.
"""

from __future__ import annotations

from collections.abc import Mapping

import math

import numpy as np

from . import kernels
from .dynsys import DomainError, DynSys


def as_cfun(sys: DynSys, f) -> np.ndarray:
    arr = np.array(f, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != sys.size:
        raise DomainError(f"function has {arr.shape[0]} values, system has {sys.size} points")
    return arr


def alpha(sys: DynSys, f, n: int = 1) -> np.ndarray:
    """alpha^n(f) = f o sigma^{-n}."""
    f = as_cfun(sys, f)
    return f[sys.power(-n)]


def sup_norm(f) -> float:
    return float(np.max(np.abs(f))) if len(f) else 0.0


class Ell1Elem:
    """An element of c00(Sigma), keyed by degree."""

    __slots__ = ("sys", "_terms")

    def __init__(self, sys: DynSys, terms: Mapping[int, object] | None = None):
        self.sys = sys
        clean = {}
        for k, f in (terms or {}).items():
            arr = as_cfun(sys, f)
            if np.any(arr != 0):
                arr.setflags(write=False)
                clean[int(k)] = arr
        self._terms = dict(sorted(clean.items()))

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, sys: DynSys) -> Ell1Elem:
        return cls(sys)

    @classmethod
    def one(cls, sys: DynSys) -> Ell1Elem:
        return delta_power(sys, 0)

    @classmethod
    def from_dense(cls, sys: DynSys, lo: int, rows) -> Ell1Elem:
        block = np.array(rows, dtype=np.complex128)
        if block.ndim != 2 or block.shape[1] != sys.size:
            raise DomainError(f"dense block must have shape (K, {sys.size}), got {block.shape}")
        return cls._from_block(sys, lo, block)

    @classmethod
    def _from_block(cls, sys: DynSys, lo: int, block: np.ndarray) -> Ell1Elem:
        """Trusted fast path: block is an owned (K, m) complex128 array."""
        block.setflags(write=False)
        out = cls.__new__(cls)
        out.sys = sys
        out._terms = {lo + int(r): block[r] for r in np.flatnonzero(np.any(block != 0, axis=1))}
        return out

    # access ----------------------------------------------------------------

    @property
    def terms(self) -> dict[int, np.ndarray]:
        return dict(self._terms)

    @property
    def support(self) -> list[int]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, k: int) -> np.ndarray:
        f = self._terms.get(int(k))
        return f.copy() if f is not None else np.zeros(self.sys.size, dtype=np.complex128)

    def dense(self) -> tuple[int, np.ndarray]:
        """Lowest degree and the (K, m) block of coefficients from it upwards."""
        if not self._terms:
            return 0, np.zeros((0, self.sys.size), dtype=np.complex128)
        lo, hi = min(self._terms), max(self._terms)
        out = np.zeros((hi - lo + 1, self.sys.size), dtype=np.complex128)
        for k, f in self._terms.items():
            out[k - lo] = f
        return lo, out

    def radius(self) -> int:
        return max((abs(k) for k in self._terms), default=0)

    # arithmetic ------------------------------------------------------------

    def _check(self, other: Ell1Elem) -> None:
        if not isinstance(other, Ell1Elem):
            raise TypeError(f"expected Ell1Elem, got {type(other).__name__}")
        if other.sys != self.sys:
            raise DomainError("elements belong to different systems")

    def __add__(self, other: Ell1Elem) -> Ell1Elem:
        self._check(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        lo = min(next(iter(self._terms)), next(iter(other._terms)))
        hi = max(next(reversed(self._terms)), next(reversed(other._terms)))
        block = np.zeros((hi - lo + 1, self.sys.size), dtype=np.complex128)
        for terms in (self._terms, other._terms):
            for k, f in terms.items():
                block[k - lo] += f
        return Ell1Elem._from_block(self.sys, lo, block)

    def __neg__(self) -> Ell1Elem:
        lo, block = self.dense()
        return Ell1Elem._from_block(self.sys, lo, -block)

    def __sub__(self, other: Ell1Elem) -> Ell1Elem:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Ell1Elem):
            return multiply(self, other)
        return scale(other, self)

    def __rmul__(self, c):
        return scale(c, self)

    def __pow__(self, n: int) -> Ell1Elem:
        if n < 0:
            raise ValueError("negative powers need an inverse")
        out = Ell1Elem.one(self.sys)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ell1Elem):
            return NotImplemented
        return (
            self.sys == other.sys
            and self._terms.keys() == other._terms.keys()
            and all(np.array_equal(f, other._terms[k]) for k, f in self._terms.items())
        )

    __hash__ = None

    def __repr__(self) -> str:
        if not self._terms:
            return "Ell1Elem(0)"
        parts = [f"{np.round(f, 6).tolist()}*d^{k}" for k, f in self._terms.items()]
        return "Ell1Elem(" + " + ".join(parts) + ")"

    def adjoint(self) -> Ell1Elem:
        return adjoint(self)

    def norm(self) -> float:
        return norm(self)


def embed(sys: DynSys, f) -> Ell1Elem:
    """f as an element of degree 0."""
    return Ell1Elem(sys, {0: as_cfun(sys, f)})


def delta_power(sys: DynSys, n: int) -> Ell1Elem:
    return Ell1Elem(sys, {n: np.ones(sys.size, dtype=np.complex128)})


def monomial(sys: DynSys, f, k: int) -> Ell1Elem:
    """The element f * delta^k."""
    return Ell1Elem(sys, {k: as_cfun(sys, f)})


def add(a: Ell1Elem, b: Ell1Elem) -> Ell1Elem:
    return a + b


def scale(c, a: Ell1Elem) -> Ell1Elem:
    lo, block = a.dense()
    return Ell1Elem._from_block(a.sys, lo, complex(c) * block)


def coefficient(a: Ell1Elem, k: int) -> np.ndarray:
    return a.coefficient(k)


def multiply(a: Ell1Elem, b: Ell1Elem) -> Ell1Elem:
    a._check(b)
    sys = a.sys
    if a.is_zero() or b.is_zero():
        return Ell1Elem.zero(sys)
    lo_a, da = a.dense()
    lo_b, db = b.dense()
    idx = np.stack([sys.power(-(lo_a + r)) for r in range(da.shape[0])])
    return Ell1Elem._from_block(sys, lo_a + lo_b, kernels.twisted_conv(da, db, idx))


def adjoint(a: Ell1Elem) -> Ell1Elem:
    """a*_n = conj(alpha^n(a_{-n})), i.e. a_k goes to degree -k as conj(a_k o sigma^k)."""
    sys = a.sys
    if not a._terms:
        return a
    lo, block = a.dense()
    K = block.shape[0]
    rows = np.arange(K)[:, None]
    # row r holds degree lo + r; it lands in degree -(lo + r), i.e. reversed order
    idx = np.stack([sys.power(lo + r) for r in range(K)])
    out = np.conj(block[rows, idx])[::-1].copy()
    return Ell1Elem._from_block(sys, -(lo + K - 1), out)


def norm(a: Ell1Elem) -> float:
    # correctly rounded, so norm comparisons against other sums are exact
    if not a._terms:
        return 0.0
    return math.fsum(np.abs(np.stack(list(a._terms.values()))).max(axis=1).tolist())


def e_project(a: Ell1Elem) -> np.ndarray:
    """The degree-0 coefficient."""
    return a.coefficient(0)


def max_abs_diff(a: Ell1Elem, b: Ell1Elem) -> float:
    """Largest pointwise coefficient difference (0 if structurally equal)."""
    a._check(b)
    diff = a - b
    return max((sup_norm(f) for f in diff._terms.values()), default=0.0)


def random_element(sys: DynSys, rng: np.random.Generator, radius: int = 4,
                   density: float = 0.7) -> Ell1Elem:
    """Random element with support in [-radius, radius] and |coefficients| <= 1.

    Each coefficient value is kept with probability ``density`` so sparse
    support patterns (and hence non-trivial commutant structure) occur.
    """
    width = 2 * radius + 1
    mod = rng.uniform(0.0, 1.0, size=(width, sys.size))
    phase = rng.uniform(0.0, 2 * np.pi, size=(width, sys.size))
    keep = rng.uniform(size=(width, sys.size)) < density
    vals = np.where(keep, mod * np.exp(1j * phase), 0.0)
    return Ell1Elem.from_dense(sys, -radius, vals)


def random_self_adjoint(sys: DynSys, rng: np.random.Generator, radius: int = 4) -> Ell1Elem:
    b = random_element(sys, rng, radius=radius)
    return b + b.adjoint()


# serialization ---------------------------------------------------------------

def element_to_json(a: Ell1Elem) -> dict:
    return {
        "dim": a.sys.size,
        "terms": [
            {"k": k, "re": [float(v) for v in f.real], "im": [float(v) for v in f.imag]}
            for k, f in a._terms.items()
        ],
    }


def element_from_json(sys: DynSys, data: dict) -> Ell1Elem:
    if int(data.get("dim", -1)) != sys.size:
        raise DomainError(f"element dim {data.get('dim')} does not match system size {sys.size}")
    terms = {}
    last = None
    for t in data.get("terms", []):
        k = int(t["k"])
        if last is not None and k <= last:
            raise DomainError("element terms must be sorted by k without duplicates")
        last = k
        re = np.asarray(t["re"], dtype=float)
        im = np.asarray(t.get("im", [0.0] * len(re)), dtype=float)
        if re.shape != (sys.size,) or im.shape != (sys.size,):
            raise DomainError(f"term k={k} must carry {sys.size} values")
        terms[k] = re + 1j * im
    return Ell1Elem(sys, terms)
