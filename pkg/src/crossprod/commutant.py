"""The commutant C(X)' of C(X): elements whose k-th coefficient lives on Fix_k."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Ell1Elem, embed, max_abs_diff
from .dynsys import DynSys, PointSet, fix_points


@dataclass(frozen=True)
class CommutantCheck:
    in_commutant: bool
    witness: tuple[int, int] | None = None  # (degree k, point x) with a_k(x) != 0, x not in Fix_k

    def __bool__(self) -> bool:
        return self.in_commutant

    def to_json(self) -> dict:
        out = {"in_commutant": self.in_commutant}
        if self.witness is not None:
            out["witness"] = {"k": self.witness[0], "x": self.witness[1]}
        return out


def commutant_mask(sys: DynSys, degrees) -> dict[int, PointSet]:
    return {int(k): fix_points(sys, k) for k in degrees}


def _outside_fix(sys: DynSys, k: int) -> np.ndarray:
    return sys.power(k) != np.arange(sys.size)


def in_commutant(a: Ell1Elem) -> CommutantCheck:
    """Structural membership test; the first violation found is returned as witness."""
    for k, f in a.terms.items():
        bad = np.flatnonzero((f != 0) & _outside_fix(a.sys, k))
        if bad.size:
            return CommutantCheck(False, (k, int(bad[0])))
    return CommutantCheck(True)


def point_indicator(sys: DynSys, x: int) -> Ell1Elem:
    e = np.zeros(sys.size, dtype=np.complex128)
    e[x] = 1.0
    return embed(sys, e)


def commutes_with_cx_oracle(a: Ell1Elem, tol: float = 1e-12) -> bool:
    """Brute force: a commutes with every point indicator (these span C(X))."""
    for x in range(a.sys.size):
        e = point_indicator(a.sys, x)
        if max_abs_diff(a * e, e * a) > tol:
            return False
    return True


def commutator_witness(a: Ell1Elem) -> tuple[int, float] | None:
    """A point x whose indicator e_x fails to commute with a, with ||a e_x - e_x a||."""
    for x in range(a.sys.size):
        e = point_indicator(a.sys, x)
        gap = (a * e - e * a).norm()
        if gap > 0:
            return x, gap
    return None


def commutant_component(a: Ell1Elem) -> Ell1Elem:
    """Zero every a_k(x) with x outside Fix_k."""
    return Ell1Elem(
        a.sys, {k: np.where(_outside_fix(a.sys, k), 0.0, f) for k, f in a.terms.items()}
    )
