"""Workbench for the l1 crossed product of a finite dynamical system."""

from .algebra import Ell1Elem, adjoint, alpha, delta_power, e_project, embed, multiply, norm
from .dynsys import DomainError, DynSys, PointSet, analyze, bundled, fix_points, orbit, per_points
from .kernels import BACKEND
from .wiener import FourierSeries

__all__ = [
    "BACKEND",
    "DomainError",
    "DynSys",
    "Ell1Elem",
    "FourierSeries",
    "PointSet",
    "adjoint",
    "alpha",
    "analyze",
    "bundled",
    "delta_power",
    "e_project",
    "embed",
    "fix_points",
    "multiply",
    "norm",
    "orbit",
    "per_points",
]
