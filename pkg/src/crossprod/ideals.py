"""Constructive ideal machinery on finite systems.

On a discrete space the Urysohn-type choices collapse to indicators: the
neighbourhood is ``U = {x0}`` and the cut-off function is the indicator of
``x0``. Unimodular twists ``g`` satisfy ``g(x) conj(g(sigma^{-k0-j n0} x)) = lambda``
on U, and averaging ``1/2 (g a conj(g) + conj(g) a g)`` multiplies the k-th
coefficient by ``Re(g * conj(g o sigma^{-k}))``, which vanishes where the
twist equals ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Ell1Elem, as_cfun, delta_power, e_project, embed
from .dynsys import DomainError, DynSys, PointSet, fix_points, orbit

UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class UnimodularWitness:
    U: PointSet
    g: np.ndarray
    lam: complex
    k0: int
    n0: int

    def residual(self, sys: DynSys) -> float:
        """Max deviation from |g| = 1, g = 1 on U and the twist identity on U."""
        worst = float(np.max(np.abs(np.abs(self.g) - 1.0)))
        reps = range(max(sys.order, 1)) if self.n0 else range(1)
        for x in self.U:
            worst = max(worst, abs(self.g[x] - 1.0))
            for j in reps:
                y = sys.apply(x, -self.k0 - j * self.n0)
                worst = max(worst, abs(self.g[x] * np.conj(self.g[y]) - self.lam))
        return worst


@dataclass(frozen=True)
class KillerKit:
    U: PointSet
    thetas: tuple[np.ndarray, ...]
    f: np.ndarray
    n0: int
    klist: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.klist)


def _check_fix(sys: DynSys, x0: int, n0: int) -> None:
    if n0 < 0:
        raise DomainError(f"n0 must be >= 0, got {n0}")
    if n0 >= 1 and x0 not in fix_points(sys, n0):
        raise DomainError(f"x0={x0} is not in Fix_{n0}")


def build_unimodular(sys: DynSys, x0: int, k0: int, n0: int = 0,
                     lam: complex = 1j) -> UnimodularWitness:
    sys.check_point(x0)
    _check_fix(sys, x0, n0)
    if sys.apply(x0, k0) == x0:
        raise DomainError(f"sigma^{k0}(x0) = x0 for x0={x0}; no twist can separate them")
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > UNIMODULAR_TOL:
        raise DomainError(f"lambda must be unimodular, got {lam}")
    g = np.ones(sys.size, dtype=np.complex128)
    # x0 in Fix_{n0}, so every sigma^{-k0-j n0}(x0) is the single point sigma^{-k0}(x0)
    for j in range(sys.order if n0 else 1):
        g[sys.apply(x0, -k0 - j * n0)] = np.conj(lam)
    g.setflags(write=False)
    return UnimodularWitness(PointSet({x0}, sys.size), g, lam, k0, n0)


def _check_unimodular(g: np.ndarray) -> None:
    dev = float(np.max(np.abs(np.abs(g) - 1.0)))
    if dev > UNIMODULAR_TOL:
        raise DomainError(f"g is not unimodular (max ||g|-1| = {dev:.3g})")


def average_conjugate(a: Ell1Elem, g) -> Ell1Elem:
    """1/2 (g a conj(g) + conj(g) a g), computed in the algebra."""
    g = as_cfun(a.sys, g)
    _check_unimodular(g)
    G, Gb = embed(a.sys, g), embed(a.sys, np.conj(g))
    return 0.5 * (G * a * Gb + Gb * a * G)


def average_conjugate_closed_form(a: Ell1Elem, g) -> Ell1Elem:
    """Coefficientwise form: a_k times Re(g * conj(g o sigma^{-k}))."""
    g = as_cfun(a.sys, g)
    sys = a.sys
    return Ell1Elem(sys, {k: f * np.real(g * np.conj(g[sys.power(-k)]))
                          for k, f in a.terms.items()})


def averaged_sum(a: Ell1Elem, thetas, f=None) -> Ell1Elem:
    """Direct evaluation of 1/L sum_l f theta_l a conj(theta_l)."""
    sys = a.sys
    total = Ell1Elem.zero(sys)
    for th in thetas:
        total = total + embed(sys, th) * a * embed(sys, np.conj(th))
    total = (1.0 / len(thetas)) * total
    if f is not None:
        total = embed(sys, f) * total
    return total


def kill_coefficients(a: Ell1Elem, x0: int, n0: int, klist,
                      lam: complex = 1j) -> tuple[KillerKit, Ell1Elem]:
    """Average a so that degrees k + j*n0 (k in klist) vanish near x0, then cut off at x0.

    One averaging pass per listed degree; the theta list doubles each pass
    (``g*theta`` followed by ``conj(g)*theta``).
    """
    sys = a.sys
    sys.check_point(x0)
    _check_fix(sys, x0, n0)
    klist = tuple(int(k) for k in klist)
    for k in klist:
        if sys.apply(x0, k) == x0:
            raise DomainError(f"sigma^{k}(x0) = x0 for x0={x0}; degree {k} cannot be killed")
    if e_project(a)[x0] == 0:
        raise DomainError(f"E(a) vanishes at x0={x0}")
    thetas = [np.ones(sys.size, dtype=np.complex128)]
    current = a
    for k in klist:
        g = build_unimodular(sys, x0, k, n0, lam).g
        current = average_conjugate(current, g)
        thetas = [g * t for t in thetas] + [np.conj(g) * t for t in thetas]
    U = PointSet({x0}, sys.size)
    f = U.indicator()
    kit = KillerKit(U, tuple(thetas), f, n0, klist)
    return kit, embed(sys, f) * current


def killer_report(a: Ell1Elem, a_prime: Ell1Elem, kit: KillerKit) -> dict:
    """Numeric form of the three conclusions for a kit built by kill_coefficients."""
    sys = a.sys
    inside = sorted(kit.U.members)
    outside = kit.U.complement().to_list()
    killed = 0.0
    for k in kit.klist:
        degs = {d for d in a_prime.support if kit.n0 and (d - k) % kit.n0 == 0} if kit.n0 else {k}
        degs.add(k)
        for d in degs:
            killed = max(killed, float(np.max(np.abs(a_prime.coefficient(d)[inside]), initial=0)))
    leak = max((float(np.max(np.abs(c[outside]), initial=0)) for c in a_prime.terms.values()),
               default=0.0)
    return {
        "degree0_exact": bool(np.array_equal(e_project(a_prime), kit.f * e_project(a))),
        "degree0_nonzero": bool(np.any(e_project(a_prime) != 0)),
        "max_killed": killed,
        "max_outside_U": leak,
        "thetas": len(kit.thetas),
        "thetas_unimodular": max(float(np.max(np.abs(np.abs(t) - 1))) for t in kit.thetas),
        "thetas_one_on_U": max(float(np.max(np.abs(t[inside] - 1))) for t in kit.thetas),
    }


def principal_to_commutant(a: Ell1Elem, x0: int, k0: int, lam: complex = 1j) -> Ell1Elem:
    """An element of the principal ideal of a lying in C(X)' with E(b)(x0) = a_{k0}(x0)."""
    sys = a.sys
    sys.check_point(x0)
    if a.coefficient(k0)[x0] == 0:
        raise DomainError(f"coefficient a_{k0} vanishes at x0={x0}")
    n0 = sys.periods[x0]
    shifted = a * delta_power(sys, -k0)
    if n0 == 1:
        return embed(sys, PointSet({x0}, sys.size).indicator()) * shifted
    _, b = kill_coefficients(shifted, x0, n0, range(1, n0), lam)
    return b


@dataclass(frozen=True)
class VanishingIdeal:
    """I(S): elements all of whose coefficients vanish on the invariant set S."""

    sys: DynSys
    S: PointSet

    def __post_init__(self):
        image = {self.sys.perm[x] for x in self.S}
        if image != set(self.S.members):
            raise DomainError(f"S={self.S.to_list()} is not invariant under sigma")

    def contains(self, a: Ell1Elem) -> bool:
        cols = self.S.to_list()
        return all(not np.any(f[cols] != 0) for f in a.terms.values())

    __contains__ = contains

    def project(self, a: Ell1Elem) -> Ell1Elem:
        """The member obtained by zeroing every coefficient on S."""
        mask = self.S.indicator().real.astype(bool)
        return Ell1Elem(a.sys, {k: np.where(mask, 0.0, f) for k, f in a.terms.items()})

    def intersect(self, other: VanishingIdeal) -> VanishingIdeal:
        if other.sys != self.sys:
            raise DomainError("ideals belong to different systems")
        return VanishingIdeal(self.sys, self.S | other.S)

    @property
    def is_zero_ideal(self) -> bool:
        return self.S.is_full

    @property
    def is_proper(self) -> bool:
        return len(self.S) > 0

    def to_json(self) -> dict:
        return {"S": self.S.to_list(), "zero_ideal": self.is_zero_ideal,
                "proper": self.is_proper}


def vanishing_ideal(sys: DynSys, orbits) -> VanishingIdeal:
    """I(S) for S the union of the selected orbits (indices into the sorted orbit list)."""
    table = sorted(sorted(c) for c in sys.cycles)
    pts = set()
    for i in orbits:
        if not 0 <= i < len(table):
            raise DomainError(f"orbit index {i} out of range ({len(table)} orbits)")
        pts.update(table[i])
    return VanishingIdeal(sys, PointSet(pts, sys.size))


def vanishing_ideal_of_points(sys: DynSys, points) -> VanishingIdeal:
    pts = set()
    for x in points:
        pts |= orbit(sys, x).members
    return VanishingIdeal(sys, PointSet(pts, sys.size))
