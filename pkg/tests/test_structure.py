import numpy as np
import pytest

from crossprod.algebra import Ell1Elem, delta_power, embed, max_abs_diff, random_element, random_self_adjoint
from crossprod.dynsys import DomainError, DynSys
from crossprod.representations import pi_finite
from crossprod.structure import (ACMatrix, adjugate, ev_grid, ev_z, hermitian_check, mat_adjoint,
                                 mat_det, mat_invert, mat_invert_report, mat_mul, mat_norm,
                                 matrix_from_json, matrix_to_json, orbit_blocks, psi, psi_inverse,
                                 restrict, spectrum)
from crossprod.wiener import FourierSeries as F, NotInvertibleError

z = F.monomial(1)
CYCLES = {p: DynSys(tuple((i + 1) % p for i in range(p))) for p in (1, 2, 3, 5)}


def _close(A, B, tol=1e-12):
    return mat_norm(A - B) <= tol


def test_psi_examples(swap):
    assert psi(embed(swap, [3, 4]), 0) == ACMatrix.diagonal([F.constant(3), F.constant(4)])
    assert psi(delta_power(swap, 1), 0) == ACMatrix([[0, z], [1, 0]])
    assert psi(delta_power(swap, 2), 0) == ACMatrix.diagonal([z, z])


def test_psi_inverse_examples(swap):
    assert psi_inverse(ACMatrix.diagonal([z, z]), swap, 0) == delta_power(swap, 2)
    assert psi_inverse(ACMatrix.zeros(2), swap, 0).is_zero()
    assert psi_inverse(ACMatrix.identity(2), swap, 0) == Ell1Elem.one(swap)
    with pytest.raises(DomainError):
        psi_inverse(ACMatrix.identity(3), swap, 0)


def test_psi_preconditions(mixed, swap):
    with pytest.raises(DomainError):
        psi(delta_power(mixed, 1), 0)
    with pytest.raises(DomainError):
        psi(delta_power(swap, 1), 2)


@pytest.mark.parametrize("p", sorted(CYCLES))
def test_psi_is_star_isomorphism(p):
    s = CYCLES[p]
    rng = np.random.default_rng(p)
    D = psi(delta_power(s, 1), 0)
    assert D ** p == ACMatrix.diagonal([z] * p)
    for _ in range(15):
        a, b = random_element(s, rng), random_element(s, rng)
        A, B = psi(a, 0), psi(b, 0)
        assert _close(psi(a * b, 0), mat_mul(A, B))
        assert psi(a.adjoint(), 0) == mat_adjoint(A)
        assert psi(a + b, 0) == A + B
        assert psi_inverse(A, s, 0) == a
        assert mat_norm(A) <= a.norm() <= p * p * mat_norm(A)
        for th in np.linspace(0, 2 * np.pi, 5):
            assert np.max(np.abs(ev_z(A, th) - pi_finite(s, 0, p, th, a).entries)) <= 1e-12


@pytest.mark.parametrize("x0", [0, 1, 2])
def test_psi_base_point(three_cycle, x0):
    a = random_element(three_cycle, np.random.default_rng(0))
    assert psi_inverse(psi(a, x0), three_cycle, x0) == a


def test_ev_grid_matches_ev_z(three_cycle, rng):
    A = psi(random_element(three_cycle, rng), 0)
    g = ev_grid(A, 64)
    for j in (0, 5, 63):
        assert np.allclose(g[j], ev_z(A, 2 * np.pi * j / 64), atol=1e-12)


def test_mat_invert_examples(swap):
    D = psi(delta_power(swap, 1), 0)
    assert _close(mat_invert(D), ACMatrix([[0, 1], [z.adjoint(), 0]]))
    assert mat_invert(ACMatrix.identity(3)) == ACMatrix.identity(3)
    with pytest.raises(NotInvertibleError, match="non-invertible"):
        mat_invert(D - ACMatrix.identity(2))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mat_invert_random(p):
    s = CYCLES[p]
    rng = np.random.default_rng(10 + p)
    a = random_element(s, rng, radius=2) * 0.1 + Ell1Elem.one(s)
    rep = mat_invert_report(psi(a, 0), tol=1e-9)
    assert rep.residual <= 1e-9
    assert rep.method == ("adjugate" if p <= 4 else "sampled-newton")
    assert _close(mat_mul(psi(a, 0), rep.inverse), ACMatrix.identity(p), 1e-9)


def test_adjugate_identity(three_cycle, rng):
    A = psi(random_element(three_cycle, rng, radius=1), 0)
    det = mat_det(A)
    assert _close(mat_mul(A, adjugate(A)), ACMatrix.diagonal([det] * 3), 1e-12)


def test_spectrum_examples(one_point, swap):
    a = delta_power(one_point, 1) + delta_power(one_point, -1)
    cloud = spectrum(a, 0, 256)
    assert np.allclose(cloud.eigenvalues[:, 0], 2 * np.cos(cloud.thetas), atol=1e-13)
    assert np.all(spectrum(Ell1Elem.one(swap), 0, 64).eigenvalues == 1)
    ev = spectrum(embed(swap, [3.0, -1.0]), 0, 64).eigenvalues
    assert np.all(ev == np.array([-1.0, 3.0]))
    rows = list(spectrum(a, 0, 64).csv_rows())
    assert len(rows) == 64 and rows[0] == "0,2,0"


def test_hermitian_examples(one_point, swap):
    a = delta_power(one_point, 1) + delta_power(one_point, -1)
    rep = hermitian_check(a, 0, 1024)
    assert rep.passed and rep.max_imag <= 1e-12
    assert hermitian_check(embed(swap, [1.0, 2.0]), 0, 64).max_imag == 0
    with pytest.raises(DomainError):
        hermitian_check(delta_power(swap, 1), 0)


def test_hermitian_random_p3():
    s = CYCLES[3]
    rng = np.random.default_rng(0)
    for _ in range(5):
        rep = hermitian_check(random_self_adjoint(s, rng), 0, 1024)
        assert rep.passed and rep.structurally_hermitian and rep.max_imag <= 1e-8


def test_matrix_json_round_trip(three_cycle, rng):
    A = psi(random_element(three_cycle, rng), 0)
    assert matrix_from_json(matrix_to_json(A)) == A


def test_orbit_blocks(mixed, rng):
    blocks = orbit_blocks(mixed)
    assert [pts for _, pts in blocks] == [[0], [1, 2]]
    a, b = random_element(mixed, rng), random_element(mixed, rng)
    for sub, pts in blocks:
        assert max_abs_diff(restrict(a * b, sub, pts), restrict(a, sub, pts) * restrict(b, sub, pts)) <= 1e-12
