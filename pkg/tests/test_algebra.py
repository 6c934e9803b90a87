import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossprod.algebra import (Ell1Elem, adjoint, alpha, delta_power, e_project, element_from_json,
                               element_to_json, embed, max_abs_diff, monomial, norm,
                               random_element, random_self_adjoint)
from crossprod.dynsys import DomainError, DynSys

TOL = 1e-12


def test_alpha_examples(swap, three_cycle, system):
    assert alpha(swap, [3, 4]).tolist() == [4, 3]
    assert alpha(three_cycle, [1, 2, 3]).tolist() == [3, 1, 2]
    f = np.arange(system.size) + 1.0
    assert np.array_equal(alpha(system, f, 0), f)
    with pytest.raises(DomainError):
        alpha(swap, [1, 2, 3])


def test_multiply_example(swap):
    a, b = monomial(swap, [1, 2], 1), monomial(swap, [3, 4], 1)
    assert a * b == monomial(swap, [4, 6], 2)


def test_unit(system, rng):
    a = random_element(system, rng)
    one = Ell1Elem.one(system)
    assert one * a == a and a * one == a


def test_covariance_example(swap):
    f = embed(swap, [3, 4])
    got = delta_power(swap, 1) * f * delta_power(swap, -1)
    assert got == embed(swap, [4, 3])


def test_adjoint_examples(swap, system):
    a = monomial(swap, [1, 1j], 1)
    assert adjoint(a) == monomial(swap, [-1j, 1], -1)
    assert adjoint(delta_power(system, 1)) == delta_power(system, -1)
    f = embed(system, np.linspace(-1, 1, system.size))
    assert adjoint(f) == f


def test_norm_examples(swap, system):
    assert norm(embed(swap, [1, 2]) + monomial(swap, [3, 4], 1)) == 6
    for n in (-3, 0, 5):
        assert norm(delta_power(system, n)) == 1
    assert norm(Ell1Elem.zero(system)) == 0


def test_e_examples(swap, system):
    a = embed(swap, [1, 2]) + monomial(swap, [3, 4], 1)
    assert e_project(a).tolist() == [1, 2]
    assert not np.any(e_project(delta_power(system, 2)))
    b = monomial(swap, [1, 1j], 1)
    assert np.allclose(e_project(b.adjoint() * b), [1, 1], atol=0)


def test_system_mismatch(swap, three_cycle):
    with pytest.raises(DomainError):
        delta_power(swap, 1) * delta_power(three_cycle, 1)


def test_canonical_form_drops_zero_terms(swap):
    a = monomial(swap, [1, 2], 1)
    assert (a - a).is_zero()
    assert Ell1Elem(swap, {3: [0, 0]}).support == []


def _triples(system, seed, count=20):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield tuple(random_element(system, rng, radius=3) for _ in range(3))


def test_ring_axioms(system):
    for a, b, c in _triples(system, 7):
        assert max_abs_diff((a * b) * c, a * (b * c)) <= TOL
        assert max_abs_diff(a * (b + c), a * b + a * c) <= TOL
        assert max_abs_diff((a + b) * c, a * c + b * c) <= TOL


def test_star_axioms(system):
    for a, b, _ in _triples(system, 8):
        assert a.adjoint().adjoint() == a
        assert max_abs_diff((a * b).adjoint(), b.adjoint() * a.adjoint()) <= TOL
        assert max_abs_diff((2j * a).adjoint(), -2j * a.adjoint()) <= TOL
        assert a.adjoint().norm() == a.norm()
        assert (a * b).norm() <= a.norm() * b.norm() + TOL


def test_covariance_random(system, rng):
    d, dinv = delta_power(system, 1), delta_power(system, -1)
    for n in range(-2, 3):
        f = rng.normal(size=system.size) + 1j * rng.normal(size=system.size)
        dn, dm = delta_power(system, n), delta_power(system, -n)
        assert max_abs_diff(dn * embed(system, f) * dm, embed(system, alpha(system, f, n))) <= TOL
    assert d * dinv == Ell1Elem.one(system)


def test_expectation_properties(system, rng):
    for _ in range(20):
        a = random_element(system, rng)
        f = rng.normal(size=system.size) + 1j * rng.normal(size=system.size)
        g = rng.normal(size=system.size) + 1j * rng.normal(size=system.size)
        assert np.max(np.abs(e_project(a))) <= a.norm()
        lhs = e_project(embed(system, f) * a * embed(system, g))
        assert np.max(np.abs(lhs - f * e_project(a) * g)) <= TOL
        # E(a* a)(x) = sum_k |a_k(sigma^k x)|^2 is real and positive
        eaa = e_project(a.adjoint() * a)
        ref = sum(np.abs(c[system.power(k)]) ** 2 for k, c in a.terms.items())
        assert np.allclose(eaa, ref, atol=TOL)


def test_random_self_adjoint(system, rng):
    a = random_self_adjoint(system, rng)
    assert max_abs_diff(a.adjoint(), a) <= TOL


def test_pow(three_cycle):
    d = delta_power(three_cycle, 1)
    assert d ** 3 == delta_power(three_cycle, 3)
    with pytest.raises(ValueError):
        d ** -1


coeffs = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.integers(-5, 5), st.lists(coeffs, min_size=3, max_size=3), max_size=5))
def test_json_round_trip(terms):
    s = DynSys((1, 2, 0))
    a = Ell1Elem(s, terms)
    assert element_from_json(s, element_to_json(a)) == a


@pytest.mark.parametrize("bad", [
    {"dim": 2, "terms": []},
    {"dim": 3, "terms": [{"k": 1, "re": [1, 2, 3], "im": [0, 0, 0]},
                         {"k": 1, "re": [1, 2, 3], "im": [0, 0, 0]}]},
    {"dim": 3, "terms": [{"k": 0, "re": [1, 2], "im": [0, 0]}]},
])
def test_json_rejects_bad_elements(bad):
    with pytest.raises(DomainError):
        element_from_json(DynSys((1, 2, 0)), bad)
