import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossprod.dynsys import (DomainError, DynSys, PointSet, analyze, aper_points, bundled,
                              fix_points, orbit, per_points)

perms = st.integers(1, 7).flatmap(lambda m: st.permutations(range(m)))


def test_fix_points_examples(swap, mixed, three_cycle):
    assert fix_points(swap, 1) == set()
    assert fix_points(swap, 0) == {0, 1}
    assert fix_points(swap, 2) == {0, 1}
    assert fix_points(three_cycle, 3) == {0, 1, 2}
    assert fix_points(mixed, 1) == {0}


def test_per_points_examples(mixed, three_cycle):
    assert per_points(mixed, 1) == {0}
    assert per_points(mixed, 2) == {1, 2}
    assert per_points(three_cycle, 1) == set()
    with pytest.raises(DomainError):
        per_points(mixed, 0)


def test_orbit_examples(three_cycle, mixed):
    assert orbit(three_cycle, 0) == {0, 1, 2}
    assert orbit(mixed, 1) == {1, 2}
    assert orbit(DynSys((0, 1)), 1) == {1}
    with pytest.raises(DomainError):
        orbit(mixed, 3)


def test_analyze_examples(three_cycle, mixed, one_point):
    r = analyze(three_cycle)
    assert r.is_minimal and r.is_transitive and not r.is_top_free
    assert r.witnesses["top_free"] == {"n": 3, "fix_n": [0, 1, 2]}
    r = analyze(mixed)
    assert not r.is_minimal and not r.is_transitive
    assert r.orbits == [[0], [1, 2]]
    r = analyze(one_point)
    assert r.is_minimal and not r.is_free


@pytest.mark.parametrize("perm", [(0, 0), (1,), (2, 0), (-1, 0), (0, 1.5)])
def test_rejects_non_bijections(perm):
    with pytest.raises((DomainError, TypeError)):
        DynSys(perm)


def test_power_and_inverse(three_cycle):
    assert three_cycle.power(1).tolist() == [1, 2, 0]
    assert three_cycle.power(-1).tolist() == [2, 0, 1]
    assert three_cycle.power(3).tolist() == [0, 1, 2]
    assert three_cycle.apply(0, -4) == 2


@settings(max_examples=60, deadline=None)
@given(perms, st.integers(-20, 20), st.integers(-20, 20))
def test_power_is_a_group_action(perm, n, k):
    s = DynSys(tuple(perm))
    assert np.array_equal(s.power(n)[s.power(k)], s.power(n + k))


@settings(max_examples=60, deadline=None)
@given(perms)
def test_orbits_partition_and_periods(perm):
    s = DynSys(tuple(perm))
    seen = set()
    for x in range(s.size):
        o = orbit(s, x)
        assert x in o and len(o) == s.periods[x]
        seen |= o.members
        assert fix_points(s, s.periods[x]).members >= o.members
    assert seen == set(range(s.size))
    assert aper_points(s) == set()


def test_pointset_ops():
    a, b = PointSet({0, 1}, 4), PointSet({1, 3}, 4)
    assert (a | b) == {0, 1, 3}
    assert (a & b) == {1}
    assert a.complement() == {2, 3}
    assert a.indicator().tolist() == [1, 1, 0, 0]
    assert not a.is_full and (a | a.complement()).is_full
    with pytest.raises(DomainError):
        PointSet({4}, 4)


def test_json_round_trip(tmp_path, system):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(system.to_json()))
    assert DynSys.load(p) == system
    json.dumps(analyze(system).to_json())


def test_bundled_lookup():
    assert bundled("swap") == DynSys((1, 0))
    with pytest.raises(DomainError):
        bundled("nope")


def test_report_witnesses_for_disconnected():
    r = analyze(DynSys((0, 1)))
    assert r.witnesses["transitive"] == {"U": [0], "V": [1]}
    assert r.witnesses["free"] == {"periodic_point": 0, "period": 1}


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_top_free_never_holds_on_finite_sets(m):
    for perm in itertools.permutations(range(m)):
        assert not analyze(DynSys(perm)).is_top_free
