import numpy as np
import pytest

from crossprod.dynsys import DynSys, bundled, bundled_systems

SYSTEM_NAMES = sorted(bundled_systems())


@pytest.fixture(params=SYSTEM_NAMES)
def system(request) -> DynSys:
    return bundled(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def swap():
    return DynSys((1, 0))


@pytest.fixture
def three_cycle():
    return DynSys((1, 2, 0))


@pytest.fixture
def mixed():
    """0 -> 0 and the 2-cycle 1 <-> 2."""
    return DynSys((0, 2, 1))


@pytest.fixture
def one_point():
    return DynSys((0,))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {detail}")
