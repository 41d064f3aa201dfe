import numpy as np
import pytest

from _systems import thermal_example
from lindblad_osc.oracle import lindblad_fock_trajectory

FOCK_TIMES = (1.0, 5.0, 20.0)
FOCK_START = (1.0, 0.0)
# filled by test_acceptance, echoed at the end of the run
ACCEPTANCE_VERDICTS = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_VERDICTS):
            terminalreporter.write_line(ACCEPTANCE_VERDICTS[number])


@pytest.fixture(scope="session")
def thermal():
    return thermal_example()


@pytest.fixture(scope="session")
def thermal_fock_snapshots(thermal):
    """Number-basis evolution of the thermal example, shared because it takes ~20 s."""
    params, d = thermal
    snaps = lindblad_fock_trajectory(params, d, *FOCK_START, FOCK_TIMES, dim=60)
    return {s.t: s for s in snaps}


@pytest.fixture
def rng():
    return np.random.default_rng(7)
