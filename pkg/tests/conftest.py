import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def sweep_cases():
    from spectilde.instances import sweep_instances
    from spectilde.verify import Case

    return [Case(inst) for inst in sweep_instances()]


@pytest.fixture(scope="session")
def sweep_result(sweep_cases):
    import time

    from spectilde import kernels
    from spectilde.algebra import make_ring, multiplicative_set_masks
    from spectilde.verify import run_sweep

    # compile the numba kernels before timing
    multiplicative_set_masks(make_ring(2))
    start = time.perf_counter()
    result = run_sweep(sweep_cases)
    result.seconds["total"] = time.perf_counter() - start
    result.backend = kernels.BACKEND
    return result


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
