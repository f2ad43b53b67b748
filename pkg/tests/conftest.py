import math

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ns_pi():
    from qgatelab.gate_lab import synthesize_ns

    return synthesize_ns(math.pi, seeds=32, seed=0)


@pytest.fixture(scope="session")
def sign_flip():
    from qgatelab.gate_lab import synthesize_sign_flip_N

    cache = {}

    def get(N):
        if N not in cache:
            cache[N] = synthesize_sign_flip_N(N, seeds=32, seed=0)
        return cache[N]

    return get


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion; lines are repeated in the terminal summary."""

    def record(number: int, passed: bool, detail: str) -> bool:
        line = f"CRITERION {number:2d}: {'PASS' if passed else 'FAIL'} | {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
