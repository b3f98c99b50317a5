import math

import pytest

from lyapspec import BranchSpec, PressureEvaluator, validate_system

ACCEPTANCE_LINES: list[str] = []

LOG2, LOG3 = math.log(2.0), math.log(3.0)
GOLDEN_D = -math.log2((math.sqrt(5.0) - 1.0) / 2.0)


def make_cantor():
    return validate_system([BranchSpec.affine(0, 1 / 3), BranchSpec.affine(2 / 3, 1)])


def make_s24():
    return validate_system([BranchSpec.affine(0, 0.5), BranchSpec.affine(0.75, 1)])


def make_quad():
    return validate_system(
        [BranchSpec.quadratic(0, 0.35, 0.3), BranchSpec.quadratic(0.6, 0.95, -0.2)]
    )


@pytest.fixture(scope="session")
def cantor():
    return make_cantor()


@pytest.fixture(scope="session")
def s24():
    return make_s24()


@pytest.fixture(scope="session")
def quad():
    return make_quad()


@pytest.fixture(scope="session")
def P_cantor(cantor):
    return PressureEvaluator(cantor)


@pytest.fixture(scope="session")
def P24(s24):
    return PressureEvaluator(s24)


@pytest.fixture(scope="session")
def Pquad(quad):
    return PressureEvaluator(quad, "collocation", nodes=64)


@pytest.fixture
def criterion():
    def record(label: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
