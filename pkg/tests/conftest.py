import pytest

from kwmod.partitions import PartitionPair
from kwmod.superalgebra import AlgebraContext


@pytest.fixture
def running_pp():
    return PartitionPair.of((3, 1), (2, 1))


@pytest.fixture
def gl43():
    return AlgebraContext(4, 3, 5, "gl")


@pytest.fixture
def gl21():
    return AlgebraContext(2, 1, 3, "gl")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
