from pathlib import Path

import pytest

from resolvent.corpus import enumerate_connected, parse_edge_list

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def connected_upto_6():
    return {n: [rec.graph for rec in enumerate_connected(n)] for n in range(1, 7)}


@pytest.fixture(scope="session")
def example_h():
    return parse_edge_list((DATA / "example_H.txt").read_text())


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
