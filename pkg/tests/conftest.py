import sys

import pytest

from heckeboid.enumeration import all_classes
from heckeboid.perms import perms_to_graph

SMALL = [(3, n) for n in range(1, 7)] + [(4, n) for n in range(1, 6)] + [(5, n) for n in range(1, 6)]


@pytest.fixture(scope="session")
def small_pairs():
    """Canonical class representatives for q=3 (n<=6) and q=4,5 (n<=5)."""
    return [c for q, n in SMALL for c in all_classes(q, n).classes]


@pytest.fixture(scope="session")
def small_graphs(small_pairs):
    return [perms_to_graph(p) for p in small_pairs]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
