import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tstrx.quiver_rep import ind_from_dimvec, parse_quiver  # noqa: E402

ACCEPTANCE_TITLES = {
    1: "indecomposable counts",
    2: "torsion-pair enumeration",
    3: "homological consistency",
    4: "correspondence roundtrips",
    5: "nested truncation identities",
    6: "distance engine",
    7: "distance-n construction",
    8: "A3 example audit",
    9: "determinism",
}


def orientations(n):
    return ["".join(f) for f in itertools.product("RL", repeat=n - 1)]


def all_quivers(n, p=2):
    return [parse_quiver(f"A{n}:{f}@{p}" if f else f"A{n}@{p}") for f in orientations(n)]


@pytest.fixture
def a2():
    q = parse_quiver("A2:R")
    S1, P1, S2 = (ind_from_dimvec(q, d) for d in ((1, 0), (1, 1), (0, 1)))
    return q, S1, P1, S2


@pytest.fixture
def a3():
    return parse_quiver("A3:RR")


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if rep.when != "call" and key == "passed":
                continue
            num = int(nodeid.split("test_criterion_")[1].split("_")[0])
            duration = getattr(rep, "duration", 0.0)
            prev = outcomes.get(num)
            if prev is None or key != "passed":
                outcomes[num] = ("PASS" if key == "passed" else "FAIL", duration)
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcomes):
        status, duration = outcomes[num]
        terminalreporter.write_line(f"criterion {num} ({ACCEPTANCE_TITLES[num]}): {status} [{duration:.2f} s]")
