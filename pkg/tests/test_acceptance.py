"""Acceptance criteria 1-10 on the fixed grid.

Each test prints one ``criterion N PASS|FAIL`` line. A WARN (a closed count that
disagrees with enumeration where St is empty) is reported as PASS with a note.
The lines are also collected for the terminal summary.
"""
import pytest

from smallq.verify import FAIL, WARN, acceptance_grid, run_criterion

LINES: dict[int, str] = {}
GRID = acceptance_grid()


def report_line(res) -> str:
    status = "FAIL" if res.status == FAIL else "PASS"
    line = f"criterion {res.number} {status}  {res.title}"
    if res.status == WARN:
        warned = [f"{c.name}: {c.detail}" for c in res.checks if c.status == WARN]
        line += "  [WARN " + "; ".join(warned) + "]"
    return line


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    res = run_criterion(n, GRID)
    line = report_line(res)
    LINES[n] = line
    print(line)
    failed = [f"{c.name}: {c.detail}" for c in res.checks if c.status == FAIL]
    assert res.status != FAIL, failed


def test_criterion_5_warns_exactly_at_l3_r3():
    res = run_criterion(5, GRID)
    warned = [c for c in res.checks if c.status == WARN]
    assert [c.name for c in warned] == ["a, l=3, r=3"]


if __name__ == "__main__":
    for n in range(1, 11):
        print(report_line(run_criterion(n, GRID)))
