import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    k = int(match.group(1))
    if report.failed:
        _outcomes[k] = "FAIL"
    elif report.when == "call" and k not in _outcomes:
        _outcomes[k] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import DESCRIPTIONS

    terminalreporter.section("acceptance criteria")
    for k in sorted(DESCRIPTIONS):
        terminalreporter.write_line(f"criterion {k:>2}: {_outcomes.get(k, 'NOT RUN'):<7} {DESCRIPTIONS[k]}")
