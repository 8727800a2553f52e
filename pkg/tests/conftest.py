import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import criteria  # noqa: E402

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and not report.passed):
        criteria.OUTCOMES[k] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not criteria.OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for line in criteria.summary_lines():
        terminalreporter.write_line(line)
