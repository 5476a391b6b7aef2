import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.RESULTS[n])
