import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

# criterion lines collected by test_acceptance, echoed once at the end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
