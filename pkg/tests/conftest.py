import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

# filled by test_acceptance, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
