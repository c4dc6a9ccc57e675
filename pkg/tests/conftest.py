import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS: list[tuple[str, str, bool, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for ident, title, passed, elapsed in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0][2:])):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status} {ident} {title} ({elapsed:.2f}s)")
