"""Shared test plumbing: collects per-criterion verdicts from the acceptance
suite and prints one line per criterion in the terminal summary."""

CRITERION_RESULTS = {}


def record_criterion(number: int, description: str, passed: bool, detail: str = "") -> None:
    CRITERION_RESULTS[number] = (description, passed, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERION_RESULTS):
        description, passed, detail = CRITERION_RESULTS[number]
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2}: {status} - {description}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
