import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and rep.when == "call":
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines.append((int(m.group(1)), f"criterion {int(m.group(1)):2d}: {verdict}  ({rep.duration:.2f} s)"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, text in sorted(lines):
            terminalreporter.write_line(text)
