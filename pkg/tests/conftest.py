import re

_ACCEPTANCE = "test_acceptance.py::test_criterion_"


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if _ACCEPTANCE not in rep.nodeid or rep.when not in ("call", "setup"):
                continue
            num = int(re.search(r"test_criterion_(\d+)", rep.nodeid).group(1))
            ok = results.get(num, True) and outcome == "passed"
            results[num] = ok
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if results[num] else 'FAIL'}")
