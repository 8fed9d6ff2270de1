import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(rep.nodeid)
            if m is None or rep.when not in ("call", "setup"):
                continue
            key = (int(m.group(1)), m.group(2))
            if status != "passed" or key not in results:
                results[key] = "PASS" if status == "passed" else "FAIL"
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), status in sorted(results.items()):
        terminalreporter.write_line(f"criterion {n:>2} {status}  {name.replace('_', ' ')}")
