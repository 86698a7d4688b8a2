import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m or rep.when not in ("call", "setup"):
                continue
            key = (int(m.group(1)), m.group(2).replace("_", " "))
            if status != "passed" or key not in results:
                results[key] = "PASS" if status == "passed" else "FAIL"
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(results.items()):
        terminalreporter.write_line(f"{verdict} criterion {num}: {name}")
