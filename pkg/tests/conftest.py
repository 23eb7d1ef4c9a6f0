import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    by_criterion: dict[int, list] = {}
    for crit, name, ok, detail in acceptance_log.RESULTS:
        by_criterion.setdefault(crit, []).append((name, ok, detail))
    for crit in sorted(by_criterion):
        rows = by_criterion[crit]
        verdict = "PASS" if all(ok for _, ok, _ in rows) else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {verdict}")
        for name, ok, detail in rows:
            terminalreporter.write_line(f"    {'ok ' if ok else 'BAD'} {name}: {detail}")
