import os
import re

from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.register_profile("ci", max_examples=15, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion that was collected."""
    verdicts: dict = {}
    for kind in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(kind, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m or rep.when not in ("setup", "call"):
                continue
            n = int(m.group(1))
            ok = kind == "passed"
            verdicts[n] = verdicts.get(n, True) and ok
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if verdicts[n] else 'FAIL'}")
