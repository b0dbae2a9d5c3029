import os
import time

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Acceptance lines collected during the run, printed once at the end.
ACCEPTANCE: list = []
SUITE_BUDGET_S = 600
_start = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _start
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
    verdict = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    terminalreporter.write_line(f"{verdict} 1b suite wall time {elapsed:.0f}s (limit {SUITE_BUDGET_S}s)")
