import time
from pathlib import Path

import hypothesis
import pytest

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"

# filled in by test_acceptance.py; printed after the run
ACCEPTANCE_RESULTS = {}
SUITE_LIMIT_S = 60.0
_started = {}


@pytest.fixture
def data_dir():
    return DATA


def pytest_sessionstart(session):
    _started["t"] = time.perf_counter()


@pytest.hookimpl(tryfirst=True)
def pytest_sessionfinish(session, exitstatus):
    if not ACCEPTANCE_RESULTS:
        return
    elapsed = time.perf_counter() - _started["t"]
    ok = elapsed < SUITE_LIMIT_S
    ACCEPTANCE_RESULTS["12 suite runtime"] = (ok, f"{elapsed:.1f}s (limit {SUITE_LIMIT_S:.0f}s)")
    if not ok:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
