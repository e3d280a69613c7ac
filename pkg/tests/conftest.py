import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def g3_result():
    from amono.catalog import horn_g3
    from amono.report import run_pipeline

    return run_pipeline(horn_g3(Fraction(1, 3), Fraction(1, 5)))


@pytest.fixture(scope="session")
def e36_result():
    from amono.catalog import aomoto_gelfand_e36
    from amono.report import run_pipeline

    return run_pipeline(aomoto_gelfand_e36())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line("criterion %s: %s  %s" % (key, "PASS" if ok else "FAIL", detail))
