import os

import pytest
from hypothesis import HealthCheck, settings

from support import SAMPLES

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def samples_dir():
    return os.path.abspath(SAMPLES)


# one summary line per acceptance criterion; test names are test_criterion_<n>_<what>
_criteria: dict[int, list] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when != "call" and not (report.failed or report.skipped):
        return
    n = int(name.split("_")[2])
    _criteria.setdefault(n, []).append((name, report))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        reports = _criteria[n]
        failed = [name for name, r in reports if r.failed]
        xfailed = [(name, r.wasxfail) for name, r in reports if hasattr(r, "wasxfail")]
        skipped = [name for name, r in reports if r.skipped and not hasattr(r, "wasxfail")]
        if failed:
            line = f"FAIL ({', '.join(failed)})"
        elif xfailed:
            line = "FAIL (known, " + "; ".join(f"{name}: {why}" for name, why in xfailed) + ")"
        elif skipped:
            line = f"NOT RUN ({', '.join(skipped)})"
        else:
            line = f"PASS ({len(reports)} checks)"
        terminalreporter.write_line(f"criterion {n}: {line}")
