from pathlib import Path

import pytest
from hypothesis import settings

import glab

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
ZEROS_100K = DATA_DIR / "zeros_100k.txt"


@pytest.fixture(scope="session")
def lam2000():
    return glab.build_lambda(2000)


@pytest.fixture(scope="session")
def psi2000(lam2000):
    return glab.build_psi(lam2000)


@pytest.fixture(scope="session")
def gt2000(lam2000):
    return glab.g_table_fft(lam2000)


@pytest.fixture(scope="session")
def lam10k():
    return glab.build_lambda(10_000)


@pytest.fixture(scope="session")
def gt10k(lam10k):
    return glab.g_table_fft(lam10k)


@pytest.fixture(scope="session")
def lam100k():
    return glab.build_lambda(100_000)


@pytest.fixture(scope="session")
def builtin():
    return glab.builtin_zeros()


@pytest.fixture(scope="session")
def zeros100k():
    if not ZEROS_100K.exists():
        pytest.fail(f"zero table {ZEROS_100K} missing; regenerate with scripts/make_zero_table.py")
    return glab.load_zeros(ZEROS_100K)


# One pass/fail line per acceptance criterion in the terminal summary.
_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status} {name}")
