import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

import pytest

from lffc.dirfn import DirichletChar, dirichlet_stratification
from lffc.ellfn import EllCurveOverFqT, ell_stratification
from lffc.ffpoly import GF
from lffc.zetafn import HyperellipticModel, zeta_stratification

DIRICHLET_COMPONENTS = ["t^2 - t - 1:t:zeta8", "t^2 + 1:t + 1:i", "t^2 + t - 1:t:-1"]


@pytest.fixture(scope="session")
def genus3_curve():
    return HyperellipticModel.parse(GF(3), "t^7 - t + 1")


@pytest.fixture
def zeta_case(genus3_curve):
    return zeta_stratification(genus3_curve)


@pytest.fixture(scope="session")
def ell_curve():
    return EllCurveOverFqT.parse(GF(7), a1="t", a6="t^2 + 2")


@pytest.fixture
def ell_case(ell_curve):
    return ell_stratification(ell_curve)


@pytest.fixture(scope="session")
def dirichlet_char():
    return DirichletChar.parse(GF(3), DIRICHLET_COMPONENTS)


@pytest.fixture
def dirichlet_case(dirichlet_char):
    return dirichlet_stratification(dirichlet_char)


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    lines = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(number: int, ok: bool, detail: str):
        lines[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
