import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "fixed", derandomize=True, max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("fixed")

@pytest.fixture(scope="session")
def family():
    from hntcodes.codes import paley_hadamard12

    return paley_hadamard12()


@pytest.fixture(scope="session")
def aut_P(family):
    from hntcodes.autsearch import automorphism_group

    return automorphism_group(family.punctured)


@pytest.fixture(scope="session")
def aut_H(family):
    from hntcodes.autsearch import automorphism_group

    return automorphism_group(family.hadamard)


@pytest.fixture(scope="session")
def aut_E(family):
    from hntcodes.autsearch import automorphism_group

    return automorphism_group(family.even)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
