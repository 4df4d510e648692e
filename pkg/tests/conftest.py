import numpy as np
import pytest

from dnaring.gaumap import canonical_map, enumerate_gau_maps
from dnaring.ring import parse_element


def E(text):
    return parse_element(text)


def V(*texts):
    return [parse_element(t) for t in texts]


@pytest.fixture(scope="session")
def gmap():
    return canonical_map()


@pytest.fixture(scope="session")
def all_maps():
    return enumerate_gau_maps()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# criterion number -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
