import numpy as np
import pytest

from fractalframes import SpectrumSpec, enumerate_truncation, validate_ifs

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def jp():
    return validate_ifs(4, [0, 2])[0]


@pytest.fixture(scope="session")
def cantor():
    return validate_ifs(3, [0, 2])[0]


@pytest.fixture(scope="session")
def jp_lambda():
    cache = {}

    def make(level, scale=1.0):
        key = (level, scale)
        if key not in cache:
            cache[key] = enumerate_truncation(SpectrumSpec.digit_lambda(4, [0, 1], scale), level)
        return cache[key]

    return make


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
