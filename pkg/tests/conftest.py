import numpy as np
import pytest

from locbeam import ArrayConfig, build_dictionary, quantized_grid


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def ula8():
    return ArrayConfig(8)


@pytest.fixture(scope="session")
def grid72():
    return quantized_grid(72)


@pytest.fixture(scope="session")
def dict72(grid72, ula8):
    return build_dictionary(grid72, ula8, ula8)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
