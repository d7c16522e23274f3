import pytest

from qaccel.numerics import PrecisionConfig
from qaccel.presets import PRESETS


@pytest.fixture(scope="session")
def config():
    return PrecisionConfig(digits=32, guard=10)


@pytest.fixture(scope="session")
def ex1(config):
    return PRESETS["ex1"].series(config), PRESETS["ex1"].reference(config)


@pytest.fixture(scope="session")
def ex2(config):
    return PRESETS["ex2"].series(config), PRESETS["ex2"].reference(config)


@pytest.fixture(scope="session")
def ex3(config):
    return PRESETS["ex3"].series(config), PRESETS["ex3"].reference(config)
