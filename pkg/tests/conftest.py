import numpy as np
import pytest

from zdgame import validate_payoffs

# Known positively correlated enforcers with exact rational entries, each
# paired with a discount factor above critical and its payoff setting.
PCZD_A = ((0.0, 0.75, 0.25, 0.5, 0.0), 0.99, (1.5, -0.5))
PCZD_B = ((0.0, 1.0, 0.0, 1.0, 0.0), 0.34, (1.5, -0.5))
PCZD_C = ((1.0, 1.0, 0.5, 0.8, 0.3), 0.99, (1.5, -0.5))
PCZD_D = ((1.0, 1.0, 0.0, 1.0, 0.0), 0.34, (1.5, -0.5))
PCZD_E = ((0.95, 0.7, 0.2, 0.13, 0.0), 0.9, (2.0, -0.1))

ROSTER = (PCZD_A, PCZD_B, PCZD_C, PCZD_D, PCZD_E)


@pytest.fixture(scope="session")
def params_main():
    return validate_payoffs(1.5, -0.5, strict=True)


@pytest.fixture(scope="session")
def params_wide():
    return validate_payoffs(2.0, -0.1, strict=True)


@pytest.fixture(scope="session")
def params_tight():
    return validate_payoffs(1.1, -1.0, strict=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240)
