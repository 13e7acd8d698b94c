import warnings

import pytest

from goodwin_delay.errors import NotInteriorWarning
from goodwin_delay.model import equilibrium, subsystem_coefficients, validate_parameters

from helpers import CASE_A, CASE_B


@pytest.fixture(autouse=True)
def _silence_interior_warnings():
    # randomly sampled parameter sets routinely sit outside the unit square
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotInteriorWarning)
        yield


@pytest.fixture
def case_a_raw():
    return dict(CASE_A)


@pytest.fixture
def case_b_raw():
    return dict(CASE_B)


@pytest.fixture
def case_a():
    p = validate_parameters(dict(CASE_A))
    coeffs = subsystem_coefficients(p, "A")
    eq = equilibrium(coeffs, p)
    return p, coeffs, eq


@pytest.fixture
def case_b():
    p = validate_parameters(dict(CASE_B))
    coeffs = subsystem_coefficients(p, "B")
    eq = equilibrium(coeffs, p)
    return p, coeffs, eq
