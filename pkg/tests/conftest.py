import math

import pytest

from becgate.medium import REFERENCE_SCATTERING, effective_interactions
from becgate.quantities import RB87

W10 = 2 * math.pi * 10
W80 = 2 * math.pi * 80


@pytest.fixture
def c():
    return RB87


@pytest.fixture
def reference():
    return REFERENCE_SCATTERING


@pytest.fixture
def reference_f3():
    return REFERENCE_SCATTERING.with_feshbach(3.0)


@pytest.fixture
def med_f1(reference, c):
    return effective_interactions(reference, c)


@pytest.fixture
def med_f3(reference_f3, c):
    return effective_interactions(reference_f3, c)
