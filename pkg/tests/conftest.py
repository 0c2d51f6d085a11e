import numpy as np
import pytest

from kp5 import DispersionParams, KPSign, make_grid


@pytest.fixture
def grid16():
    return make_grid(16, 16, 2 * np.pi, 2 * np.pi)


@pytest.fixture
def grid32():
    return make_grid(32, 32, 2 * np.pi, 2 * np.pi)


@pytest.fixture
def kp1():
    return DispersionParams(kp_sign=KPSign.KP1, alpha=0.0)


@pytest.fixture
def kp1_alpha1():
    return DispersionParams(kp_sign=KPSign.KP1, alpha=1.0)


@pytest.fixture
def kp2():
    return DispersionParams(kp_sign=KPSign.KP2, alpha=0.0)
