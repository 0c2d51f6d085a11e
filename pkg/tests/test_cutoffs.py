import math

import numpy as np
import pytest

from kp5 import cutoff_psi, cutoff_psi_T, dyadic_eta


def test_plateau_and_support_values():
    assert cutoff_psi(0.5) == 1.0
    assert cutoff_psi(3.0) == 0.0
    assert cutoff_psi(1.5) == pytest.approx(0.5, abs=1e-15)


def test_exact_plateau_and_support_edges():
    for t in (-1.0, -0.3, 0.0, 0.99, 1.0):
        assert cutoff_psi(t) == 1.0
    for t in (-2.0, 2.0, 2.5, -17.0):
        assert cutoff_psi(t) == 0.0


def test_monotone_on_transition():
    ts = np.linspace(1.0, 2.0, 500)
    values = cutoff_psi(ts)
    assert np.all(np.diff(values) <= 0.0)
    assert np.all((values >= 0.0) & (values <= 1.0))


def test_even():
    ts = np.linspace(0, 3, 100)
    assert np.array_equal(cutoff_psi(ts), cutoff_psi(-ts))


def test_psi_T_rescaling():
    assert cutoff_psi_T(0.05, 0.1) == 1.0
    assert cutoff_psi_T(0.21, 0.1) == 0.0
    assert cutoff_psi_T(0.15, 0.1) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        cutoff_psi_T(0.0, 1.0)
    with pytest.raises(ValueError):
        cutoff_psi_T(0.0, 0.0)


def test_eta_examples():
    assert dyadic_eta(0, 0.5) == 1.0
    for j in (1, 2, 3, 7):
        assert dyadic_eta(j, 0.0) == 0.0  # both plateau terms equal 1
    assert dyadic_eta(3, 8.0) == 1.0  # psi(1) - psi(2) = 1 - 0
    assert dyadic_eta(3, 6.0) == pytest.approx(1.0 - cutoff_psi(1.5), abs=1e-15)
    with pytest.raises(ValueError):
        dyadic_eta(-1, 0.0)


def test_eta_shell_support():
    # eta_j lives on 2^(j-1) < |x| < 2^(j+1)
    for j in (1, 4, 9):
        assert dyadic_eta(j, 2.0 ** (j - 1) * 0.99) == 0.0
        assert dyadic_eta(j, 2.0**j * 1.5) > 0.0
        assert dyadic_eta(j, 2.0 ** (j + 1)) == 0.0


def test_telescoping_identity_exact():
    rng = np.random.default_rng(9)
    x = np.concatenate(
        [
            rng.uniform(-5.0, 5.0, 2000),
            rng.choice([-1.0, 1.0], 2000) * 2.0 ** rng.uniform(-8.0, 21.0, 2000),
            np.array([0.0, 1.0, -2.0, 2.0**20]),
        ]
    )
    for j_max in (0, 1, 5, 20, 40):
        total = np.zeros_like(x)
        for j in range(j_max + 1):
            total += dyadic_eta(j, x)
        target = cutoff_psi(np.ldexp(x, -j_max))
        assert np.max(np.abs(total - target)) <= 1e-15


def test_telescoping_scalar_fsum():
    for x in (0.7, 3.3, 1000.0, 2.0**17 * 1.3):
        total = math.fsum(dyadic_eta(j, x) for j in range(41))
        assert abs(total - cutoff_psi(x * 2.0**-40)) <= 1e-15
