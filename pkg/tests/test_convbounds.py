import numpy as np
import pytest

from kp5 import convolution_bound_check
from kp5.errors import DivergentIntegralError


def test_spot_value_pi_over_two():
    res = convolution_bound_check(2.0, 0.0)
    assert res.lhs_bracket == pytest.approx(np.pi / 2.0, abs=1e-8)


def test_gamma_at_most_one_rejected():
    for gamma in (1.0, 0.5, -2.0):
        with pytest.raises(DivergentIntegralError):
            convolution_bound_check(gamma, 0.0)


def test_sqrt_integral_against_closed_form():
    # gamma = 2, a = 0: int dt / ((1+t^2) sqrt|t|) = pi * sqrt(2) / ... evaluate by
    # an independent midpoint rule with the substitution t = s^2
    res = convolution_bound_check(2.0, 0.0)
    s = (np.arange(400_000) + 0.5) * (200.0 / 400_000)
    oracle = 2.0 * np.sum(2.0 / (1.0 + s**4)) * (200.0 / 400_000)
    assert res.lhs_sqrt == pytest.approx(oracle, rel=1e-6)


@pytest.mark.parametrize("gamma", [1.1, 1.5, 2.0, 3.0])
def test_ratios_bounded_over_offsets(gamma):
    a_values = np.linspace(-100.0, 100.0, 41)
    ratios_b = []
    ratios_s = []
    for a in a_values:
        res = convolution_bound_check(gamma, float(a))
        ratios_b.append(res.ratio_bracket)
        ratios_s.append(res.ratio_sqrt)
    assert np.all(np.isfinite(ratios_b))
    assert np.all(np.isfinite(ratios_s))
    print(f"gamma={gamma}: max bracket ratio {max(ratios_b):.4g}, max sqrt ratio {max(ratios_s):.4g}")


def test_bracket_integral_decays_monotonically():
    values = [convolution_bound_check(2.0, float(a)).lhs_bracket for a in np.linspace(0, 50, 26)]
    assert all(b < a for a, b in zip(values, values[1:]))
