"""Numerical checks of the two convolution-type integral bounds

    int dt / (<t>^g <t-a>^g)      <~  <a>^-g        (g > 1)
    int dt / (<t>^g |t-a|^(1/2))  <~  <a>^-(1/2)    (g > 1)

by adaptive quadrature; the square-root singularity is removed with the
substitution t = a -+ s^2 on the two unit intervals around t = a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DivergentIntegralError

__all__ = ["ConvolutionBoundResult", "convolution_bound_check"]

_EPSABS = 1e-12
_EPSREL = 1e-11


@dataclass(frozen=True)
class ConvolutionBoundResult:
    """Adaptive-quadrature values and ratios against the claimed bounds."""

    lhs_bracket: float      # int dt / (<t>^g <t-a>^g)
    ratio_bracket: float    # lhs_bracket / <a>^-g
    lhs_sqrt: float         # int dt / (<t>^g |t-a|^(1/2))
    ratio_sqrt: float       # lhs_sqrt / <a>^-(1/2)


def _bracket_pow(t, g):
    return (1.0 + t * t) ** (-0.5 * g)


def _quad(f, lo, hi) -> float:
    value, _err = quad(f, lo, hi, epsabs=_EPSABS, epsrel=_EPSREL, limit=200)
    return value


def _bracket_integral(gamma: float, a: float) -> float:
    f = lambda t: _bracket_pow(t, gamma) * _bracket_pow(t - a, gamma)
    lo, hi = sorted((0.0, a))
    total = _quad(f, -np.inf, lo)
    if hi > lo:
        total += _quad(f, lo, hi)
    total += _quad(f, hi, np.inf)
    return total


def _sqrt_integral(gamma: float, a: float) -> float:
    f = lambda t: _bracket_pow(t, gamma) / np.sqrt(np.abs(t - a))
    # substituted halves: t = a - s^2 and t = a + s^2 turn 1/sqrt into 2 ds
    left = _quad(lambda s: 2.0 * _bracket_pow(a - s * s, gamma), 0.0, 1.0)
    right = _quad(lambda s: 2.0 * _bracket_pow(a + s * s, gamma), 0.0, 1.0)
    tails = _quad(f, -np.inf, a - 1.0) + _quad(f, a + 1.0, np.inf)
    return left + right + tails


def convolution_bound_check(gamma: float, a: float) -> ConvolutionBoundResult:
    """Evaluate both integrals at (gamma, a) and their bound ratios."""
    if gamma <= 1.0:
        raise DivergentIntegralError(f"integrals diverge for gamma <= 1, got {gamma!r}")
    lhs_bracket = _bracket_integral(gamma, a)
    lhs_sqrt = _sqrt_integral(gamma, a)
    bound_bracket = (1.0 + a * a) ** (-0.5 * gamma)
    bound_sqrt = (1.0 + a * a) ** (-0.25)
    return ConvolutionBoundResult(
        lhs_bracket=lhs_bracket,
        ratio_bracket=lhs_bracket / bound_bracket,
        lhs_sqrt=lhs_sqrt,
        ratio_sqrt=lhs_sqrt / bound_sqrt,
    )
