"""Dispersion symbol of the fifth-order KP family and its gradient.

The symbol is ``omega(xi, mu) = sign*xi**5 - alpha*xi**3 + mu**2/xi`` with
``sign = +1`` for the KP-I branch and ``-1`` for KP-II.  It is singular on
``xi = 0``; the zero-mode policy decides whether that line is projected away
or treated as an error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SingularSymbolError
from .grid import SpectralGrid

__all__ = [
    "KPSign",
    "ZeroModePolicy",
    "DispersionParams",
    "dispersion_omega",
    "gradient_omega",
    "omega_on_grid",
]


class KPSign(enum.Enum):
    KP1 = "kp1"
    KP2 = "kp2"

    @property
    def value_sign(self) -> float:
        return 1.0 if self is KPSign.KP1 else -1.0


class ZeroModePolicy(enum.Enum):
    PROJECT_OUT = "project_out"
    ERROR = "error"


@dataclass(frozen=True)
class DispersionParams:
    """KP branch selector, third-derivative coefficient, and zero-mode policy."""

    kp_sign: KPSign = KPSign.KP1
    alpha: float = 0.0
    zero_mode: ZeroModePolicy = ZeroModePolicy.PROJECT_OUT

    def __post_init__(self) -> None:
        if not isinstance(self.kp_sign, KPSign):
            raise ValueError(f"kp_sign must be a KPSign, got {self.kp_sign!r}")
        if not isinstance(self.zero_mode, ZeroModePolicy):
            raise ValueError(f"zero_mode must be a ZeroModePolicy, got {self.zero_mode!r}")
        if not np.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")

    @property
    def sign(self) -> float:
        return self.kp_sign.value_sign


def dispersion_omega(xi, mu, params: DispersionParams):
    """Evaluate ``sign*xi**5 - alpha*xi**3 + mu**2/xi``.

    Scalars and same-shaped arrays are both accepted.  The scalar point
    ``(0, 0)`` returns 0 under the project-out policy; any other xi = 0
    evaluation raises ``SingularSymbolError``.
    """
    xi_a = np.asarray(xi, dtype=float)
    mu_a = np.asarray(mu, dtype=float)
    if xi_a.ndim == 0 and mu_a.ndim == 0:
        x = float(xi_a)
        m = float(mu_a)
        if x == 0.0:
            if m == 0.0 and params.zero_mode is ZeroModePolicy.PROJECT_OUT:
                return 0.0
            raise SingularSymbolError(
                f"dispersion symbol is singular at xi=0 (mu={m!r}, policy={params.zero_mode.value})"
            )
        return params.sign * x**5 - params.alpha * x**3 + m * m / x
    if np.any(xi_a == 0.0):
        raise SingularSymbolError("array evaluation hit xi=0; use omega_on_grid for lattices")
    return params.sign * xi_a**5 - params.alpha * xi_a**3 + mu_a * mu_a / xi_a


def gradient_omega(xi, mu, params: DispersionParams):
    """Analytic gradient ``(d omega/d xi, d omega/d mu)`` of the implemented symbol.

    Returns ``(sign*5*xi**4 - 3*alpha*xi**2 - mu**2/xi**2, 2*mu/xi)``.
    """
    xi_a = np.asarray(xi, dtype=float)
    mu_a = np.asarray(mu, dtype=float)
    if np.any(xi_a == 0.0):
        raise SingularSymbolError("dispersion gradient is singular at xi=0")
    d_xi = params.sign * 5.0 * xi_a**4 - 3.0 * params.alpha * xi_a**2 - (mu_a / xi_a) ** 2
    d_mu = 2.0 * mu_a / xi_a
    if xi_a.ndim == 0 and mu_a.ndim == 0:
        return (float(d_xi), float(d_mu))
    return (d_xi, d_mu)


@lru_cache(maxsize=64)
def _omega_lattice(grid: SpectralGrid, params: DispersionParams) -> np.ndarray:
    xi = grid.xi_mesh.copy()
    xi[:, 0] = 1.0  # placeholder; the line is overwritten below
    omega = params.sign * xi**5 - params.alpha * xi**3 + grid.mu_mesh**2 / xi
    omega[:, 0] = 0.0
    omega[:, grid.nx // 2] = 0.0
    omega.flags.writeable = False
    return omega


def omega_on_grid(grid: SpectralGrid, params: DispersionParams) -> np.ndarray:
    """Symbol values on the (ny, nx) lattice with the xi = 0 line set to zero.

    Content on that line, if any, is the caller's responsibility: project-out
    callers zero the coefficients, error-policy callers must check first.
    The xi Nyquist column is also held at zero: that column is its own mirror
    under (xi, mu) -> (-xi, -mu), so any nonzero symbol there would break the
    conjugation symmetry the flow needs to keep real data real; the column is
    outside the dealiased band of every solver path anyway.  The returned
    array is cached and write-locked.
    """
    return _omega_lattice(grid, params)
