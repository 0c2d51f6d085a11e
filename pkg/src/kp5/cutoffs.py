"""Smooth time cutoff and the dyadic bump family built from it.

One bump serves everything: ``psi`` equals 1 on [-1, 1], vanishes outside
(-2, 2), and is assembled from the standard mollifier ``B(s) = exp(-1/s)``
(s > 0) as ``psi(t) = B(2-|t|) / (B(2-|t|) + B(|t|-1))``.  The dyadic shells
``eta_j`` telescope exactly: ``sum_{j<=J} eta_j(x) == psi(2**-J * x)``.
"""

from __future__ import annotations

import numpy as np

__all__ = ["cutoff_psi", "cutoff_psi_T", "dyadic_eta"]


def _bump(s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(s, dtype=float)
    pos = s > 0
    with np.errstate(divide="ignore", over="ignore"):
        out[pos] = np.exp(-1.0 / s[pos])
    return out


def cutoff_psi(t):
    """Smooth plateau cutoff: exactly 1 on [-1, 1], exactly 0 outside (-2, 2)."""
    t_in = np.asarray(t, dtype=float)
    t_abs = np.atleast_1d(np.abs(t_in))
    num = _bump(2.0 - t_abs)
    den = num + _bump(t_abs - 1.0)
    out = np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)
    return float(out[0]) if t_in.ndim == 0 else out


def cutoff_psi_T(t, T: float):
    """Rescaled cutoff psi(t / T) for a window size T in (0, 1)."""
    if not 0.0 < T < 1.0:
        raise ValueError(f"cutoff window T must lie in (0, 1), got {T!r}")
    return cutoff_psi(np.asarray(t, dtype=float) / T)


def dyadic_eta(j: int, x):
    """Dyadic shell bump: eta_0 = psi, eta_j(x) = psi(2**-j x) - psi(2**(1-j) x)."""
    if j < 0 or j != int(j):
        raise ValueError(f"shell index must be a nonnegative integer, got {j!r}")
    j = int(j)
    if j == 0:
        return cutoff_psi(x)
    x_arr = np.asarray(x, dtype=float)
    out = cutoff_psi(np.ldexp(x_arr, -j)) - cutoff_psi(np.ldexp(x_arr, 1 - j))
    return float(out) if x_arr.ndim == 0 else out
