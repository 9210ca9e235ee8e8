"""Bogoliubov dispersion, its inverse, and the model-I interference factor.

All functions work in internal units (momenta in 1/sigma, energies in
E_sigma, hbar = 1) and accept scalars or numpy arrays.  ``u`` is the
dimensionless mean-field energy ``ReducedParameters.u``.
"""
from __future__ import annotations

from typing import Union

import numpy as np
from scipy.special import j0

__all__ = [
    "epsilon",
    "bogoliubov",
    "invert_bogoliubov",
    "group_velocity",
    "angular_interference",
]

ArrayLike = Union[float, np.ndarray]


def _check_nonnegative(x: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError(f"{name} must be non-negative")
    return arr


def epsilon(k: ArrayLike) -> ArrayLike:
    """Free-particle dispersion; k^2 exactly in internal units."""
    arr = _check_nonnegative(k, "k")
    out = arr * arr
    return out if isinstance(k, np.ndarray) else float(out)


def bogoliubov(k: ArrayLike, u: float) -> ArrayLike:
    """Bogoliubov excitation energy sqrt(eps (eps + 2 u)) = k sqrt(k^2 + 2u).

    Strictly increasing in k, gapless, linear with slope sqrt(2u) at small k
    and free-particle-like at large k.  Reduces to ``epsilon`` at u = 0.
    """
    arr = _check_nonnegative(k, "k")
    if u < 0:
        raise ValueError("u must be non-negative")
    out = arr * np.sqrt(arr * arr + 2.0 * u)
    return out if isinstance(k, np.ndarray) else float(out)


def invert_bogoliubov(omega: ArrayLike, u: float) -> ArrayLike:
    """Unique k >= 0 with bogoliubov(k, u) = omega.

    Uses the cancellation-free form eps = omega^2 / (u + sqrt(u^2 + omega^2)),
    which is algebraically identical to -u + sqrt(u^2 + omega^2) but stays
    accurate for omega << u, and reduces to eps = omega at u = 0.
    """
    arr = _check_nonnegative(omega, "omega")
    if u < 0:
        raise ValueError("u must be non-negative")
    eps = np.where(arr > 0, arr * arr / (u + np.sqrt(u * u + arr * arr)), 0.0)
    out = np.sqrt(eps)
    return out if isinstance(omega, np.ndarray) else float(out)


def group_velocity(k: ArrayLike, u: float) -> ArrayLike:
    """Analytic dE/dk = 2 (k^2 + u) / sqrt(k^2 + 2u); strictly positive for k > 0.

    The k -> 0 limit (sound speed sqrt(2u)) is finite for u > 0 but the free
    gas limit diverges as 1/k in the Jacobian dk/domega, so callers must keep
    k > 0; the spectral module handles omega -> 0 through invert_bogoliubov.
    """
    arr = np.asarray(k, dtype=float)
    if np.any(arr <= 0):
        raise ValueError("k must be positive")
    if u < 0:
        raise ValueError("u must be non-negative")
    out = 2.0 * (arr * arr + u) / np.sqrt(arr * arr + 2.0 * u)
    return out if isinstance(k, np.ndarray) else float(out)


def angular_interference(kL: ArrayLike, D: int) -> ArrayLike:
    """Direction average of sin^2(k . L) over the D-sphere, as a function of kL = |k||L|.

    D=1: sin^2(kL)
    D=2: (1 - J0(2 kL)) / 2
    D=3: (1 - sin(2 kL) / (2 kL)) / 2

    Values lie in [0, 1], vanish quadratically at kL = 0 and tend to 1/2 for
    D >= 2 as kL -> infinity.  Small arguments use series expansions to avoid
    the 1 - (1 - x^2...) cancellation.
    """
    arr = _check_nonnegative(kL, "kL")
    if D == 1:
        out = np.sin(arr) ** 2
    elif D == 2:
        x2 = arr * arr
        series = 0.5 * x2 * (1.0 - 0.25 * x2 * (1.0 - x2 / 9.0))
        with np.errstate(invalid="ignore"):
            direct = 0.5 * (1.0 - j0(2.0 * arr))
        out = np.where(arr < 1e-2, series, direct)
    elif D == 3:
        x2 = arr * arr
        series = (x2 / 3.0) * (1.0 - 0.2 * x2 * (1.0 - 2.0 * x2 / 21.0))
        z = 2.0 * arr
        with np.errstate(divide="ignore", invalid="ignore"):
            direct = 0.5 * (1.0 - np.sin(z) / z)
        out = np.where(arr < 1e-2, series, direct)
    else:
        raise ValueError(f"D must be 1, 2 or 3, got {D!r}")
    return out if isinstance(kL, np.ndarray) else float(out)
