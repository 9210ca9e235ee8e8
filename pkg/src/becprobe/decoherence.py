"""Decoherence function Gamma(t) and its analytic time derivative.

The dephasing exponent for both probe models, any gas dimension and zero or
finite temperature, in the continuum limit (internal units, hbar = 1):

    Gamma(t)  = C_D int_0^inf dk k^(D-1) e^(-k^2/2) (eps_k/E_k)
                  sin^2(E_k t / 2) / E_k^2  W(k)  th(E_k, T)
    Gamma'(t) = C_D int_0^inf dk k^(D-1) e^(-k^2/2) (eps_k/E_k)
                  sin(E_k t) / (2 E_k)      W(k)  th(E_k, T)

with W(k) = 1 for model II and the direction-averaged interference factor
for model I, C_D = ReducedParameters.coupling, and th the finite-temperature
occupation factor coth(E / 2 T).  Gamma' is always evaluated through its own
integral, never by differencing Gamma.

Infrared behavior at T > 0: for a_B > 0 the k -> 0 integrand tends to the
finite constant T t^2 / (4 u) (D = 1) or vanishes (D >= 2), so all
interacting configurations converge.  At a_B = 0 exactly the integrand goes
as k^(D-3), which is infrared-divergent for D <= 2; those configurations are
refused with :class:`InfraredDivergenceError`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .dispersion import angular_interference, bogoliubov, group_velocity
from .params import GasParameters, Model, ProbeGeometry, ReducedParameters, reduce_parameters
from .quadrature import (
    ENVELOPE_RADIUS,
    QuadratureConvergenceError,
    QuadratureResult,
    integrate_semi_infinite,
)

__all__ = [
    "DecoherenceCurve",
    "InfraredDivergenceError",
    "ThermalDivergenceError",
    "thermal_factor",
    "gamma_at",
    "gamma_prime_at",
    "gamma_curve",
    "gamma_via_spectrum",
    "free_gas_gamma_at",
    "default_time_grid",
]

ArrayLike = Union[float, np.ndarray]


class ThermalDivergenceError(ValueError):
    """coth(E / 2 k_B T) evaluated at E = 0 with T > 0."""


class InfraredDivergenceError(ValueError):
    """Free gas (a_B = 0) at T > 0 in D <= 2: the k-integral diverges at k = 0."""


def thermal_factor(E: ArrayLike, T: float) -> ArrayLike:
    """Thermal occupation factor: 1 at T = 0, coth(E / 2T) at T > 0 (internal units).

    Monotone decreasing in E, tends to 1 for E >> T and to 2T/E for E << T.
    """
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0.0:
        return np.ones_like(E, dtype=float) if isinstance(E, np.ndarray) else 1.0
    arr = np.asarray(E, dtype=float)
    if np.any(arr < 0):
        raise ValueError("E must be non-negative")
    if np.any(arr == 0):
        raise ThermalDivergenceError("thermal factor diverges at E = 0 for T > 0")
    out = 1.0 / np.tanh(arr / (2.0 * T))
    return out if isinstance(E, np.ndarray) else float(out)


def _check_infrared(reduced: ReducedParameters) -> None:
    if reduced.T > 0 and reduced.u == 0.0 and reduced.D <= 2:
        raise InfraredDivergenceError(
            f"a_B = 0 with T > 0 in D = {reduced.D} is infrared-divergent "
            "(integrand ~ k^(D-3) at small k); no cutoff-independent Gamma exists. "
            "Use a_B > 0 or T = 0."
        )


def _envelope(reduced: ReducedParameters, k: np.ndarray) -> np.ndarray:
    """Time-independent part of the integrand: k^(D-1) e^(-k^2/2) (eps/E) W th, divided by E-powers later."""
    E = bogoliubov(k, reduced.u)
    base = k ** (reduced.D - 1) * np.exp(-0.5 * k * k)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(k > 0, k * k / E, 0.0)   # eps/E -> 0 as k -> 0 for u > 0; -> 1 for u = 0
    if reduced.u == 0.0:
        ratio = np.ones_like(k)
    out = base * ratio
    if reduced.model is Model.I:
        out = out * angular_interference(k * reduced.L, reduced.D)
    if reduced.T > 0:
        out = out * thermal_factor(E, reduced.T)
    return out


def _frequency_hint(reduced: ReducedParameters, t: float) -> Callable[[np.ndarray], np.ndarray]:
    extra = 2.0 * reduced.L if reduced.model is Model.I else 0.0

    def hint(k: np.ndarray) -> np.ndarray:
        k = np.maximum(np.asarray(k, dtype=float), 1e-300)
        return group_velocity(k, reduced.u) * t + extra

    return hint


def _integrate(reduced, integrand, t, rel_tol, abs_tol):
    return integrate_semi_infinite(
        integrand,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        envelope_scale=1.0,
        local_frequency=_frequency_hint(reduced, t),
    )


def gamma_at(
    geometry: ProbeGeometry,
    gas: GasParameters,
    t: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-12,
) -> QuadratureResult:
    """Gamma(t) at one time (internal units)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    reduced = reduce_parameters(gas, geometry)
    _check_infrared(reduced)
    if t == 0.0 or reduced.coupling == 0.0:
        return QuadratureResult(0.0, 0.0, 1)
    C = reduced.coupling

    def integrand(k: np.ndarray) -> np.ndarray:
        E = bogoliubov(k, reduced.u)
        with np.errstate(divide="ignore", invalid="ignore"):
            osc = np.where(E > 0, np.sin(0.5 * E * t) ** 2 / (E * E), 0.25 * t * t)
        return C * _envelope(reduced, k) * osc

    return _integrate(reduced, integrand, t, rel_tol, abs_tol)


def gamma_prime_at(
    geometry: ProbeGeometry,
    gas: GasParameters,
    t: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-12,
) -> QuadratureResult:
    """dGamma/dt at one time, via the analytic derivative of the time factor."""
    if t < 0:
        raise ValueError("t must be non-negative")
    reduced = reduce_parameters(gas, geometry)
    _check_infrared(reduced)
    if t == 0.0 or reduced.coupling == 0.0:
        return QuadratureResult(0.0, 0.0, 1)
    C = reduced.coupling

    def integrand(k: np.ndarray) -> np.ndarray:
        E = bogoliubov(k, reduced.u)
        with np.errstate(divide="ignore", invalid="ignore"):
            osc = np.where(E > 0, np.sin(E * t) / (2.0 * E), 0.5 * t)
        return C * _envelope(reduced, k) * osc

    return _integrate(reduced, integrand, t, rel_tol, abs_tol)


def free_gas_gamma_at(
    geometry: ProbeGeometry,
    gas: GasParameters,
    t: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-12,
) -> QuadratureResult:
    """Dedicated free-gas (a_B = 0) evaluation with E_k = k^2 substituted analytically.

    Independent of the Bogoliubov code path; used to validate the a_B -> 0
    limit.  T > 0 is only integrable in 3D (see module notes).
    """
    if gas.a_B != 0.0:
        raise ValueError("free_gas_gamma_at requires a_B = 0")
    if t < 0:
        raise ValueError("t must be non-negative")
    reduced = reduce_parameters(gas, geometry)
    _check_infrared(reduced)
    if t == 0.0 or reduced.coupling == 0.0:
        return QuadratureResult(0.0, 0.0, 1)
    C = reduced.coupling

    def integrand(k: np.ndarray) -> np.ndarray:
        e = k * k
        with np.errstate(divide="ignore", invalid="ignore"):
            osc = np.where(e > 0, np.sin(0.5 * e * t) ** 2 / (e * e), 0.25 * t * t)
        out = k ** (reduced.D - 1) * np.exp(-0.5 * e) * osc
        if reduced.model is Model.I:
            out = out * angular_interference(k * reduced.L, reduced.D)
        if reduced.T > 0:
            out = out * thermal_factor(e, reduced.T)
        return C * out

    def hint(k: np.ndarray) -> np.ndarray:
        base = 2.0 * np.asarray(k, dtype=float) * t
        return base + (2.0 * reduced.L if reduced.model is Model.I else 0.0)

    return integrate_semi_infinite(
        integrand, rel_tol=rel_tol, abs_tol=abs_tol, envelope_scale=1.0, local_frequency=hint
    )


@dataclass(frozen=True)
class DecoherenceCurve:
    """Sampled Gamma, Gamma' and coherence on a time grid, with quadrature errors."""

    times: np.ndarray
    gamma: np.ndarray
    gamma_prime: np.ndarray
    coherence: np.ndarray
    error_estimates: np.ndarray
    gamma_prime_errors: np.ndarray
    failed: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        n = len(self.times)
        if self.failed is None:
            object.__setattr__(self, "failed", np.zeros(n, dtype=bool))
        arrays = (self.gamma, self.gamma_prime, self.coherence, self.error_estimates,
                  self.gamma_prime_errors, self.failed)
        if any(len(arr) != n for arr in arrays):
            raise ValueError("curve arrays must share the time grid length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")


def default_time_grid(t_min: float = 1e-3, t_max: float = 50.0, n: int = 400) -> np.ndarray:
    """Log-spaced default grid resolving both the t^2 regime and the plateaus."""
    return np.geomspace(t_min, t_max, n)


def gamma_curve(
    geometry: ProbeGeometry,
    gas: GasParameters,
    times: Optional[np.ndarray] = None,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-12,
) -> DecoherenceCurve:
    """Evaluate Gamma and Gamma' over a grid; per-point failures are flagged, not raised."""
    if times is None:
        times = default_time_grid()
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a non-empty 1-D grid")
    if times[0] < 0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be non-negative and strictly increasing")
    reduced = reduce_parameters(gas, geometry)
    _check_infrared(reduced)

    n = len(times)
    gamma = np.empty(n)
    gamma_err = np.empty(n)
    gprime = np.empty(n)
    gprime_err = np.empty(n)
    failed = np.zeros(n, dtype=bool)
    for i, t in enumerate(times):
        try:
            res = gamma_at(geometry, gas, float(t), rel_tol, abs_tol)
        except QuadratureConvergenceError as exc:
            res = exc.best
            failed[i] = True
        gamma[i], gamma_err[i] = res.value, res.abs_error_estimate
        try:
            res = gamma_prime_at(geometry, gas, float(t), rel_tol, abs_tol)
        except QuadratureConvergenceError as exc:
            res = exc.best
            failed[i] = True
        gprime[i], gprime_err[i] = res.value, res.abs_error_estimate
    return DecoherenceCurve(
        times=times,
        gamma=gamma,
        gamma_prime=gprime,
        coherence=np.exp(-gamma),
        error_estimates=gamma_err,
        gamma_prime_errors=gprime_err,
        failed=failed,
    )


def gamma_via_spectrum(
    J: Callable[[np.ndarray], np.ndarray],
    t: float,
    T: float = 0.0,
    omega_cutoff: float = 102.0,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-12,
) -> QuadratureResult:
    """Gamma(t) through the frequency route, int dw J(w) th(w,T) (1 - cos wt) / (2 w^2).

    The (1 - cos)/2 factor is computed as sin^2(wt/2) to avoid cancellation.
    ``omega_cutoff`` is the frequency by which J has decayed to numerical
    irrelevance (the integrator's geometric tail extension covers anything
    left beyond it).  The spectral provider must be integrable at w -> 0,
    guaranteed for the package's own spectra, which vanish as a positive
    power.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0.0:
        return QuadratureResult(0.0, 0.0, 1)

    def integrand(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            kernel = np.where(w > 0, (np.sin(0.5 * w * t) / w) ** 2, 0.25 * t * t)
        out = J(w) * kernel
        if T > 0:
            out = out * thermal_factor(np.maximum(w, 1e-300), T)
        return out

    return integrate_semi_infinite(
        integrand,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        envelope_scale=omega_cutoff / ENVELOPE_RADIUS,
        local_frequency=lambda w: np.full_like(np.asarray(w, dtype=float), t),
    )
