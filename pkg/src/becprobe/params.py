"""Parameter records for the gas and the two probe architectures.

``GasParameters`` and ``ProbeGeometry`` hold SI quantities and carry the
derived coupling constants.  ``ReducedParameters`` is the dimensionless
bundle every integrand actually consumes; it is built once per
(gas, geometry) pair via :func:`reduce_parameters`.

Low-dimensional note: the s-wave coupling g_B = 4 pi hbar^2 a_B / m_B is a
3D quantity.  For D < 3 the D-dimensional density n0 (units m^-D) is mapped
onto an effective 3D density n0 / sigma^(3-D), i.e. the transverse
confinement scale of the quasi-low-dimensional cloud is sigma.  With that
convention the dimensionless mean-field energy is

    u = n0 g_B / E_sigma = 8 pi (a_B / sigma) (n0 sigma^D)

for every D, and dimensionality enters the integrals only through the
k-space measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .constants import CONSTANTS, A_RB
from .units import UnitSystem

__all__ = [
    "Model",
    "GasParameters",
    "ProbeGeometry",
    "ReducedParameters",
    "reduce_parameters",
    "unit_system",
    "default_gas",
    "default_geometry",
    "DEFAULT_SIGMA",
    "DEFAULT_DENSITIES",
]


class Model(str, Enum):
    """Probe architecture: double-well positional qubit (I) or single-site internal-state qubit (II)."""

    I = "I"
    II = "II"


# Defaults: not taken from any publication; chosen so the qualitative
# regimes (1D plateau vs unbounded growth, 3D crossover inside the
# [0.05, 1] a_Rb sweep, thermal fragility of model II at 10 nK) all appear.
DEFAULT_SIGMA = 45e-9
DEFAULT_DENSITIES = {
    1: 0.45e6,    # m^-1  (0.45 um^-1)
    2: 6.7e12,    # m^-2  (6.7 um^-2)
    3: 1.37e20,   # m^-3  (137 um^-3)
}


@dataclass(frozen=True)
class GasParameters:
    """Homogeneous condensed background gas."""

    m_B: float           # boson mass, kg
    a_B: float           # boson-boson scattering length, m
    n0: float            # condensate density, m^-D
    D: int               # dimension of the gas, 1, 2 or 3
    T: float = 0.0       # temperature, K

    def __post_init__(self) -> None:
        if not (math.isfinite(self.m_B) and self.m_B > 0):
            raise ValueError(f"m_B must be positive, got {self.m_B!r}")
        if not (math.isfinite(self.a_B) and self.a_B >= 0):
            raise ValueError(f"a_B must be non-negative, got {self.a_B!r}")
        if not (math.isfinite(self.n0) and self.n0 > 0):
            raise ValueError(f"n0 must be positive, got {self.n0!r}")
        if self.D not in (1, 2, 3):
            raise ValueError(f"D must be 1, 2 or 3, got {self.D!r}")
        if not (math.isfinite(self.T) and self.T >= 0):
            raise ValueError(f"T must be non-negative, got {self.T!r}")

    @property
    def g_B(self) -> float:
        """Boson-boson coupling 4 pi hbar^2 a_B / m_B (J m^3); zero iff a_B = 0."""
        return 4.0 * math.pi * CONSTANTS.hbar**2 * self.a_B / self.m_B

    def with_scattering_length(self, a_B: float) -> "GasParameters":
        return replace(self, a_B=a_B)

    def with_temperature(self, T: float) -> "GasParameters":
        return replace(self, T=T)


@dataclass(frozen=True)
class ProbeGeometry:
    """Impurity probe: masses, coupling length, trap width and (model I) well separation."""

    model: Model
    m_A: float                      # impurity mass, kg
    a_AB: float                     # impurity-boson scattering length, m
    sigma: float                    # Gaussian Wannier width, m
    L: Optional[float] = None       # well separation, m (model I only)
    interference_convention: str = "kL"   # "kL" (verbatim) or "kL_half"

    def __post_init__(self) -> None:
        if not isinstance(self.model, Model):
            object.__setattr__(self, "model", Model(self.model))
        if not (math.isfinite(self.m_A) and self.m_A > 0):
            raise ValueError(f"m_A must be positive, got {self.m_A!r}")
        if not (math.isfinite(self.a_AB) and self.a_AB >= 0):
            raise ValueError(f"a_AB must be non-negative, got {self.a_AB!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        if self.model is Model.I:
            if self.L is None or not (math.isfinite(self.L) and self.L > 0):
                raise ValueError("model I requires a positive well separation L")
        if self.interference_convention not in ("kL", "kL_half"):
            raise ValueError(
                f"interference_convention must be 'kL' or 'kL_half', got {self.interference_convention!r}"
            )

    def reduced_mass(self, m_B: float) -> float:
        return self.m_A * m_B / (self.m_A + m_B)

    def g_AB(self, m_B: float) -> float:
        """Impurity-boson coupling 4 pi hbar^2 a_AB / m_AB (J m^3)."""
        return 4.0 * math.pi * CONSTANTS.hbar**2 * self.a_AB / self.reduced_mass(m_B)


@dataclass(frozen=True)
class ReducedParameters:
    """Dimensionless bundle consumed by the integrands (internal units)."""

    D: int
    model: Model
    u: float              # mean-field energy n0 g_B / E_sigma
    coupling: float       # prefactor C_D = g_AB~^2 n0~ S_D / (2 pi)^D
    L: Optional[float]    # effective well separation in units of sigma (None for model II)
    T: float              # k_B T / E_sigma

    @property
    def sound_speed(self) -> float:
        """Low-k slope of the Bogoliubov branch, sqrt(2 u), internal units."""
        return math.sqrt(2.0 * self.u)


_SPHERE_SURFACE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


def unit_system(gas: GasParameters, geometry: ProbeGeometry) -> UnitSystem:
    return UnitSystem(sigma=geometry.sigma, m_B=gas.m_B)


def reduce_parameters(gas: GasParameters, geometry: ProbeGeometry) -> ReducedParameters:
    """Collapse SI parameter records into the dimensionless internal bundle."""
    sigma = geometry.sigma
    n0_tilde = gas.n0 * sigma**gas.D
    u = 8.0 * math.pi * (gas.a_B / sigma) * n0_tilde
    g_ab_tilde = 8.0 * math.pi * (geometry.a_AB / sigma) * (gas.m_B / geometry.reduced_mass(gas.m_B))
    coupling = g_ab_tilde**2 * n0_tilde * _SPHERE_SURFACE[gas.D] / (2.0 * math.pi) ** gas.D
    if geometry.model is Model.I:
        L_eff = geometry.L / sigma
        if geometry.interference_convention == "kL_half":
            L_eff *= 0.5
    else:
        L_eff = None
    T_int = unit_system(gas, geometry).to_internal(gas.T, "temperature") if gas.T > 0 else 0.0
    return ReducedParameters(D=gas.D, model=geometry.model, u=u, coupling=coupling, L=L_eff, T=T_int)


def default_gas(D: int, a_B: float = A_RB, T: float = 0.0) -> GasParameters:
    """Default gas: 87Rb at the package's per-dimension reference density."""
    return GasParameters(m_B=CONSTANTS.m_Rb87, a_B=a_B, n0=DEFAULT_DENSITIES[D], D=D, T=T)


def default_geometry(model: Model | str, L_over_sigma: float = 3.0) -> ProbeGeometry:
    """Default probe: 87Rb impurity, a_AB = a_Rb, sigma = 45 nm, L = 3 sigma."""
    model = Model(model)
    return ProbeGeometry(
        model=model,
        m_A=CONSTANTS.m_Rb87,
        a_AB=A_RB,
        sigma=DEFAULT_SIGMA,
        L=L_over_sigma * DEFAULT_SIGMA if model is Model.I else None,
    )
