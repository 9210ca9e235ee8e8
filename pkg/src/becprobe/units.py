"""Internal dimensionless unit system.

Everything downstream works in units built from the Gaussian trap width
``sigma`` of the probe and the gas boson mass ``m_B``:

* length unit:    sigma
* energy unit:    E_sigma = hbar^2 / (2 m_B sigma^2)
* time unit:      hbar / E_sigma
* momentum unit:  1 / sigma
* temperature:    maps to k_B T / E_sigma (dimensionless)

In these units the free dispersion is exactly kappa^2, k sigma and
t E_sigma / hbar are order unity for the regimes of interest, and the
quadratures stay well conditioned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import CONSTANTS

__all__ = ["UnitSystem", "KINDS"]

KINDS = ("length", "energy", "time", "momentum", "temperature")


def _paired_energy_unit(energy_unit: float, time_unit: float) -> float:
    """Nudge the energy unit by ulps so energy_unit * time_unit == hbar exactly."""
    hbar = CONSTANTS.hbar
    candidate = energy_unit
    for _ in range(4):
        if candidate * time_unit == hbar:
            return candidate
        candidate = math.nextafter(candidate, math.inf if candidate * time_unit < hbar else -math.inf)
    return energy_unit


@dataclass(frozen=True)
class UnitSystem:
    """Conversion factors between SI and internal units for one (sigma, m_B) pair."""

    sigma: float
    m_B: float
    length_unit: float = field(init=False)
    energy_unit: float = field(init=False)
    time_unit: float = field(init=False)
    momentum_unit: float = field(init=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be finite and positive, got {self.sigma!r}")
        if not (math.isfinite(self.m_B) and self.m_B > 0):
            raise ValueError(f"m_B must be finite and positive, got {self.m_B!r}")
        hbar = CONSTANTS.hbar
        energy = hbar * hbar / (2.0 * self.m_B * self.sigma * self.sigma)
        time = hbar / energy
        energy = _paired_energy_unit(energy, time)
        object.__setattr__(self, "length_unit", self.sigma)
        object.__setattr__(self, "energy_unit", energy)
        object.__setattr__(self, "time_unit", time)
        object.__setattr__(self, "momentum_unit", 1.0 / self.sigma)

    def _factor(self, kind: str) -> float:
        if kind == "length":
            return self.length_unit
        if kind == "energy":
            return self.energy_unit
        if kind == "time":
            return self.time_unit
        if kind == "momentum":
            return self.momentum_unit
        if kind == "temperature":
            return self.energy_unit / CONSTANTS.k_B
        raise ValueError(f"unknown quantity kind {kind!r}; expected one of {KINDS}")

    def to_internal(self, value: float, kind: str) -> float:
        """Convert an SI quantity to the dimensionless internal value."""
        if not math.isfinite(value):
            raise ValueError(f"cannot convert non-finite value {value!r}")
        return value / self._factor(kind)

    def from_internal(self, value: float, kind: str) -> float:
        """Inverse of :meth:`to_internal`."""
        if not math.isfinite(value):
            raise ValueError(f"cannot convert non-finite value {value!r}")
        return value * self._factor(kind)

    def describe(self) -> dict:
        """Unit system summary embedded in output metadata."""
        return {
            "sigma_m": self.sigma,
            "m_B_kg": self.m_B,
            "length_unit_m": self.length_unit,
            "energy_unit_J": self.energy_unit,
            "time_unit_s": self.time_unit,
            "momentum_unit_per_m": self.momentum_unit,
            "temperature_unit_K": self.energy_unit / CONSTANTS.k_B,
        }
