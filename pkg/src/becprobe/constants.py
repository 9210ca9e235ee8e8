"""Physical constants (CODATA 2018) used throughout the package.

All values are SI. ``m_Rb87`` is derived from the atomic mass of 87Rb
(86.909 180 531 u) and the CODATA 2018 atomic mass constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["PhysicalConstants", "CONSTANTS", "A_RB"]


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable table of the constants the simulation depends on."""

    hbar: float = 1.054571817e-34      # reduced Planck constant, J s
    k_B: float = 1.380649e-23          # Boltzmann constant, J/K (exact)
    a0: float = 5.29177210903e-11      # Bohr radius, m
    m_Rb87: float = 86.909180531 * 1.66053906660e-27  # 87Rb mass, kg

    def __post_init__(self) -> None:
        for name in ("hbar", "k_B", "a0", "m_Rb87"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"constant {name} must be finite and positive, got {value!r}")


CONSTANTS = PhysicalConstants()

# Reference scattering length of 87Rb, a_Rb = 100 a0.  Scattering lengths in
# configs and sweeps are usually quoted as multiples of this.
A_RB = 100.0 * CONSTANTS.a0
