"""Physical constants (2018 CODATA exact/recommended values) and unit helpers.

Everything downstream works in SI. Temperatures enter only through k_B, so the
Kelvin helpers here are the single place where energy <-> temperature
conversion happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Constants:
    """Bundle of SI constants used throughout the package."""

    hbar: float = 1.054571817e-34  # J s
    e_charge: float = 1.602176634e-19  # C
    m_e: float = 9.1093837015e-31  # kg
    mu_B: float = 9.2740100783e-24  # J/T
    mu_0: float = 1.25663706212e-6  # N/A^2
    k_B: float = 1.380649e-23  # J/K

    @property
    def flux_quantum(self) -> float:
        """Superconducting flux quantum Phi_0 = h/2e = pi*hbar/e, in Wb."""
        return math.pi * self.hbar / self.e_charge


CONST = Constants()

HBAR = CONST.hbar
E_CHARGE = CONST.e_charge
M_E = CONST.m_e
MU_B = CONST.mu_B
MU_0 = CONST.mu_0
K_B = CONST.k_B
PHI_0 = CONST.flux_quantum


def kelvin_to_joule(t_kelvin: float) -> float:
    """Convert an energy quoted in Kelvin (E/k_B) to Joules."""
    return t_kelvin * K_B


def joule_to_kelvin(e_joule: float) -> float:
    """Convert an energy in Joules to its Kelvin equivalent E/k_B."""
    return e_joule / K_B


def charging_energy_to_capacitance(e_c: float) -> float:
    """Capacitance C (farads) of a junction with charging energy E_C = e^2/2C."""
    if e_c <= 0.0:
        raise ValueError(f"charging energy must be positive, got {e_c!r}")
    return E_CHARGE**2 / (2.0 * e_c)


def capacitance_to_charging_energy(cap: float) -> float:
    """Charging energy E_C = e^2/2C (joules) for a capacitance in farads."""
    if cap <= 0.0:
        raise ValueError(f"capacitance must be positive, got {cap!r}")
    return E_CHARGE**2 / (2.0 * cap)
