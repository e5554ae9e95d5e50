"""Named parameter sets used by the reproduction table and the CLI.

Circuit presets carry (E_J, E_L, E_C) in kelvin; the aluminum material set
collects the standard BCS numbers for Al, and the geometry presets describe
the magnet-sphere layup of the hybrid estimates.  All of these are starting
points: the CLI accepts overrides for each field.
"""

from __future__ import annotations

from .bcs import MaterialParams
from .hybrid import HybridGeometry
from .instanton import SfqParams

#: high-impedance fluxonium-style circuit: shallow junction, stiff inductor
LUKENS = SfqParams.from_kelvin(76.0, 645.0, 9e-3)

#: rf-SQUID-style circuit with a much stiffer inductive confinement; the
#: charging energy only sets the overall action scale and drops out of every
#: dimensionless ratio, so a nominal 1 K is used
WILHELM = SfqParams.from_kelvin(38.0, 2.0e4, 1.0)

#: aluminum: gap 2.0e-23 J (~125 ueV), Fermi energy 11.7 eV, density of
#: states per volume at the Fermi level, Debye energy hbar*w_D
ALUMINUM = MaterialParams(
    gap_Delta=2.0e-23,
    fermi_energy=1.87e-18,
    dos_at_fermi=4.58e46,
    debye_energy=3.21e-20,
)

#: 1 um magnetic sphere 3 um from the loop, 2e6 polarized moments
BASELINE_GEOMETRY = HybridGeometry(N_B=2.0e6, R_S=1.0e-6, D=3.0e-6)

#: sphere touching the loop plane (R_S = D) with 5e6 moments; the quartic
#: geometry factor saturates at 1 here
EXTREME_GEOMETRY = HybridGeometry(N_B=5.0e6, R_S=1.0e-6, D=1.0e-6)

CIRCUITS: dict[str, SfqParams] = {
    "lukens": LUKENS,
    "wilhelm": WILHELM,
}

GEOMETRIES: dict[str, HybridGeometry] = {
    "baseline": BASELINE_GEOMETRY,
    "extreme": EXTREME_GEOMETRY,
}

MATERIALS: dict[str, MaterialParams] = {
    "aluminum": ALUMINUM,
}
