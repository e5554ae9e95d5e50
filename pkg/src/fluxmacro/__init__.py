"""Macroscopicity of flux-qubit superpositions built on BCS pair states.

The package computes the disconnected-variance measure M of a two-branch
superposition from the per-mode branch overlaps, bounds it through the
instanton action of the flux potential, propagates a magnetic
inductance renormalization into that bound, and turns M into Cramer-Rao
sensitivity limits.  A set of scalar kernel identities (Matsubara sums,
parity integrals, Bickley functions) backs the derivation chain with
independently checkable numerics.

Most entry points live in the submodules; the names re-exported here cover
the everyday surface.  ``fluxmacro.cli`` provides the command line and
``fluxmacro.service`` the HTTP wrapper.
"""

from .bcs import (
    MaterialParams,
    MomentumShell,
    coefficient_grid,
    lambda_from_shell,
    maxvar_coefficients,
    mode_overlap,
    pair_amplitudes,
    uniform_shell,
)
from .constants import CONST, PHI_0, joule_to_kelvin, kelvin_to_joule
from .errors import CapacityError, ConfigError, DomainError, PotentialShapeError
from .hybrid import HybridGeometry, hybrid_scan, inductance_renormalization
from .instanton import (
    InstantonResult,
    SfqParams,
    amplification_factor,
    flux_potential,
    instanton_action,
)
from .kernels import matsubara_double_sum, run_kernel_checks
from .macro import (
    MacroReport,
    SuperpositionSpec,
    bound_tightness_check,
    brute_force_max_variance,
    macroscopicity_closed_form,
    macroscopicity_upper_bound,
    two_level_gap,
    variance_of_canonical_H,
)
from .metrology import CrbReport, flux_crb, phase_crb
from .reproduce import reproduction_rows, rows_passed

__version__ = "0.1.0"

__all__ = [
    "CONST",
    "PHI_0",
    "CapacityError",
    "ConfigError",
    "CrbReport",
    "DomainError",
    "HybridGeometry",
    "InstantonResult",
    "MacroReport",
    "MaterialParams",
    "MomentumShell",
    "PotentialShapeError",
    "SfqParams",
    "SuperpositionSpec",
    "amplification_factor",
    "bound_tightness_check",
    "brute_force_max_variance",
    "coefficient_grid",
    "flux_crb",
    "flux_potential",
    "hybrid_scan",
    "inductance_renormalization",
    "instanton_action",
    "joule_to_kelvin",
    "kelvin_to_joule",
    "lambda_from_shell",
    "macroscopicity_closed_form",
    "macroscopicity_upper_bound",
    "matsubara_double_sum",
    "maxvar_coefficients",
    "mode_overlap",
    "pair_amplitudes",
    "phase_crb",
    "reproduction_rows",
    "rows_passed",
    "run_kernel_checks",
    "two_level_gap",
    "uniform_shell",
    "variance_of_canonical_H",
    "__version__",
]
