"""Pairing amplitudes at finite pair momentum and the branch-overlap structure.

The two superposed branches of a screening-current state carry Cooper-pair
center-of-mass momenta Q and 0.  All functions here work with the
pair-momentum energy qe = hbar^2 ||Q||^2 / 2 m_e and single-particle energies
eps measured from the Fermi level, both in joules, so momentum grids never
appear explicitly.

A per-mode overlap z = u0*uQ + v0*vQ lies in (0, 1]; the total overlap
exponent is lambda = -sum(ln z_k).  The coefficients (c_z, c_x) parametrize
the single-mode observable whose total variance is maximal in the
superposition; they are undefined (0/0) when the two branches coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class MaterialParams:
    """Superconductor constants: gap, Fermi energy, DOS at the Fermi level,
    and the Debye energy hbar*omega_D.  All in SI."""

    gap_Delta: float
    fermi_energy: float
    dos_at_fermi: float
    debye_energy: float

    def __post_init__(self) -> None:
        for name in ("gap_Delta", "fermi_energy", "dos_at_fermi", "debye_energy"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if not self.gap_Delta < self.debye_energy:
            raise ValueError("gap_Delta must be smaller than debye_energy")


@dataclass(frozen=True)
class MomentumShell:
    """A discrete set of single-particle energies carrying one pair momentum.

    ``mode_count`` is the mode-space volume |Lambda| used by the
    macroscopicity bound; it defaults to the number of sampled energies but
    may be set larger (or ``math.inf``) when the sample stands in for a
    denser physical shell.
    """

    epsilons: tuple[float, ...]
    pair_momentum_energy: float
    mode_count: float = field(default=0.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        if len(self.epsilons) == 0:
            raise ValueError("epsilons must be nonempty")
        if self.pair_momentum_energy < 0.0:
            raise ValueError("pair_momentum_energy must be nonnegative")
        if self.mode_count == 0.0:
            object.__setattr__(self, "mode_count", float(len(self.epsilons)))
        if self.mode_count < 1:
            raise ValueError("mode_count must be at least 1")


class PairAmplitudes(NamedTuple):
    u: float
    v: float


class MaxVarCoefficients(NamedTuple):
    c_z: float
    c_x: float
    degenerate: bool


class GridPoint(NamedTuple):
    eps_over_Delta: float
    qe_over_Delta: float
    c_z: float
    c_x: float
    degenerate: bool


#: below this, the observable direction is treated as undefined (0/0)
DEGENERACY_CUTOFF = 1e-14


def pair_amplitudes(eps: float, qe: float, mat: MaterialParams) -> PairAmplitudes:
    """Occupation amplitudes (u, v) of a pair mode at energy eps and pair
    momentum energy qe.

    With xi = eps + qe and W = xi + sqrt(xi^2 + Delta^2),

        u = W / sqrt(Delta^2 + W^2),   v = Delta / sqrt(Delta^2 + W^2).

    Both lie in [0, 1] and u^2 + v^2 = 1 to machine precision.
    """
    delta = mat.gap_Delta
    xi = eps + qe
    if xi >= 0.0:
        w = xi + math.hypot(xi, delta)
    else:
        # equivalent form that avoids cancellation deep in the hole branch
        w = delta * delta / (math.hypot(xi, delta) - xi)
    d = math.hypot(delta, w)
    return PairAmplitudes(u=w / d, v=delta / d)


def mode_overlap(eps: float, qe: float, mat: MaterialParams) -> float:
    """Overlap z = u0*uQ + v0*vQ between the qe-carrying and resting branches
    of one pair mode.  Returns a real number in (0, 1]; exactly 1 at qe = 0."""
    if qe == 0.0:
        return 1.0
    u0, v0 = pair_amplitudes(eps, 0.0, mat)
    uq, vq = pair_amplitudes(eps, qe, mat)
    return u0 * uq + v0 * vq


def lambda_from_shell(
    shell: MomentumShell, mat: MaterialParams
) -> tuple[float, list[float]]:
    """Total overlap exponent lambda = -sum(ln z_k) over a momentum shell,
    together with the per-mode deficits x_k = 1 - z_k^2.

    The logarithm is evaluated exactly; the small-x series
    2*lambda = sum(x) + sum(x^2)/2 + ... is kept only as a test-side check.
    """
    lam = 0.0
    xs: list[float] = []
    for eps in shell.epsilons:
        if abs(eps) > mat.debye_energy:
            raise DomainError(
                f"shell energy {eps!r} J lies outside the Debye window "
                f"+-{mat.debye_energy!r} J"
            )
        z = mode_overlap(eps, shell.pair_momentum_energy, mat)
        if z <= 0.0:
            raise DomainError(f"mode overlap {z!r} at eps={eps!r} is not positive")
        lam -= math.log(z)
        xs.append(1.0 - z * z)
    return lam, xs


def uniform_shell(
    n: int, mat: MaterialParams, qe: float, mode_count: float | None = None
) -> MomentumShell:
    """A shell of n energies spaced uniformly over [-hbar*omega_D, +hbar*omega_D].

    Nothing in the underlying physics fixes a discretization, so this helper
    is a stated convention, not a derived one.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    w = mat.debye_energy
    if n == 1:
        eps = (0.0,)
    else:
        step = 2.0 * w / (n - 1)
        eps = tuple(-w + i * step for i in range(n))
    return MomentumShell(
        epsilons=eps,
        pair_momentum_energy=qe,
        mode_count=float(mode_count) if mode_count is not None else float(n),
    )


def maxvar_coefficients(eps: float, qe: float, mat: MaterialParams) -> MaxVarCoefficients:
    """Coefficients (c_z, c_x) of the per-mode observable with maximal total
    variance, or a degenerate flag when the branches coincide.

        c_z = (u0^2 - uQ^2) / den,   c_x = (u0*v0 - uQ*vQ) / den,
        den = |v0*uQ - u0*vQ|.

    The denominator equals sqrt(1 - z^2) algebraically but is computed in the
    factored form above, which keeps c_z^2 + c_x^2 = 1 to machine precision
    and makes the qe = 0 case an exact zero rather than a rounding artifact.
    """
    u0, v0 = pair_amplitudes(eps, 0.0, mat)
    uq, vq = pair_amplitudes(eps, qe, mat)
    den = abs(v0 * uq - u0 * vq)
    if den < DEGENERACY_CUTOFF:
        return MaxVarCoefficients(math.nan, math.nan, True)
    c_z = (u0 * u0 - uq * uq) / den
    c_x = (u0 * v0 - uq * vq) / den
    return MaxVarCoefficients(c_z, c_x, False)


def coefficient_grid(
    eps_grid: Sequence[float], qe_grid: Sequence[float], mat: MaterialParams
) -> list[GridPoint]:
    """Evaluate maxvar_coefficients over the product grid, row-major with eps
    as the slow index.  Degenerate cells carry NaN coefficients and a flag;
    no other cell may be NaN."""
    if len(eps_grid) == 0 or len(qe_grid) == 0:
        raise ValueError("grids must be nonempty")
    delta = mat.gap_Delta
    rows: list[GridPoint] = []
    for eps in eps_grid:
        for qe in qe_grid:
            cz, cx, deg = maxvar_coefficients(eps, qe, mat)
            rows.append(GridPoint(eps / delta, qe / delta, cz, cx, deg))
    return rows


def grid_to_csv(rows: Sequence[GridPoint]) -> str:
    """Render grid rows as CSV with shortest round-trip float formatting."""
    lines = ["eps_over_Delta,qe_over_Delta,c_z,c_x,degenerate"]
    for r in rows:
        lines.append(
            f"{r.eps_over_Delta!r},{r.qe_over_Delta!r},{r.c_z!r},{r.c_x!r},"
            f"{'true' if r.degenerate else 'false'}"
        )
    return "\n".join(lines) + "\n"
