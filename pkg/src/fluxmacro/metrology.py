"""Quantum Cramer-Rao bounds tied to the macroscopicity.

For phase estimation generated by the maximal-variance observable, one shot
of the superposition limits the standard deviation to

    dtheta >= (4 M |J|)^(-1/2),

interpolating between the standard quantum limit O(|J|^-1/2) at M = 1 and
Heisenberg scaling O(|J|^-1) at M = |J|.  For external-flux estimation the
bound per flux quantum is (1/sqrt(M)) / (2 sqrt(modes)), where ``modes``
counts the momentum modes inside the pairing cutoff; that count is a user
input, nothing in the theory fixes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_ENDPOINT_RTOL = 1e-6


@dataclass(frozen=True)
class CrbReport:
    bound_theta: float
    bound_flux_over_Phi0: float | None
    regime: str

    def as_dict(self) -> dict:
        return {
            "bound_theta": self.bound_theta,
            "bound_flux_over_Phi0": self.bound_flux_over_Phi0,
            "regime": self.regime,
        }


def _classify(m_value: float, mode_count: float) -> str:
    if abs(m_value - 1.0) <= _ENDPOINT_RTOL:
        return "SQL"
    if abs(m_value - mode_count) <= _ENDPOINT_RTOL * mode_count:
        return "Heisenberg"
    return "Intermediate"


def phase_crb(
    m_value: float, mode_count: float, modes_in_cutoff: int | None = None
) -> CrbReport:
    """Phase-estimation bound (4 M |J|)^(-1/2) with its scaling regime.

    The regime endpoints are matched with relative tolerance 1e-6; a
    single-mode state (|J| = 1, M = 1) is reported as SQL, where the two
    scalings coincide.  Pass ``modes_in_cutoff`` to fill in the flux bound
    as well.
    """
    if m_value < 1.0 - 1e-9 or m_value > mode_count * (1.0 + 1e-9):
        raise DomainError(
            f"M = {m_value!r} lies outside [1, mode_count = {mode_count!r}]"
        )
    bound = 1.0 / math.sqrt(4.0 * m_value * mode_count)
    flux = flux_crb(m_value, modes_in_cutoff) if modes_in_cutoff else None
    return CrbReport(
        bound_theta=bound,
        bound_flux_over_Phi0=flux,
        regime=_classify(m_value, mode_count),
    )


def flux_crb(m_value: float, modes_in_cutoff: int) -> float:
    """Flux-estimation bound in units of the flux quantum:
    (1/sqrt(M)) * 1/(2 sqrt(modes_in_cutoff))."""
    if m_value < 1.0 - 1e-9:
        raise DomainError(f"M = {m_value!r} must be at least 1")
    if modes_in_cutoff < 1:
        raise DomainError("modes_in_cutoff must be at least 1")
    return 1.0 / (math.sqrt(m_value) * 2.0 * math.sqrt(modes_in_cutoff))
