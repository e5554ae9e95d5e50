"""Flux potential, instanton action, and the macroscopicity it implies.

The reduced-flux potential of a single-junction flux qubit at half a flux
quantum of bias, with an optional inductance renormalization, is

    V(f) = E_J cos(2 pi f) + (E_L + kappa_energy) f^2,      f = Phi / Phi_0.

The tunneling exponent between the two circulating-current branches is the
imaginary-time action

    S = integral dPhi sqrt(2 C V(Phi)),

which in reduced flux, using Phi_0 = pi hbar / e and C = e^2 / 2 E_C,
becomes exactly

    S / hbar = pi * integral df sqrt(V(f) / E_C).

Two integration conventions are exposed.  ``Literal`` integrates V as is
over the full period [-1/2, 1/2]; it is the convention that reproduces the
known reference values and is the default everywhere.  ``ShiftedWells`` is
the textbook WKB variant: it integrates sqrt(V - V_min) between the two
symmetric minima of V, which requires V to actually be a double well.

The overlap exponent is taken as lambda = S/hbar with the logarithmic
prefactor of the level-splitting formula dropped (nothing pins its scale),
and M is the AM-GM bound evaluated at that lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal as LiteralType

from scipy.integrate import quad
from scipy.optimize import bisect

from .constants import kelvin_to_joule
from .errors import DomainError, PotentialShapeError
from .macro import macroscopicity_upper_bound

Convention = LiteralType["Literal", "ShiftedWells"]

_SCAN_STEP = 1e-3
_ROOT_XTOL = 1e-12


@dataclass(frozen=True)
class SfqParams:
    """Energy scales of a flux qubit: Josephson (E_J = I_c Phi_0 / 2 pi),
    inductive (E_L = Phi_0^2 / 2L), charging (E_C = e^2 / 2C), and an optional
    additive inductive renormalization, all in joules.  ``mode_count`` is the
    |Lambda| handed to the macroscopicity bound; the default infinity drops
    the (1 - 1/|Lambda|) factor."""

    E_J: float
    E_L: float
    E_C: float
    kappa_energy: float = 0.0
    mode_count: float = math.inf

    def __post_init__(self) -> None:
        for name in ("E_J", "E_L", "E_C"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.kappa_energy < 0.0:
            raise ValueError("kappa_energy must be nonnegative")
        if self.mode_count < 1:
            raise ValueError("mode_count must be at least 1")

    @classmethod
    def from_kelvin(
        cls,
        E_J_K: float,
        E_L_K: float,
        E_C_K: float,
        kappa_K: float = 0.0,
        mode_count: float = math.inf,
    ) -> "SfqParams":
        """Build from energies quoted as temperatures E/k_B in kelvin."""
        return cls(
            E_J=kelvin_to_joule(E_J_K),
            E_L=kelvin_to_joule(E_L_K),
            E_C=kelvin_to_joule(E_C_K),
            kappa_energy=kelvin_to_joule(kappa_K),
            mode_count=mode_count,
        )


@dataclass(frozen=True)
class InstantonResult:
    S_over_hbar: float
    lam: float
    M: float
    convention: str
    well_positions: tuple[float, float] | None = None
    barrier_height: float | None = None

    def as_dict(self) -> dict:
        out = {
            "S_over_hbar": self.S_over_hbar,
            "lambda": self.lam,
            "M": self.M,
            "convention": self.convention,
        }
        if self.convention == "ShiftedWells":
            out["well_positions"] = list(self.well_positions or ())
            out["barrier_height"] = self.barrier_height
        return out


def flux_potential(f: float, p: SfqParams) -> float:
    """V(f) in joules at reduced flux f."""
    return p.E_J * math.cos(2.0 * math.pi * f) + (p.E_L + p.kappa_energy) * f * f


def _check_positive_on_path(p: SfqParams) -> None:
    """Literal convention needs V >= 0 across [-1/2, 1/2]; V is even, so
    scanning half suffices.  Reports the most negative scan point."""
    worst_f = 0.0
    worst_v = flux_potential(0.0, p)
    steps = int(round(0.5 / _SCAN_STEP))
    for i in range(steps + 1):
        f = min(i * _SCAN_STEP, 0.5)
        v = flux_potential(f, p)
        if v < worst_v:
            worst_f, worst_v = f, v
    if worst_v < 0.0:
        raise DomainError(
            f"V(f) < 0 on the integration path: V({worst_f}) = {worst_v!r} J; "
            "the Literal convention needs a nonnegative potential"
        )


def _literal_action(p: SfqParams, rel_tol: float) -> float:
    _check_positive_on_path(p)

    def integrand(f: float) -> float:
        v = flux_potential(f, p)
        if v < 0.0:
            raise DomainError(f"V(f) < 0 on the integration path at f = {f!r}")
        return math.sqrt(v / p.E_C)

    value, _err = quad(integrand, -0.5, 0.5, epsabs=0.0, epsrel=rel_tol, limit=200)
    return math.pi * value


def _find_well(p: SfqParams) -> float:
    """Positive minimum of V in (0, 1/2), located by a sign-change scan of V'
    followed by bisection."""

    def vprime(f: float) -> float:
        return (
            -2.0 * math.pi * p.E_J * math.sin(2.0 * math.pi * f)
            + 2.0 * (p.E_L + p.kappa_energy) * f
        )

    a = _SCAN_STEP
    while a < 0.5:
        b = min(a + _SCAN_STEP, 0.5)
        if vprime(a) < 0.0 <= vprime(b):
            return float(bisect(vprime, a, b, xtol=_ROOT_XTOL))
        a = b
    raise PotentialShapeError("no interior minimum of V found in (0, 1/2)")


def _shifted_action(p: SfqParams, rel_tol: float) -> tuple[float, float, float]:
    curvature_at_origin = 2.0 * (p.E_L + p.kappa_energy) - 4.0 * math.pi**2 * p.E_J
    if curvature_at_origin >= 0.0:
        raise PotentialShapeError(
            "V has a single well (V''(0) >= 0); the ShiftedWells convention "
            "needs two symmetric minima"
        )
    f_min = _find_well(p)
    v_min = flux_potential(f_min, p)

    def integrand(theta: float) -> float:
        # f = f_min sin(theta) absorbs the sqrt vanishing at the endpoints
        f = f_min * math.sin(theta)
        v = max(flux_potential(f, p) - v_min, 0.0)
        return math.sqrt(v / p.E_C) * f_min * math.cos(theta)

    value, _err = quad(
        integrand,
        -0.5 * math.pi,
        0.5 * math.pi,
        epsabs=0.0,
        epsrel=rel_tol,
        limit=200,
    )
    return math.pi * value, f_min, flux_potential(0.0, p) - v_min


def instanton_action(
    p: SfqParams,
    convention: Convention = "Literal",
    rel_tol: float = 1e-8,
) -> InstantonResult:
    """Instanton action S/hbar by adaptive quadrature, with lambda = S/hbar
    and M = macroscopicity_upper_bound(lambda, p.mode_count)."""
    if not 0.0 < rel_tol <= 1e-2:
        raise ValueError(f"rel_tol must lie in (0, 1e-2]; got {rel_tol!r}")
    if convention == "Literal":
        action = _literal_action(p, rel_tol)
        wells, barrier = None, None
    elif convention == "ShiftedWells":
        action, f_min, barrier = _shifted_action(p, rel_tol)
        wells = (-f_min, f_min)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return InstantonResult(
        S_over_hbar=action,
        lam=action,
        M=macroscopicity_upper_bound(action, p.mode_count),
        convention=convention,
        well_positions=wells,
        barrier_height=barrier,
    )


def amplification_factor(
    p_bare: SfqParams,
    kappa_energy: float,
    convention: Convention = "Literal",
    rel_tol: float = 1e-8,
) -> float:
    """Ratio M(with kappa_energy) / M(kappa_energy = 0) under one convention.

    At least 1 for kappa_energy >= 0, since the potential grows pointwise
    with the renormalization.
    """
    if kappa_energy < 0.0:
        raise DomainError("kappa_energy must be nonnegative")
    bare = instanton_action(replace(p_bare, kappa_energy=0.0), convention, rel_tol)
    dressed = instanton_action(
        replace(p_bare, kappa_energy=kappa_energy), convention, rel_tol
    )
    return dressed.M / bare.M
