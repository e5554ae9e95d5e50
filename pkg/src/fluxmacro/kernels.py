"""Scalar reductions of the imaginary-time pair-propagator algebra.

Everything here is a small, independently checkable identity: the Nambu
trace factors of the bare Gor'kov propagator, parity integrals that must
vanish, the fermionic double Matsubara sum against its zero-temperature
closed form, the equal-time energy integral with its arctan closed form, the
Bickley function Ki_1, and the T=0 gap-equation ratio.  The conformance
report at the bottom runs all of them against their stated tolerances.

Conventions.  Denominators are the positive-definite hbar^2 w^2 + eps^2 +
Delta^2 of the propagator.  Energy integrals use a constant density of
states rho(E_F) over the Debye window, which is what makes the odd-parity
integrands genuinely odd.  The closed form of the Matsubara sum decays as
exp(-2 E |tau| / hbar) with E = sqrt(eps^2 + Delta^2): the rate follows from
the residue evaluation of the factorized sums, and the direct finite-beta
sum is required to converge to it.  Equal time is approached from tau -> 0+,
which fixes the square-wave term of the resummed sine sum to +1 at tau = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.special import k0 as _bessel_k0

from .bcs import MaterialParams
from .constants import HBAR
from .errors import DomainError

#: beyond this phase, sin/cos arguments have lost their low bits entirely
_PHASE_LIMIT = 1e12


@dataclass(frozen=True)
class KernelEval:
    value: float
    method: str
    truncation: int | None = None
    beta_hbar: float | None = None

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "truncation": self.truncation,
            "beta_hbar": self.beta_hbar,
        }


class EpsIntegralResult(NamedTuple):
    local_value: float
    check_arctan: bool


def gorkov_trace(
    omega_n: float, eps: float, mat: MaterialParams, channel: str
) -> float:
    """Nambu trace factor of the bare propagator at one Matsubara frequency.

    Identity channel: 2 hbar w / (hbar^2 w^2 + eps^2 + Delta^2), quoted as
    the real coefficient of the (purely imaginary) trace.  TauZ channel:
    -2 eps / (same denominator).  Units 1/J.
    """
    den = (HBAR * omega_n) ** 2 + eps * eps + mat.gap_Delta**2
    if channel == "Identity":
        return 2.0 * HBAR * omega_n / den
    if channel == "TauZ":
        return -2.0 * eps / den
    raise ValueError(f"unknown channel {channel!r}; use 'Identity' or 'TauZ'")


def _half_window_nodes(n_points: int, upper: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, upper]."""
    x, w = leggauss(n_points)
    return upper * 0.5 * (x + 1.0), w * upper * 0.5


def first_order_vanishing(
    omega_m: float,
    mat: MaterialParams,
    n_points: int = 201,
    numerator: str = "odd",
) -> float:
    """Energy integral rho(E_F) * int_{-hw_D}^{+hw_D} deps num(eps) / (hbar^2
    w_m^2 + eps^2 + Delta^2).

    With ``numerator="odd"`` (num = eps) or ``"cubed"`` (num = eps^3) the
    integrand is odd and the result must vanish; quadrature nodes are
    mirrored in pairs so the cancellation is exact in floating point as
    well.  ``"abs"`` (num = |eps|) is the strictly positive control the
    residual is compared against.
    """
    if n_points < 16:
        raise ValueError("n_points must be at least 16")
    if numerator not in ("odd", "abs", "cubed"):
        raise ValueError(f"unknown numerator {numerator!r}")
    den_const = (HBAR * omega_m) ** 2 + mat.gap_Delta**2
    eps_nodes, weights = _half_window_nodes(n_points, mat.debye_energy)

    def num(e: float) -> float:
        if numerator == "odd":
            return e
        if numerator == "abs":
            return abs(e)
        return e * e * e

    total = 0.0
    for e, w in zip(eps_nodes, weights):
        den = den_const + e * e
        total += w * (num(e) / den + num(-e) / den)
    return float(mat.dos_at_fermi * total)


def parity_vanishing_check(
    mat: MaterialParams,
    n_points: int = 201,
    symmetric: bool = True,
    weight: str = "gorkov",
) -> float:
    """Radial-odd reduction of the momentum parity integral: int dk k g(|k|)
    over a symmetric interval, with g even in k.

    g is built from products of Gor'kov trace factors evaluated on the even
    dispersion eps(k) = hbar w_D (2 k^2 - 1) at two fixed frequencies (the
    TauZ factor enters squared, keeping g even), or g = 1 with
    ``weight="constant"``.  ``symmetric=False`` integrates over [0, 1] only,
    the control case that must come out nonzero.
    """
    if n_points < 16:
        raise ValueError("n_points must be at least 16")
    if weight not in ("gorkov", "constant"):
        raise ValueError(f"unknown weight {weight!r}")
    w_a = mat.gap_Delta / HBAR
    w_b = 2.0 * mat.gap_Delta / HBAR

    def g(k: float) -> float:
        if weight == "constant":
            return 1.0
        eps = mat.debye_energy * (2.0 * k * k - 1.0)
        t_id = gorkov_trace(w_a, eps, mat, "Identity") * gorkov_trace(
            w_b, eps, mat, "Identity"
        )
        t_z = gorkov_trace(w_a, eps, mat, "TauZ") * gorkov_trace(w_b, eps, mat, "TauZ")
        return t_id + t_z

    k_nodes, weights = _half_window_nodes(n_points, 1.0)
    total = 0.0
    for k, w in zip(k_nodes, weights):
        if symmetric:
            total += w * (k * g(k) + (-k) * g(-k))
        else:
            total += w * k * g(k)
    return float(total)


def _direct_sum_natural(
    eps_n: float, tau_n: float, beta_n: float, truncation: int
) -> float:
    """Factorized double Matsubara sum in units hbar = Delta = 1.

    The double sum splits into two single sums,

        B(t)  = (2/beta) sum_n cos(w_n t) / (w_n^2 + E^2)
        SA(t) = (2/beta) sum_n w_n sin(w_n t) / (w_n^2 + E^2),

    and the value is SA^2 + (1 - eps^2) B^2.  SA's 1/w_n tail is resummed
    exactly through the fermionic square wave (2/beta) sum sin(w_n t)/w_n =
    1/2 for 0 <= t < beta, leaving a sum that converges like 1/w^3.
    """
    n = np.arange(truncation, dtype=float)
    w = (2.0 * n + 1.0) * math.pi / beta_n
    e_sq = eps_n * eps_n + 1.0
    den = w * w + e_sq
    b_sum = (2.0 / beta_n) * float(np.sum(np.cos(w * tau_n) / den))
    sa_sum = 0.5 - (2.0 * e_sq / beta_n) * float(np.sum(np.sin(w * tau_n) / (w * den)))
    return sa_sum * sa_sum + (1.0 - eps_n * eps_n) * b_sum * b_sum


def matsubara_double_sum(
    tau: float,
    eps: float,
    mat: MaterialParams,
    method: str = "ClosedForm",
    truncation: int | None = None,
    beta_hbar: float | None = None,
) -> KernelEval:
    """Double fermionic Matsubara sum of the pair-propagator trace product.

    ClosedForm is the zero-temperature limit

        (1/4 hbar^2) (1 + (Delta^2 - eps^2)/(Delta^2 + eps^2))
            * exp(-2 sqrt(eps^2 + Delta^2) |tau| / hbar),

    DirectSum the explicit finite-beta sum truncated at ``truncation``
    positive frequencies, evaluated in factorized form.  DirectSum requires
    0 <= |tau| < beta_hbar (one imaginary-time period) and raises a range
    error when the phase arguments grow beyond what float64 can represent.
    """
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    delta = mat.gap_Delta
    if method == "ClosedForm":
        e_total = math.hypot(eps, delta)
        middle = 1.0 + (delta * delta - eps * eps) / (delta * delta + eps * eps)
        value = (
            middle / (4.0 * HBAR * HBAR) * math.exp(-2.0 * e_total * abs(tau) / HBAR)
        )
        return KernelEval(value=value, method="ClosedForm")
    if method != "DirectSum":
        raise ValueError(f"unknown method {method!r}")
    if truncation is None or truncation < 1:
        raise ValueError("DirectSum requires truncation >= 1")
    if beta_hbar is None or not beta_hbar > 0.0:
        raise ValueError("DirectSum requires beta_hbar > 0")
    if abs(tau) >= beta_hbar:
        raise DomainError(
            f"|tau| = {abs(tau)!r} s lies outside the imaginary-time period "
            f"[0, {beta_hbar!r}) s"
        )
    eps_n = eps / delta
    tau_n = abs(tau) * delta / HBAR
    beta_n = beta_hbar * delta / HBAR
    if not all(map(math.isfinite, (eps_n, tau_n, beta_n))):
        raise DomainError("range error: inputs overflow the working precision")
    phase = (2.0 * truncation + 1.0) * math.pi * tau_n / beta_n
    if phase > _PHASE_LIMIT:
        raise DomainError(
            "range error: Matsubara phase arguments exceed float64 resolution "
            f"(needed {phase:.3e})"
        )
    natural = _direct_sum_natural(eps_n, tau_n, beta_n, int(truncation))
    value = natural / (HBAR * HBAR)
    if not math.isfinite(value):
        raise DomainError("range error: direct sum overflowed")
    return KernelEval(
        value=value,
        method="DirectSum",
        truncation=int(truncation),
        beta_hbar=beta_hbar,
    )


def eps_integral_identities(mat: MaterialParams) -> EpsIntegralResult:
    """Equal-time energy integral against its arctan closed form.

    Left side: int_{-hw_D}^{+hw_D} deps (1/4 hbar^2)(1 + (Delta^2 - eps^2) /
    (Delta^2 + eps^2)) by adaptive quadrature.  Right side: (Delta/hbar^2)
    arctan(hbar w_D / Delta).  The flag is true when they agree to 1e-10
    relative; the value must be positive.
    """
    delta = mat.gap_Delta
    upper = mat.debye_energy

    def integrand(e: float) -> float:
        return (
            0.25
            / (HBAR * HBAR)
            * (1.0 + (delta * delta - e * e) / (delta * delta + e * e))
        )

    local_value, _err = quad(
        integrand,
        -upper,
        upper,
        epsabs=0.0,
        epsrel=1e-12,
        limit=200,
        points=(-delta, 0.0, delta),
    )
    if not local_value > 0.0:
        raise DomainError(f"equal-time integral must be positive; got {local_value!r}")
    closed = delta / (HBAR * HBAR) * math.atan(upper / delta)
    flag = abs(local_value - closed) <= 1e-10 * abs(closed)
    return EpsIntegralResult(local_value=local_value, check_arctan=flag)


def _ki1_cosh_integrand(u: float, x: float) -> float:
    # exp(-x cosh u) / cosh u with explicit overflow handling
    if u > 700.0:
        if x > 0.0:
            return 0.0
        return 2.0 * math.exp(-u) / (1.0 + math.exp(-2.0 * u))
    c = math.cosh(u)
    expo = x * c
    if expo > 745.0:
        return 0.0
    return math.exp(-expo) / c


def bickley_ki1(x: float, rel_tol: float = 1e-10, route: str = "cosh") -> float:
    """Bickley function Ki_1(x) = int_x^inf K_0(t) dt.

    The default route uses the integral representation
    Ki_1(x) = int_0^inf exp(-x cosh u) / cosh u du; ``route="bessel"``
    integrates scipy's K_0 directly, which serves as the independent
    cross-check in the tests.  Ki_1(0) = pi/2 and d/dx Ki_1 = -K_0.
    """
    if x < 0.0:
        raise DomainError("x must be nonnegative")
    if not 0.0 < rel_tol <= 1e-2:
        raise ValueError("rel_tol must lie in (0, 1e-2]")
    if route == "cosh":
        value, _err = quad(
            _ki1_cosh_integrand,
            0.0,
            np.inf,
            args=(x,),
            epsabs=1e-300,
            epsrel=rel_tol,
            limit=200,
        )
        return value
    if route == "bessel":
        value, _err = quad(
            _bessel_k0, x, np.inf, epsabs=1e-300, epsrel=rel_tol, limit=200
        )
        return value
    raise ValueError(f"unknown route {route!r}; use 'cosh' or 'bessel'")


def gap_equation_ratio(V0_rho: float) -> float:
    """T=0 gap-equation ratio hbar w_D / Delta = sinh(V0 rho(E_F))."""
    if not V0_rho > 0.0:
        raise DomainError("V0_rho must be positive")
    if V0_rho > 700.0:
        raise DomainError(f"range error: sinh({V0_rho!r}) overflows float64")
    return math.sinh(V0_rho)


def run_kernel_checks(mat: MaterialParams) -> dict:
    """Evaluate every identity at its stated tolerance and report.

    Returns a JSON-ready dict with one entry per identity (values, residual,
    tolerance, pass flag) and an overall verdict.
    """
    delta = mat.gap_Delta
    checks: list[dict] = []

    closed = matsubara_double_sum(HBAR / delta, 0.5 * delta, mat, method="ClosedForm")
    direct = matsubara_double_sum(
        HBAR / delta,
        0.5 * delta,
        mat,
        method="DirectSum",
        truncation=100_000,
        beta_hbar=200.0 * HBAR / delta,
    )
    rel = abs(direct.value - closed.value) / abs(closed.value)
    checks.append(
        {
            "identity": "matsubara_direct_vs_closed",
            "values": {"ClosedForm": closed.value, "DirectSum": direct.value},
            "residual": rel,
            "tolerance": 1e-3,
            "passed": rel <= 1e-3,
        }
    )

    local_value, flag = eps_integral_identities(mat)
    arctan_closed = delta / (HBAR * HBAR) * math.atan(mat.debye_energy / delta)
    checks.append(
        {
            "identity": "eps_integral_arctan",
            "values": {"Quadrature": local_value, "ClosedForm": arctan_closed},
            "residual": abs(local_value - arctan_closed) / abs(arctan_closed),
            "tolerance": 1e-10,
            "passed": bool(flag),
        }
    )

    ki_zero = bickley_ki1(0.0)
    res = abs(ki_zero - 0.5 * math.pi) / (0.5 * math.pi)
    checks.append(
        {
            "identity": "bickley_endpoint",
            "values": {"Quadrature": ki_zero, "ClosedForm": 0.5 * math.pi},
            "residual": res,
            "tolerance": 1e-8,
            "passed": res <= 1e-8,
        }
    )

    h = 1e-4
    fd = (bickley_ki1(1.0 + h) - bickley_ki1(1.0 - h)) / (2.0 * h)
    res = abs(fd + float(_bessel_k0(1.0)))
    checks.append(
        {
            "identity": "bickley_derivative",
            "values": {"CentralDifference": fd, "MinusK0": -float(_bessel_k0(1.0))},
            "residual": res,
            "tolerance": 1e-6,
            "passed": res <= 1e-6,
        }
    )

    residual = first_order_vanishing(delta / HBAR, mat, numerator="odd")
    control = first_order_vanishing(delta / HBAR, mat, numerator="abs")
    ratio = abs(residual) / control
    checks.append(
        {
            "identity": "first_order_vanishing",
            "values": {"Residual": residual, "Control": control},
            "residual": ratio,
            "tolerance": 1e-12,
            "passed": ratio <= 1e-12,
        }
    )

    residual = parity_vanishing_check(mat)
    control = parity_vanishing_check(mat, symmetric=False)
    ratio = abs(residual) / abs(control)
    checks.append(
        {
            "identity": "parity_vanishing",
            "values": {"Residual": residual, "Control": control},
            "residual": ratio,
            "tolerance": 1e-12,
            "passed": ratio <= 1e-12,
        }
    )

    got = gorkov_trace(delta / HBAR, delta, mat, "TauZ")
    want = -2.0 / (3.0 * delta)
    res = abs(got - want) / abs(want)
    checks.append(
        {
            "identity": "gorkov_trace_point",
            "values": {"Computed": got, "ClosedForm": want},
            "residual": res,
            "tolerance": 1e-12,
            "passed": res <= 1e-12,
        }
    )

    ratio_val = gap_equation_ratio(3.0)
    res = abs(math.asinh(ratio_val) - 3.0) / 3.0
    checks.append(
        {
            "identity": "gap_equation_round_trip",
            "values": {"sinh(3)": ratio_val, "asinh(sinh(3))": math.asinh(ratio_val)},
            "residual": res,
            "tolerance": 1e-12,
            "passed": res <= 1e-12,
        }
    )

    return {
        "material": {
            "gap_Delta": mat.gap_Delta,
            "fermi_energy": mat.fermi_energy,
            "dos_at_fermi": mat.dos_at_fermi,
            "debye_energy": mat.debye_energy,
        },
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
