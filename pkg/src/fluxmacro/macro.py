"""Macroscopicity of two-branch product-state superpositions.

A state |G> ~ (x) |phi_j>  +  (x) |psi_j> over |J| two-level modes is fully
characterized, for our purposes, by the per-mode overlaps z_j = <phi_j|psi_j>.
Its macroscopicity

    M = 1 + sum_{j != k} sqrt((1-|z_j|^2)(1-|z_k|^2)) / (|J| (1 + Re prod z_j))

is the maximal variance of a unit-norm 1-local observable, divided by the
mode count.  It ranges from 1 (product-like) to |J| (GHZ-like).

This module provides the closed form, the matching canonical-observable
variance, an independent brute-force maximizer over all 1-local observables
(the oracle used by the tests), the AM-GM upper bound in terms of the overlap
exponent lambda, a tightness probe for that bound, and the quasi-degenerate
two-level gap model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, DomainError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@dataclass(frozen=True)
class SuperpositionSpec:
    """Per-mode branch overlaps z_j of a two-branch superposition."""

    overlaps: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "overlaps", tuple(complex(z) for z in self.overlaps)
        )
        if len(self.overlaps) < 1:
            raise ValueError("at least one mode is required")
        for z in self.overlaps:
            if abs(z) > 1.0 + 1e-12:
                raise ValueError(f"overlap {z!r} exceeds unit modulus")

    @property
    def mode_count(self) -> int:
        return len(self.overlaps)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "SuperpositionSpec":
        """Build from [[re, im], ...] as used by the JSON interface."""
        out = []
        for i, p in enumerate(pairs):
            if len(p) != 2:
                raise ValueError(f"overlap entry {i} must be a [re, im] pair")
            out.append(complex(float(p[0]), float(p[1])))
        return cls(tuple(out))


@dataclass(frozen=True)
class MacroReport:
    """Closed-form evaluation: M, the overlap exponent lambda = -ln|prod z|,
    the AM-GM upper bound at that lambda, and the normalization
    N = 2 + 2 Re prod z."""

    M: float
    lam: float
    upper_bound: float
    normalization: float

    def as_dict(self) -> dict:
        return {
            "M": self.M,
            "lambda": self.lam,
            "upper_bound": self.upper_bound,
            "normalization": self.normalization,
        }


class BoundTightness(NamedTuple):
    gap: float
    tight: bool


class TwoLevelGap(NamedTuple):
    gap: float
    expected_energy: float
    underflow: bool


def _product(overlaps: Sequence[complex]) -> complex:
    p = complex(1.0, 0.0)
    for z in overlaps:
        p *= z
    return p


def macroscopicity_closed_form(spec: SuperpositionSpec) -> MacroReport:
    """Evaluate M together with lambda, the upper bound, and the normalization.

    The pair sum over j != k is folded into single sums,

        sum_{j != k} sqrt(x_j x_k) = (sum_j sqrt(x_j))^2 - sum_j x_j,

    with x_j = 1 - |z_j|^2, so the cost is linear in the mode count.

    Raises DomainError when 1 + Re prod z_j <= 0 (the superposition cannot be
    normalized for that phase configuration).
    """
    j_count = spec.mode_count
    x = [max(0.0, 1.0 - abs(z) ** 2) for z in spec.overlaps]
    s1 = sum(math.sqrt(xk) for xk in x)
    # The folded form can go slightly negative in floating point (e.g. a
    # single mode, where the cross sum is empty); the exact value never does.
    numerator = max(0.0, s1 * s1 - sum(x))
    re_prod = _product(spec.overlaps).real
    if 1.0 + re_prod <= 0.0:
        raise DomainError(
            f"1 + Re(prod z) = {1.0 + re_prod!r} is not positive; "
            "the superposition is unnormalizable"
        )
    m_value = 1.0 + numerator / (j_count * (1.0 + re_prod))
    lam = 0.0
    for z in spec.overlaps:
        a = abs(z)
        if a == 0.0:
            lam = math.inf
            break
        lam -= math.log(min(a, 1.0))
    return MacroReport(
        M=m_value,
        lam=lam,
        upper_bound=macroscopicity_upper_bound(lam, j_count),
        normalization=2.0 + 2.0 * re_prod,
    )


def variance_of_canonical_H(spec: SuperpositionSpec) -> float:
    """Variance |J| * M of the canonical maximal observable H = sum_j T^(j),
    T^(j) = (|phi><phi| - |psi><psi|) / sqrt(1 - |z_j|^2).

    T^(j) is undefined at |z_j| = 1, so identical branches are rejected.
    """
    for z in spec.overlaps:
        if abs(z) >= 1.0:
            raise DomainError(
                f"overlap {z!r} has unit modulus; the canonical observable "
                "is undefined for identical branches"
            )
    return spec.mode_count * macroscopicity_closed_form(spec).M


def macroscopicity_upper_bound(lam: float, mode_count: float) -> float:
    """AM-GM upper bound M <= 2*lam/(1+e^-lam) * (1 - 1/|Lambda|) + 1.

    Monotone increasing in lam; tends to 2*lam + 1 as lam -> inf with
    |Lambda| -> inf.  ``mode_count`` may be ``math.inf``.
    """
    if lam < 0.0:
        raise DomainError("lambda must be nonnegative")
    if mode_count < 1:
        raise DomainError("mode_count must be at least 1")
    factor = 1.0 - 1.0 / mode_count if math.isfinite(mode_count) else 1.0
    if factor == 0.0:
        return 1.0
    if math.isinf(lam):
        return math.inf
    return 2.0 * lam / (1.0 + math.exp(-lam)) * factor + 1.0


def bound_tightness_check(x_list: Sequence[float]) -> BoundTightness:
    """Gap between the upper bound and M for real positive overlaps
    z_k = sqrt(1 - x_k), plus a flag for the near-degenerate spread condition
    max|x_k - x_k'| < 1/|Lambda|.

    The bound-minus-M gap is guaranteed below 1 under the spread condition in
    the regime the bound is built for, x_k << 1, where 2*lambda and sum(x_k)
    agree to first order.  Far from that regime (x_k of order 1) the step
    sum(x) <= 2*lambda in the bound's derivation is loose and the gap can
    exceed 1 even for identical x_k; the flag reports only the spread
    condition and the caller judges the regime.
    """
    xs = [float(x) for x in x_list]
    if not xs:
        return BoundTightness(gap=0.0, tight=True)
    for x in xs:
        if not 0.0 <= x < 1.0:
            raise DomainError(f"x values must lie in [0, 1); got {x!r}")
    spec = SuperpositionSpec(tuple(math.sqrt(1.0 - x) for x in xs))
    report = macroscopicity_closed_form(spec)
    tight = (max(xs) - min(xs)) < 1.0 / len(xs)
    return BoundTightness(gap=report.upper_bound - report.M, tight=tight)


def two_level_gap(gamma: float, lam: float) -> TwoLevelGap:
    """Spectral gap and branch-state energy of the quasi-degenerate two-level
    model in the nonorthogonal basis of the two circulating-current states.

    The generalized pencil is

        A = (gamma/2) * [[1+s^2, 2s], [2s, 1+s^2]],   S = [[1, s], [s, 1]],

    with s = e^-lam.  Its parity symmetry fixes the eigenvectors at
    (1, +-1)/sqrt(2) for every (gamma, lam), so the eigenvalues are the
    Rayleigh quotients (a +- b)/(1 +- c) of the matrix entries, and the gap
    is formed as 2*(b - a*c)/((1+c)(1-c)), which avoids differencing two
    nearly equal eigenvalues when s is small.  The reference values these
    must reproduce are gamma*e^-lam and (gamma/2)(1 + e^-2lam).

    When e^-lam underflows to zero the gap is reported as 0.0 with the
    underflow flag set.
    """
    if gamma <= 0.0:
        raise DomainError("gamma must be positive")
    if lam < 0.0:
        raise DomainError("lambda must be nonnegative")
    s = math.exp(-lam)
    a = 0.5 * gamma * (1.0 + s * s)
    b = gamma * s
    c = s
    if c == 1.0:
        # singular Gram limit (identical basis states): eigenvalues 0 and gamma
        gap = gamma
    else:
        gap = 2.0 * (b - a * c) / ((1.0 + c) * (1.0 - c))
    return TwoLevelGap(
        gap=gap,
        expected_energy=a,
        underflow=(s == 0.0 and lam > 0.0),
    )


def _real_overlaps(spec: SuperpositionSpec) -> list[float]:
    out = []
    for z in spec.overlaps:
        if abs(z.imag) > 1e-12:
            raise DomainError(
                "the brute-force oracle works in the real-overlap gauge; "
                f"got {z!r}"
            )
        out.append(min(max(z.real, -1.0), 1.0))
    return out


def _state_moments(zs: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """First and second Pauli moments of |G> for real overlaps.

    Mode j realizes its branch pair as |phi> = |0> and
    |psi> = z|0> + sqrt(1-z^2)|1>; any other realization is locally
    unitarily equivalent.  Returns m[j, a] = <sigma_a^(j)> and
    c2[j, k, a, b] = <sigma_a^(j) sigma_b^(k)> (j != k; diagonal left zero).
    """
    j_count = len(zs)
    phi = np.array([1.0, 0.0], dtype=complex)
    left = np.array([1.0], dtype=complex)
    right = np.array([1.0], dtype=complex)
    for z in zs:
        psi = np.array([z, math.sqrt(max(0.0, 1.0 - z * z))], dtype=complex)
        left = np.kron(left, phi)
        right = np.kron(right, psi)
    state = left + right
    state = state / np.linalg.norm(state)

    t = state.reshape((2,) * j_count)
    flat = state
    applied = np.empty((j_count, 3, flat.size), dtype=complex)
    for j in range(j_count):
        for a in range(3):
            arr = np.tensordot(_PAULI[a], t, axes=([1], [j]))
            applied[j, a] = np.moveaxis(arr, 0, j).reshape(-1)

    m = np.empty((j_count, 3))
    for j in range(j_count):
        for a in range(3):
            m[j, a] = np.vdot(flat, applied[j, a]).real
    c2 = np.zeros((j_count, j_count, 3, 3))
    for j in range(j_count):
        for k in range(j_count):
            if j == k:
                continue
            for a in range(3):
                for b in range(3):
                    c2[j, k, a, b] = np.vdot(applied[j, a], applied[k, b]).real
    return m, c2


def _variance(bloch: np.ndarray, m: np.ndarray, c2: np.ndarray) -> float:
    """Var of H = sum_j n_j . sigma^(j) from precomputed moments."""
    mean = float(np.sum(bloch * m))
    cross = float(np.einsum("ja,jkab,kb->", bloch, c2, bloch))
    return bloch.shape[0] + cross - mean * mean


def _bloch(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)],
        axis=1,
    )


def brute_force_max_variance(
    spec: SuperpositionSpec,
    starts: int = 16,
    tol: float = 1e-6,
    seed: int = 0,
) -> tuple[float, list[tuple[float, float]]]:
    """Maximize Var(sum_j n_j . sigma^(j)) over unit Bloch vectors n_j by
    direct search on the explicitly constructed state vector.

    This is the independent oracle for the closed form: the state lives in
    dimension 2^|J| (hence the |J| <= 6 capacity limit), the per-mode and
    pair Pauli moments are computed once, and a multi-start coordinate ascent
    over the 2|J| angles refines each coordinate with a coarse scan followed
    by golden-section steps.  Identity components are omitted from the
    per-mode observables: they leave the variance unchanged while consuming
    operator-norm budget, so the optimum always has none.

    Deterministic for fixed (spec, starts, tol, seed).  Returns the best
    variance found and the per-mode angles (theta_j, phi_j).
    """
    if spec.mode_count > 6:
        raise CapacityError(
            f"oracle limited to 6 modes (state dimension 64); got {spec.mode_count}"
        )
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    if starts < 1:
        raise DomainError("starts must be at least 1")

    zs = _real_overlaps(spec)
    j_count = len(zs)
    m, c2 = _state_moments(zs)
    rng = np.random.default_rng(seed)

    best_value = -math.inf
    best_angles = np.zeros((j_count, 2))

    for _ in range(starts):
        theta = rng.uniform(0.0, math.pi, j_count)
        phi = rng.uniform(0.0, 2.0 * math.pi, j_count)
        current = _variance(_bloch(theta, phi), m, c2)

        for _sweep in range(200):
            before = current
            for j in range(j_count):
                for which, angles, hi in ((0, theta, math.pi), (1, phi, 2.0 * math.pi)):
                    saved = angles[j]

                    def value_at(x: float) -> float:
                        angles[j] = x
                        v = _variance(_bloch(theta, phi), m, c2)
                        angles[j] = saved
                        return v

                    grid = np.linspace(0.0, hi, 17)
                    grid_vals = [value_at(x) for x in grid]
                    i = int(np.argmax(grid_vals))
                    lo_b = grid[max(i - 1, 0)]
                    hi_b = grid[min(i + 1, 16)]
                    c = hi_b - _GOLDEN * (hi_b - lo_b)
                    d = lo_b + _GOLDEN * (hi_b - lo_b)
                    fc, fd = value_at(c), value_at(d)
                    for _it in range(40):
                        if fc < fd:
                            lo_b, c, fc = c, d, fd
                            d = lo_b + _GOLDEN * (hi_b - lo_b)
                            fd = value_at(d)
                        else:
                            hi_b, d, fd = d, c, fc
                            c = hi_b - _GOLDEN * (hi_b - lo_b)
                            fc = value_at(c)
                    candidate = 0.5 * (lo_b + hi_b)
                    cand_val = value_at(candidate)
                    if cand_val > current:
                        angles[j] = candidate
                        current = cand_val
            if current - before < tol:
                break

        if current > best_value:
            best_value = current
            best_angles = np.stack([theta, phi], axis=1)

    return best_value, [(float(t), float(p)) for t, p in best_angles]
