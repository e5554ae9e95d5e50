import math

import numpy as np
import pytest

from fluxmacro.bcs import (
    MaterialParams,
    MomentumShell,
    coefficient_grid,
    grid_to_csv,
    lambda_from_shell,
    maxvar_coefficients,
    mode_overlap,
    pair_amplitudes,
    uniform_shell,
)
from fluxmacro.errors import DomainError
from fluxmacro.presets import ALUMINUM

DELTA = ALUMINUM.gap_Delta


def test_material_params_validation():
    with pytest.raises(ValueError):
        MaterialParams(
            gap_Delta=-1.0, fermi_energy=1.0, dos_at_fermi=1.0, debye_energy=1.0
        )
    with pytest.raises(ValueError):
        # gap must sit below the Debye window
        MaterialParams(
            gap_Delta=2.0, fermi_energy=1.0, dos_at_fermi=1.0, debye_energy=1.0
        )


def test_pair_amplitudes_normalized_everywhere():
    rng = np.random.default_rng(7)
    for _ in range(500):
        eps = float(rng.uniform(-1.0, 1.0)) * ALUMINUM.debye_energy
        qe = float(rng.uniform(0.0, 3.0)) * DELTA
        u, v = pair_amplitudes(eps, qe, ALUMINUM)
        assert 0.0 <= u <= 1.0 and 0.0 <= v <= 1.0
        assert u * u + v * v == pytest.approx(1.0, abs=1e-15)


def test_pair_amplitudes_deep_hole_branch_is_stable():
    # xi << -Delta: u ~ Delta / (2|xi|), naive W = xi + sqrt(...) cancels
    xi = -1e6 * DELTA
    u, v = pair_amplitudes(xi, 0.0, ALUMINUM)
    assert u == pytest.approx(DELTA / (2.0 * abs(xi)), rel=1e-9)
    assert v == pytest.approx(1.0, abs=1e-12)


def test_pair_amplitudes_at_fermi_level():
    u, v = pair_amplitudes(0.0, 0.0, ALUMINUM)
    assert u == pytest.approx(math.sqrt(0.5), rel=1e-15)
    assert v == pytest.approx(math.sqrt(0.5), rel=1e-15)


def test_mode_overlap_is_one_at_rest():
    assert mode_overlap(0.37 * DELTA, 0.0, ALUMINUM) == 1.0


def test_mode_overlap_known_value():
    # eps = 0, qe = Delta rotates the (u, v) angle from pi/4 to pi/8
    z = mode_overlap(0.0, DELTA, ALUMINUM)
    assert z == pytest.approx(math.cos(math.pi / 8.0), rel=1e-14)


def test_mode_overlap_in_unit_interval():
    rng = np.random.default_rng(11)
    for _ in range(300):
        eps = float(rng.uniform(-1.0, 1.0)) * ALUMINUM.debye_energy
        qe = float(rng.uniform(0.0, 2.0)) * DELTA
        z = mode_overlap(eps, qe, ALUMINUM)
        assert 0.0 < z <= 1.0


def test_mode_overlap_small_momentum_quadratic():
    # 1 - z <= (qe / Delta)^2, with an extra factor ~8 of slack at small qe
    for eps_frac in (-0.8, -0.2, 0.0, 0.3, 0.9):
        for qe_frac in (1e-4, 1e-3, 1e-2, 0.1):
            z = mode_overlap(eps_frac * ALUMINUM.debye_energy, qe_frac * DELTA, ALUMINUM)
            assert 1.0 - z <= qe_frac**2


def test_lambda_from_shell_accumulates_logs():
    shell = uniform_shell(5, ALUMINUM, 0.5 * DELTA)
    lam, xs = lambda_from_shell(shell, ALUMINUM)
    expected = -sum(
        math.log(mode_overlap(e, 0.5 * DELTA, ALUMINUM)) for e in shell.epsilons
    )
    assert lam == pytest.approx(expected, rel=1e-15)
    assert len(xs) == 5
    assert all(0.0 <= x < 1.0 for x in xs)
    # small-x series: 2*lambda = sum(x) + O(x^2)
    assert 2.0 * lam == pytest.approx(sum(xs), rel=5e-2)
    assert 2.0 * lam >= sum(xs)


def test_lambda_from_shell_rejects_energies_outside_debye_window():
    shell = MomentumShell(
        epsilons=(0.0, 2.0 * ALUMINUM.debye_energy), pair_momentum_energy=DELTA
    )
    with pytest.raises(DomainError):
        lambda_from_shell(shell, ALUMINUM)


def test_uniform_shell_layout():
    shell = uniform_shell(3, ALUMINUM, DELTA)
    w = ALUMINUM.debye_energy
    assert shell.epsilons == (-w, 0.0, w)
    assert shell.mode_count == 3.0
    single = uniform_shell(1, ALUMINUM, DELTA)
    assert single.epsilons == (0.0,)
    with pytest.raises(ValueError):
        uniform_shell(0, ALUMINUM, DELTA)


def test_maxvar_coefficients_unit_norm():
    rng = np.random.default_rng(23)
    for _ in range(300):
        eps = float(rng.uniform(-2.0, 2.0)) * DELTA
        qe = float(rng.uniform(0.05, 2.0)) * DELTA
        c_z, c_x, degenerate = maxvar_coefficients(eps, qe, ALUMINUM)
        assert not degenerate
        assert c_z * c_z + c_x * c_x == pytest.approx(1.0, abs=1e-12)


def test_maxvar_coefficients_degenerate_at_rest():
    c_z, c_x, degenerate = maxvar_coefficients(0.3 * DELTA, 0.0, ALUMINUM)
    assert degenerate
    assert math.isnan(c_z) and math.isnan(c_x)


def test_maxvar_coefficients_mirror_symmetry():
    # eps -> -eps - qe swaps the two xi values; u <-> v under xi -> -xi turns
    # u0^2 - uQ^2 into vQ^2 - v0^2 (the same number), while the c_x numerator
    # picks up a sign
    eps, qe = 0.6 * DELTA, 0.8 * DELTA
    a = maxvar_coefficients(eps, qe, ALUMINUM)
    b = maxvar_coefficients(-eps - qe, qe, ALUMINUM)
    assert b.c_z == pytest.approx(a.c_z, rel=1e-12)
    assert b.c_x == pytest.approx(-a.c_x, rel=1e-12)


def test_coefficient_grid_row_major_and_flags():
    eps_grid = [-DELTA, 0.0, DELTA]
    qe_grid = [0.0, DELTA]
    rows = coefficient_grid(eps_grid, qe_grid, ALUMINUM)
    assert len(rows) == 6
    # eps is the slow index
    assert [r.eps_over_Delta for r in rows] == [-1.0, -1.0, 0.0, 0.0, 1.0, 1.0]
    assert [r.qe_over_Delta for r in rows] == [0.0, 1.0] * 3
    for r in rows:
        assert r.degenerate == (r.qe_over_Delta == 0.0)
        if not r.degenerate:
            assert not math.isnan(r.c_z)


def test_coefficient_grid_rejects_empty_axes():
    with pytest.raises(ValueError):
        coefficient_grid([], [DELTA], ALUMINUM)
    with pytest.raises(ValueError):
        coefficient_grid([DELTA], [], ALUMINUM)


def test_grid_to_csv_format():
    rows = coefficient_grid([0.0], [0.0, DELTA], ALUMINUM)
    text = grid_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "eps_over_Delta,qe_over_Delta,c_z,c_x,degenerate"
    assert len(lines) == 3
    assert text.endswith("\n")
    assert lines[1].split(",")[2] == "nan"
    assert lines[1].endswith("true")
    assert lines[2].endswith("false")
    # decimal separator is a point, never a comma-in-number
    for line in lines[1:]:
        assert len(line.split(",")) == 5
