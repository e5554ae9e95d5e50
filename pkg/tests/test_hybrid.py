import math
import warnings

import pytest

from fluxmacro.constants import PHI_0, joule_to_kelvin
from fluxmacro.hybrid import (
    HybridGeometry,
    coupling_c2,
    coupling_scale,
    hybrid_scan,
    inductance_renormalization,
    scan_to_csv,
)
from fluxmacro.instanton import instanton_action
from fluxmacro.presets import ALUMINUM, BASELINE_GEOMETRY, EXTREME_GEOMETRY, LUKENS


def test_geometry_validation():
    with pytest.raises(ValueError):
        HybridGeometry(N_B=-1e6, R_S=1e-6, D=1e-6)
    with pytest.raises(ValueError):
        HybridGeometry(N_B=1e6, R_S=-1e-6, D=1e-6)
    # an empty gas is a valid degenerate point: no atoms, no renormalization
    empty = HybridGeometry(N_B=0.0, R_S=1e-6, D=3e-6)
    assert inductance_renormalization(ALUMINUM, empty).kappa_energy == 0.0
    # a sphere overlapping the loop plane is suspicious but not invalid
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        HybridGeometry(N_B=1e6, R_S=2e-6, D=1e-6)
    assert len(caught) == 1
    # touching exactly stays quiet
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        HybridGeometry(N_B=1e6, R_S=1e-6, D=1e-6)
    assert len(caught) == 0


def test_coupling_scale_reference_value():
    scale = coupling_scale(ALUMINUM, g_f=2.0)
    assert scale == pytest.approx(1.57e-31, rel=1e-2)
    assert scale == pytest.approx(1.5696093039081402e-31, rel=1e-12)
    assert scale == pytest.approx(
        math.pi * 1.054571817e-34 * coupling_c2(ALUMINUM, 2.0) / 32.0, rel=1e-15
    )


def test_coupling_scale_g_factor_square():
    assert coupling_scale(ALUMINUM, g_f=4.0) == pytest.approx(
        4.0 * coupling_scale(ALUMINUM, g_f=2.0), rel=1e-14
    )


def test_renormalization_baseline_window():
    kappa, kappa_energy = inductance_renormalization(ALUMINUM, BASELINE_GEOMETRY)
    t_kelvin = joule_to_kelvin(kappa_energy)
    assert 500.0 <= t_kelvin <= 700.0
    assert kappa_energy == pytest.approx(7.751157056336492e-21, rel=1e-12)
    assert kappa == pytest.approx(kappa_energy / PHI_0**2, rel=1e-15)


def test_renormalization_scaling_laws():
    base = inductance_renormalization(ALUMINUM, BASELINE_GEOMETRY).kappa_energy
    doubled_n = HybridGeometry(
        N_B=2.0 * BASELINE_GEOMETRY.N_B, R_S=BASELINE_GEOMETRY.R_S, D=BASELINE_GEOMETRY.D
    )
    assert inductance_renormalization(ALUMINUM, doubled_n).kappa_energy == pytest.approx(
        4.0 * base, rel=1e-14
    )
    halved_d = HybridGeometry(
        N_B=BASELINE_GEOMETRY.N_B, R_S=BASELINE_GEOMETRY.R_S, D=BASELINE_GEOMETRY.D / 2.0
    )
    assert inductance_renormalization(ALUMINUM, halved_d).kappa_energy == pytest.approx(
        16.0 * base, rel=1e-14
    )


def test_renormalization_extreme_geometry():
    kappa_energy = inductance_renormalization(ALUMINUM, EXTREME_GEOMETRY).kappa_energy
    assert kappa_energy == pytest.approx(3.92402325977035e-18, rel=1e-12)


def test_hybrid_scan_rows():
    rows = hybrid_scan(
        LUKENS, ALUMINUM, [BASELINE_GEOMETRY, EXTREME_GEOMETRY], rel_tol=1e-8
    )
    assert len(rows) == 2
    base_row, extreme_row = rows
    assert base_row.N_B == 2.0e6
    assert base_row.Rs_over_D == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert extreme_row.Rs_over_D == 1.0
    # more renormalization, more action, more amplification
    assert extreme_row.lam > base_row.lam
    assert extreme_row.amplification > base_row.amplification > 1.0
    # row M agrees with running the instanton directly
    import dataclasses

    direct = instanton_action(
        dataclasses.replace(LUKENS, kappa_energy=base_row.kappa_energy),
        rel_tol=1e-8,
    )
    assert base_row.M == pytest.approx(direct.M, rel=1e-12)


def test_scan_to_csv_format():
    rows = hybrid_scan(LUKENS, ALUMINUM, [BASELINE_GEOMETRY], rel_tol=1e-8)
    text = scan_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "N_B,Rs_over_D,kappa_energy_K,lambda,M,amplification"
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert cells[0] == "2000000"
    assert float(cells[2]) == pytest.approx(561.414, rel=1e-5)
    assert text.endswith("\n")
