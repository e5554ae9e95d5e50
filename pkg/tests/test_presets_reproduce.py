import json
import math

import pytest

from fluxmacro.constants import joule_to_kelvin
from fluxmacro.presets import (
    ALUMINUM,
    BASELINE_GEOMETRY,
    CIRCUITS,
    EXTREME_GEOMETRY,
    GEOMETRIES,
    LUKENS,
    MATERIALS,
    WILHELM,
)
from fluxmacro.reproduce import (
    reproduction_rows,
    rows_passed,
    rows_to_csv,
    rows_to_json,
)


def test_preset_tables_are_consistent():
    assert CIRCUITS["lukens"] is LUKENS
    assert CIRCUITS["wilhelm"] is WILHELM
    assert MATERIALS["aluminum"] is ALUMINUM
    assert GEOMETRIES["baseline"] is BASELINE_GEOMETRY
    assert GEOMETRIES["extreme"] is EXTREME_GEOMETRY


def test_lukens_circuit_energies():
    assert joule_to_kelvin(LUKENS.E_J) == pytest.approx(76.0, rel=1e-12)
    assert joule_to_kelvin(LUKENS.E_L) == pytest.approx(645.0, rel=1e-12)
    assert joule_to_kelvin(LUKENS.E_C) == pytest.approx(9e-3, rel=1e-12)
    assert LUKENS.kappa_energy == 0.0
    assert math.isinf(LUKENS.mode_count)


def test_wilhelm_circuit_ratios():
    assert WILHELM.E_J / WILHELM.E_C == pytest.approx(38.0, rel=1e-12)
    assert WILHELM.E_L / WILHELM.E_C == pytest.approx(2.0e4, rel=1e-12)


def test_aluminum_constants():
    assert ALUMINUM.gap_Delta == 2.0e-23
    assert ALUMINUM.dos_at_fermi == 4.58e46
    assert ALUMINUM.debye_energy == 3.21e-20
    assert ALUMINUM.gap_Delta < ALUMINUM.debye_energy


def test_geometries():
    assert BASELINE_GEOMETRY.R_S / BASELINE_GEOMETRY.D == pytest.approx(1.0 / 3.0)
    assert EXTREME_GEOMETRY.R_S == EXTREME_GEOMETRY.D


def test_reproduction_rows_pass():
    rows = reproduction_rows()
    by_claim = {r.claim: r for r in rows}
    assert rows_passed(rows)
    assert set(by_claim) == {
        "C2_scale",
        "kappa_energy_baseline",
        "M_lukens",
        "M_wilhelm",
        "M_hybrid_doubled",
        "amplification_doubled",
        "M_extreme",
        "flux_ratio_extreme",
    }
    for claim in (
        "C2_scale",
        "kappa_energy_baseline",
        "M_lukens",
        "M_wilhelm",
        "M_hybrid_doubled",
        "amplification_doubled",
    ):
        row = by_claim[claim]
        assert not row.flagged
        assert row.passed, f"{claim} deviates by {row.rel_dev:.3%}"


def test_reproduction_flagged_rows_are_informational():
    rows = reproduction_rows()
    by_claim = {r.claim: r for r in rows}
    extreme = by_claim["M_extreme"]
    assert extreme.flagged
    # our evaluation of the extreme point lands far above the quoted figure;
    # the row reports that honestly instead of gating on it
    assert extreme.computed == pytest.approx(8866.2, rel=1e-3)
    assert not extreme.passed
    ratio = by_claim["flux_ratio_extreme"]
    assert ratio.flagged
    assert ratio.computed == pytest.approx(
        math.sqrt(by_claim["M_hybrid_doubled"].computed / extreme.computed), rel=1e-12
    )


def test_reproduction_relative_deviation_definition():
    rows = reproduction_rows()
    for r in rows:
        assert r.rel_dev == abs(r.computed - r.reference) / abs(r.reference)
        assert r.passed == (r.rel_dev <= r.tolerance)


def test_rows_to_json_round_trips():
    rows = reproduction_rows()
    payload = json.loads(rows_to_json(rows))
    assert payload["all_passed"] is True
    assert len(payload["rows"]) == len(rows)
    assert payload["rows"][0]["claim"] == "C2_scale"


def test_rows_to_csv_shape():
    rows = reproduction_rows()
    lines = rows_to_csv(rows).splitlines()
    assert lines[0] == "claim,reference,computed,rel_dev,tolerance,passed,flagged"
    assert len(lines) == len(rows) + 1
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 7
        assert cells[5] in ("true", "false")
        assert cells[6] in ("true", "false")
        float(cells[1]), float(cells[2])  # numeric columns parse


def test_reproduction_rows_deterministic():
    a = rows_to_json(reproduction_rows())
    b = rows_to_json(reproduction_rows())
    assert a == b
