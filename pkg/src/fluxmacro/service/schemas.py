"""Request and response models for the HTTP wrapper.

Wire conventions: energies come in as kelvin where the field name ends in
``_K`` and joules otherwise; a missing ``mode_count`` means infinitely many
modes, and non-finite floats are rendered as ``null`` on the way out because
strict JSON has no spelling for them.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class MacroRequest(BaseModel):
    """Branch overlaps, one [re, im] pair per mode."""

    overlaps: list[tuple[float, float]] = Field(min_length=1)


class MacroResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    M: float
    lam: float | None = Field(alias="lambda")
    upper_bound: float | None
    normalization: float
    variance: float | None


class InstantonRequest(BaseModel):
    """Circuit energies in kelvin, either from a named preset or explicit.

    Explicit fields override the preset field-by-field; with no preset all
    three energies are required.
    """

    preset: str | None = None
    E_J_K: float | None = None
    E_L_K: float | None = None
    E_C_K: float | None = None
    kappa_K: float = 0.0
    mode_count: float | None = Field(default=None, ge=1.0)
    convention: Literal["Literal", "ShiftedWells"] = "Literal"
    rel_tol: float = Field(default=1e-8, gt=0.0, le=1e-2)


class InstantonResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    S_over_hbar: float
    lam: float = Field(alias="lambda")
    M: float | None
    convention: str
    well_positions: list[float] | None = None
    barrier_height: float | None = None


class GeometrySpec(BaseModel):
    N_B: float = Field(gt=0.0)
    R_S: float = Field(gt=0.0)
    D: float = Field(gt=0.0)
    g_f: float = 2.0


class HybridScanRequest(BaseModel):
    circuit_preset: str = "lukens"
    material_preset: str = "aluminum"
    geometries: list[GeometrySpec] = Field(min_length=1)
    convention: Literal["Literal", "ShiftedWells"] = "Literal"
    rel_tol: float = Field(default=1e-8, gt=0.0, le=1e-2)


class HybridScanRowModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    N_B: float
    Rs_over_D: float
    kappa_energy: float
    kappa_energy_K: float
    lam: float = Field(alias="lambda")
    M: float | None
    amplification: float


class HybridScanResponse(BaseModel):
    rows: list[HybridScanRowModel]


class RangeSpec(BaseModel):
    start: float
    stop: float
    num: int = Field(ge=1)


class BcsGridRequest(BaseModel):
    """Grid ranges in units of the gap."""

    material_preset: str = "aluminum"
    eps_over_Delta: RangeSpec = RangeSpec(start=-3.0, stop=3.0, num=121)
    qe_over_Delta: RangeSpec = RangeSpec(start=0.0, stop=3.0, num=61)


class CrbRequest(BaseModel):
    M: float
    mode_count: float = Field(gt=0.0)
    modes_in_cutoff: int | None = Field(default=None, ge=1)


class CrbResponse(BaseModel):
    bound_theta: float
    bound_flux_over_Phi0: float | None
    regime: str


class ReproRowModel(BaseModel):
    claim: str
    reference: float
    computed: float
    rel_dev: float
    tolerance: float
    passed: bool
    flagged: bool


class ReproduceResponse(BaseModel):
    rows: list[ReproRowModel]
    all_passed: bool


class KernelCheckEntry(BaseModel):
    identity: str
    values: dict[str, float]
    residual: float
    tolerance: float
    passed: bool


class KernelsReport(BaseModel):
    material: dict[str, float]
    checks: list[KernelCheckEntry]
    all_passed: bool
