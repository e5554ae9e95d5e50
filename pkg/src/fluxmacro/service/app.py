"""FastAPI wrapper around the core package.

Every route is a thin adapter: validate with the pydantic models, call the
corresponding core function, sanitize non-finite floats to null.  Domain and
configuration failures surface as HTTP 400 with a typed detail; request
shape errors are FastAPI's usual 422.

Run it with ``fluxmacro serve`` or ``uvicorn fluxmacro.service.app:app``.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..bcs import coefficient_grid, grid_to_csv
from ..constants import joule_to_kelvin, kelvin_to_joule
from ..errors import ConfigError, DomainError
from ..hybrid import HybridGeometry, hybrid_scan
from ..instanton import SfqParams, instanton_action
from ..kernels import run_kernel_checks
from ..macro import (
    SuperpositionSpec,
    macroscopicity_closed_form,
    variance_of_canonical_H,
)
from ..metrology import phase_crb
from ..presets import CIRCUITS, MATERIALS
from ..reproduce import reproduction_rows, rows_passed
from . import schemas


def _finite_or_none(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return x


def _lookup(table: dict, name: str, kind: str):
    try:
        return table[name.lower()]
    except KeyError:
        raise ConfigError(
            f"unknown {kind} preset {name!r}; available: {sorted(table)}"
        ) from None


def _resolve_circuit(req: schemas.InstantonRequest) -> SfqParams:
    if req.preset is not None:
        base = _lookup(CIRCUITS, req.preset, "circuit")
        e_j = base.E_J if req.E_J_K is None else kelvin_to_joule(req.E_J_K)
        e_l = base.E_L if req.E_L_K is None else kelvin_to_joule(req.E_L_K)
        e_c = base.E_C if req.E_C_K is None else kelvin_to_joule(req.E_C_K)
    else:
        missing = [
            name
            for name in ("E_J_K", "E_L_K", "E_C_K")
            if getattr(req, name) is None
        ]
        if missing:
            raise ConfigError(
                f"missing circuit energies {missing}; give them or a preset"
            )
        e_j = kelvin_to_joule(req.E_J_K)
        e_l = kelvin_to_joule(req.E_L_K)
        e_c = kelvin_to_joule(req.E_C_K)
    mode_count = math.inf if req.mode_count is None else req.mode_count
    try:
        return SfqParams(
            E_J=e_j,
            E_L=e_l,
            E_C=e_c,
            kappa_energy=kelvin_to_joule(req.kappa_K),
            mode_count=mode_count,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def create_app() -> FastAPI:
    app = FastAPI(title="fluxmacro", version=__version__)

    @app.exception_handler(DomainError)
    async def _domain_error(_request: Request, exc: DomainError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "error_type": "domain"}
        )

    @app.exception_handler(ConfigError)
    async def _config_error(_request: Request, exc: ConfigError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "error_type": "config"}
        )

    @app.exception_handler(ValueError)
    async def _value_error(_request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "error_type": "config"}
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/macro", response_model=schemas.MacroResponse)
    def macro(req: schemas.MacroRequest) -> schemas.MacroResponse:
        spec = SuperpositionSpec.from_pairs(req.overlaps)
        report = macroscopicity_closed_form(spec)
        try:
            variance = variance_of_canonical_H(spec)
        except DomainError:
            variance = None
        return schemas.MacroResponse(
            M=report.M,
            lam=_finite_or_none(report.lam),
            upper_bound=_finite_or_none(report.upper_bound),
            normalization=report.normalization,
            variance=variance,
        )

    @app.post("/instanton", response_model=schemas.InstantonResponse)
    def instanton(req: schemas.InstantonRequest) -> schemas.InstantonResponse:
        params = _resolve_circuit(req)
        result = instanton_action(params, req.convention, req.rel_tol)
        return schemas.InstantonResponse(
            S_over_hbar=result.S_over_hbar,
            lam=result.lam,
            M=_finite_or_none(result.M),
            convention=result.convention,
            well_positions=(
                list(result.well_positions) if result.well_positions else None
            ),
            barrier_height=result.barrier_height,
        )

    @app.post("/hybrid/scan", response_model=schemas.HybridScanResponse)
    def hybrid(req: schemas.HybridScanRequest) -> schemas.HybridScanResponse:
        circuit = _lookup(CIRCUITS, req.circuit_preset, "circuit")
        material = _lookup(MATERIALS, req.material_preset, "material")
        geoms = [
            HybridGeometry(N_B=g.N_B, R_S=g.R_S, D=g.D, g_f=g.g_f)
            for g in req.geometries
        ]
        rows = hybrid_scan(circuit, material, geoms, req.convention, req.rel_tol)
        return schemas.HybridScanResponse(
            rows=[
                schemas.HybridScanRowModel(
                    N_B=r.N_B,
                    Rs_over_D=r.Rs_over_D,
                    kappa_energy=r.kappa_energy,
                    kappa_energy_K=joule_to_kelvin(r.kappa_energy),
                    lam=r.lam,
                    M=_finite_or_none(r.M),
                    amplification=r.amplification,
                )
                for r in rows
            ]
        )

    @app.post("/bcs/grid")
    def bcs_grid(req: schemas.BcsGridRequest) -> PlainTextResponse:
        material = _lookup(MATERIALS, req.material_preset, "material")
        delta = material.gap_Delta
        eps = np.linspace(
            req.eps_over_Delta.start * delta,
            req.eps_over_Delta.stop * delta,
            req.eps_over_Delta.num,
        )
        qe = np.linspace(
            req.qe_over_Delta.start * delta,
            req.qe_over_Delta.stop * delta,
            req.qe_over_Delta.num,
        )
        rows = coefficient_grid([float(e) for e in eps], [float(q) for q in qe], material)
        return PlainTextResponse(grid_to_csv(rows), media_type="text/csv")

    @app.get("/kernels/check", response_model=schemas.KernelsReport)
    def kernels_check(
        material: str = Query(default="aluminum"),
    ) -> schemas.KernelsReport:
        mat = _lookup(MATERIALS, material, "material")
        return schemas.KernelsReport(**run_kernel_checks(mat))

    @app.post("/crb", response_model=schemas.CrbResponse)
    def crb(req: schemas.CrbRequest) -> schemas.CrbResponse:
        report = phase_crb(req.M, req.mode_count, req.modes_in_cutoff)
        return schemas.CrbResponse(
            bound_theta=report.bound_theta,
            bound_flux_over_Phi0=report.bound_flux_over_Phi0,
            regime=report.regime,
        )

    @app.get("/reproduce", response_model=schemas.ReproduceResponse)
    def reproduce() -> schemas.ReproduceResponse:
        rows = reproduction_rows()
        return schemas.ReproduceResponse(
            rows=[schemas.ReproRowModel(**r.__dict__) for r in rows],
            all_passed=rows_passed(rows),
        )

    return app


app = create_app()
