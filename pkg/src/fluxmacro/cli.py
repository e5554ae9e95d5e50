"""Command line front end.

Subcommands map one-to-one onto the core entry points::

    fluxmacro reproduce                 recompute the headline table
    fluxmacro macro --z 0.9 --z 0.8     macroscopicity from branch overlaps
    fluxmacro instanton --preset lukens tunneling action and bound
    fluxmacro hybrid-scan --NB 2e6 --Rs 1e-6 --D 3e-6
    fluxmacro bcs-grid                  max-variance coefficient grid (CSV)
    fluxmacro kernels-check             kernel identity conformance report
    fluxmacro crb --M 481 --modes 1e10  Cramer-Rao bounds
    fluxmacro serve                     run the HTTP wrapper

Shared flags: ``--config`` (TOML or JSON, detected by extension) supplies
run settings, command payloads, and registry overrides; ``--out`` writes
the result atomically (temp file + rename) instead of stdout; ``--format``
picks json or csv.  Precedence is CLI flag over config value over preset.

Exit codes: 0 success, 1 domain failure (inputs outside the validity region,
a failed reproduction or kernel check), 2 configuration failure (unknown
command, malformed config, bad field values).

JSON output is produced with Python's serializer and may contain the
non-standard tokens ``Infinity`` and ``NaN`` where a quantity is genuinely
non-finite (for example lambda of a superposition with a vanishing overlap);
CSV renders the same values as ``inf`` and ``nan``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Sequence

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .bcs import MaterialParams, coefficient_grid, grid_to_csv
from .constants import joule_to_kelvin, kelvin_to_joule
from .errors import ConfigError, DomainError
from .hybrid import HybridGeometry, hybrid_scan, scan_to_csv
from .instanton import SfqParams, instanton_action
from .kernels import run_kernel_checks
from .macro import (
    SuperpositionSpec,
    brute_force_max_variance,
    macroscopicity_closed_form,
    variance_of_canonical_H,
)
from .metrology import phase_crb
from .presets import CIRCUITS, GEOMETRIES, MATERIALS
from .reproduce import reproduction_rows, rows_passed, rows_to_csv, rows_to_json

COMMANDS = (
    "reproduce",
    "macro",
    "instanton",
    "hybrid-scan",
    "bcs-grid",
    "kernels-check",
    "crb",
    "serve",
)

_GRID_DEFAULTS = {
    "eps_start": -3.0,
    "eps_stop": 3.0,
    "eps_num": 121,
    "qe_start": 0.0,
    "qe_stop": 3.0,
    "qe_num": 61,
}


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Run-level settings, merged from flags and the config file."""

    command: str
    input_path: str | None = None
    output_path: str | None = None
    format: str = "json"
    rel_tol: float | None = None
    seed: int = 0


@dataclasses.dataclass(frozen=True)
class Registry:
    """Named parameter sets the commands draw from; config can override or
    extend every table."""

    circuits: dict[str, SfqParams]
    materials: dict[str, MaterialParams]
    geometries: dict[str, HybridGeometry]


def load_config(path: str) -> dict:
    """Parse a TOML or JSON config file, detected by extension."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"{path}: no such file")
    suffix = p.suffix.lower()
    text = p.read_bytes()
    if suffix == ".toml":
        try:
            data = tomllib.loads(text.decode("utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    elif suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from None
    else:
        raise ConfigError(
            f"{path}: unsupported config extension {suffix!r} (use .toml or .json)"
        )
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a table/object")
    return data


def _atomic_write(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    target = os.path.abspath(path)
    directory = os.path.dirname(target)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fluxmacro-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path is not None:
        _atomic_write(cfg.output_path, text)
    else:
        sys.stdout.write(text)


def _to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _require_fields(
    section: dict, where: str, allowed: Sequence[str], required: Sequence[str] = ()
) -> None:
    for key in section:
        if key not in allowed:
            raise ConfigError(f"{where}: unknown field {key!r}")
    for key in required:
        if key not in section:
            raise ConfigError(f"{where}: missing field {key!r}")


def _as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def build_registry(raw: dict) -> Registry:
    """Presets plus config overrides; new names need the full field set."""
    circuits = dict(CIRCUITS)
    materials = dict(MATERIALS)
    geometries = dict(GEOMETRIES)
    _require_fields(raw, "registry", ("circuits", "materials", "geometries"))

    for name, fields in raw.get("circuits", {}).items():
        where = f"registry.circuits.{name}"
        known = name in circuits
        _require_fields(
            fields,
            where,
            ("E_J_K", "E_L_K", "E_C_K", "kappa_K", "mode_count"),
            () if known else ("E_J_K", "E_L_K", "E_C_K"),
        )
        base = circuits.get(name)
        try:
            circuits[name] = SfqParams(
                E_J=(
                    kelvin_to_joule(_as_number(fields["E_J_K"], where))
                    if "E_J_K" in fields
                    else base.E_J
                ),
                E_L=(
                    kelvin_to_joule(_as_number(fields["E_L_K"], where))
                    if "E_L_K" in fields
                    else base.E_L
                ),
                E_C=(
                    kelvin_to_joule(_as_number(fields["E_C_K"], where))
                    if "E_C_K" in fields
                    else base.E_C
                ),
                kappa_energy=(
                    kelvin_to_joule(_as_number(fields["kappa_K"], where))
                    if "kappa_K" in fields
                    else (base.kappa_energy if known else 0.0)
                ),
                mode_count=(
                    _as_number(fields["mode_count"], where)
                    if "mode_count" in fields
                    else (base.mode_count if known else math.inf)
                ),
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    for name, fields in raw.get("materials", {}).items():
        where = f"registry.materials.{name}"
        known = name in materials
        keys = ("gap_Delta", "fermi_energy", "dos_at_fermi", "debye_energy")
        _require_fields(fields, where, keys, () if known else keys)
        base = materials.get(name)
        try:
            materials[name] = MaterialParams(
                **{
                    key: (
                        _as_number(fields[key], where)
                        if key in fields
                        else getattr(base, key)
                    )
                    for key in keys
                }
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    for name, fields in raw.get("geometries", {}).items():
        where = f"registry.geometries.{name}"
        known = name in geometries
        _require_fields(
            fields,
            where,
            ("N_B", "R_S", "D", "g_f"),
            () if known else ("N_B", "R_S", "D"),
        )
        base = geometries.get(name)
        try:
            geometries[name] = HybridGeometry(
                N_B=(
                    _as_number(fields["N_B"], where)
                    if "N_B" in fields
                    else base.N_B
                ),
                R_S=(
                    _as_number(fields["R_S"], where)
                    if "R_S" in fields
                    else base.R_S
                ),
                D=_as_number(fields["D"], where) if "D" in fields else base.D,
                g_f=(
                    _as_number(fields["g_f"], where)
                    if "g_f" in fields
                    else (base.g_f if known else 2.0)
                ),
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    return Registry(circuits=circuits, materials=materials, geometries=geometries)


def _lookup(table: dict, name: str, kind: str):
    key = name.lower()
    if key not in table:
        raise ConfigError(f"unknown {kind} {name!r}; available: {sorted(table)}")
    return table[key]


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _single_row_csv(payload: dict) -> str:
    header = ",".join(payload)
    row = ",".join(_csv_cell(v) for v in payload.values())
    return f"{header}\n{row}\n"


# --- command implementations -------------------------------------------------


def _cmd_reproduce(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    rows = reproduction_rows(cfg.rel_tol if cfg.rel_tol is not None else 1e-10)
    text = rows_to_csv(rows) if cfg.format == "csv" else rows_to_json(rows)
    _emit(cfg, text)
    return 0 if rows_passed(rows) else 1


def _cmd_macro(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    section = file_cfg.get("macro", {})
    _require_fields(
        section, "macro", ("overlaps", "reals", "brute_force", "starts", "tol")
    )
    z_flags = getattr(args, "z", None)
    if z_flags:
        pairs = [(z, 0.0) for z in z_flags]
    elif "overlaps" in section:
        pairs = []
        for i, entry in enumerate(section["overlaps"]):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ConfigError(f"macro.overlaps[{i}]: expected a [re, im] pair")
            pairs.append(
                (
                    _as_number(entry[0], f"macro.overlaps[{i}][0]"),
                    _as_number(entry[1], f"macro.overlaps[{i}][1]"),
                )
            )
    elif "reals" in section:
        pairs = [
            (_as_number(z, f"macro.reals[{i}]"), 0.0)
            for i, z in enumerate(section["reals"])
        ]
    else:
        raise ConfigError(
            "macro: provide overlaps via --z flags or a [macro] config section"
        )

    try:
        spec = SuperpositionSpec.from_pairs(pairs)
    except ValueError as exc:
        raise ConfigError(f"macro: {exc}") from None
    report = macroscopicity_closed_form(spec)
    out = report.as_dict()
    try:
        out["variance"] = variance_of_canonical_H(spec)
    except DomainError:
        out["variance"] = None

    if section.get("brute_force", False):
        starts = int(section.get("starts", 16))
        tol = _as_number(section.get("tol", 1e-6), "macro.tol")
        best, _angles = brute_force_max_variance(
            spec, starts=starts, tol=tol, seed=cfg.seed
        )
        out["brute_force"] = {
            "variance": best,
            "starts": starts,
            "tol": tol,
            "seed": cfg.seed,
        }

    _emit(cfg, _single_row_csv(out) if cfg.format == "csv" else _to_json(out))
    return 0


def _resolve_circuit(
    args: argparse.Namespace, section: dict, registry: Registry, where: str
) -> SfqParams:
    preset = getattr(args, "preset", None) or section.get("preset")
    fields = {
        key: _as_number(section[key], f"{where}.{key}")
        for key in ("E_J_K", "E_L_K", "E_C_K", "kappa_K", "mode_count")
        if key in section
    }
    kappa_flag = getattr(args, "kappa_K", None)
    if kappa_flag is not None:
        fields["kappa_K"] = kappa_flag
    modes_flag = getattr(args, "modes", None)
    if modes_flag is not None:
        fields["mode_count"] = modes_flag

    if preset is not None:
        base = _lookup(registry.circuits, preset, "circuit preset")
    elif all(key in fields for key in ("E_J_K", "E_L_K", "E_C_K")):
        base = None
    else:
        raise ConfigError(
            f"{where}: give a circuit preset or all of E_J_K, E_L_K, E_C_K"
        )
    try:
        return SfqParams(
            E_J=(
                kelvin_to_joule(fields["E_J_K"]) if "E_J_K" in fields else base.E_J
            ),
            E_L=(
                kelvin_to_joule(fields["E_L_K"]) if "E_L_K" in fields else base.E_L
            ),
            E_C=(
                kelvin_to_joule(fields["E_C_K"]) if "E_C_K" in fields else base.E_C
            ),
            kappa_energy=(
                kelvin_to_joule(fields["kappa_K"])
                if "kappa_K" in fields
                else (base.kappa_energy if base is not None else 0.0)
            ),
            mode_count=(
                fields["mode_count"]
                if "mode_count" in fields
                else (base.mode_count if base is not None else math.inf)
            ),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _cmd_instanton(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    registry = build_registry(file_cfg.get("registry", {}))
    section = file_cfg.get("instanton", {})
    _require_fields(
        section,
        "instanton",
        ("preset", "E_J_K", "E_L_K", "E_C_K", "kappa_K", "mode_count", "convention"),
    )
    convention = getattr(args, "convention", None) or section.get(
        "convention", "Literal"
    )
    params = _resolve_circuit(args, section, registry, "instanton")
    try:
        result = instanton_action(
            params,
            convention,
            cfg.rel_tol if cfg.rel_tol is not None else 1e-8,
        )
    except ValueError as exc:
        raise ConfigError(f"instanton: {exc}") from None
    out = result.as_dict()
    if cfg.format == "csv":
        row = {key: out[key] for key in ("S_over_hbar", "lambda", "M", "convention")}
        _emit(cfg, _single_row_csv(row))
    else:
        _emit(cfg, _to_json(out))
    return 0


def _cmd_hybrid_scan(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    registry = build_registry(file_cfg.get("registry", {}))
    section = file_cfg.get("hybrid_scan", {})
    _require_fields(
        section, "hybrid_scan", ("circuit", "material", "geometries", "convention")
    )
    circuit = _lookup(
        registry.circuits, section.get("circuit", "lukens"), "circuit preset"
    )
    material = _lookup(
        registry.materials, section.get("material", "aluminum"), "material preset"
    )
    convention = getattr(args, "convention", None) or section.get(
        "convention", "Literal"
    )

    overrides = {
        "N_B": getattr(args, "NB", None),
        "R_S": getattr(args, "Rs", None),
        "D": getattr(args, "D", None),
    }
    geometries: list[HybridGeometry] = []
    if any(v is not None for v in overrides.values()):
        base = registry.geometries["baseline"]
        try:
            geometries.append(
                HybridGeometry(
                    N_B=overrides["N_B"] if overrides["N_B"] is not None else base.N_B,
                    R_S=overrides["R_S"] if overrides["R_S"] is not None else base.R_S,
                    D=overrides["D"] if overrides["D"] is not None else base.D,
                    g_f=base.g_f,
                )
            )
        except ValueError as exc:
            raise ConfigError(f"hybrid-scan geometry: {exc}") from None
    else:
        for i, entry in enumerate(section.get("geometries", ["baseline"])):
            if isinstance(entry, str):
                geometries.append(
                    _lookup(registry.geometries, entry, "geometry preset")
                )
            elif isinstance(entry, dict):
                where = f"hybrid_scan.geometries[{i}]"
                _require_fields(
                    entry, where, ("N_B", "R_S", "D", "g_f"), ("N_B", "R_S", "D")
                )
                try:
                    geometries.append(
                        HybridGeometry(
                            N_B=_as_number(entry["N_B"], where),
                            R_S=_as_number(entry["R_S"], where),
                            D=_as_number(entry["D"], where),
                            g_f=_as_number(entry.get("g_f", 2.0), where),
                        )
                    )
                except ValueError as exc:
                    raise ConfigError(f"{where}: {exc}") from None
            else:
                raise ConfigError(
                    f"hybrid_scan.geometries[{i}]: expected a name or a table"
                )

    rows = hybrid_scan(
        circuit,
        material,
        geometries,
        convention,
        cfg.rel_tol if cfg.rel_tol is not None else 1e-8,
    )
    if cfg.format == "csv":
        _emit(cfg, scan_to_csv(rows))
    else:
        payload = [
            {
                "N_B": r.N_B,
                "Rs_over_D": r.Rs_over_D,
                "kappa_energy": r.kappa_energy,
                "kappa_energy_K": joule_to_kelvin(r.kappa_energy),
                "lambda": r.lam,
                "M": r.M,
                "amplification": r.amplification,
            }
            for r in rows
        ]
        _emit(cfg, _to_json({"rows": payload}))
    return 0


def _cmd_bcs_grid(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    registry = build_registry(file_cfg.get("registry", {}))
    section = file_cfg.get("bcs_grid", {})
    _require_fields(section, "bcs_grid", ("material", *_GRID_DEFAULTS))
    material = _lookup(
        registry.materials, section.get("material", "aluminum"), "material preset"
    )
    knobs = dict(_GRID_DEFAULTS)
    for key in _GRID_DEFAULTS:
        if key in section:
            knobs[key] = _as_number(section[key], f"bcs_grid.{key}")
    for key in ("eps_num", "qe_num"):
        if knobs[key] < 1 or knobs[key] != int(knobs[key]):
            raise ConfigError(f"bcs_grid.{key}: expected a positive integer")

    delta = material.gap_Delta

    def _axis(start: float, stop: float, num: int) -> list[float]:
        if num == 1:
            return [start * delta]
        step = (stop - start) / (num - 1)
        return [(start + i * step) * delta for i in range(num)]

    eps_grid = _axis(knobs["eps_start"], knobs["eps_stop"], int(knobs["eps_num"]))
    qe_grid = _axis(knobs["qe_start"], knobs["qe_stop"], int(knobs["qe_num"]))
    rows = coefficient_grid(eps_grid, qe_grid, material)
    if cfg.format == "csv":
        _emit(cfg, grid_to_csv(rows))
    else:
        _emit(cfg, _to_json({"rows": [r._asdict() for r in rows]}))
    return 0


def _cmd_kernels_check(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    registry = build_registry(file_cfg.get("registry", {}))
    section = file_cfg.get("kernels_check", {})
    _require_fields(section, "kernels_check", ("material",))
    material = _lookup(
        registry.materials, section.get("material", "aluminum"), "material preset"
    )
    report = run_kernel_checks(material)
    if cfg.format == "csv":
        lines = ["identity,residual,tolerance,passed"]
        for check in report["checks"]:
            lines.append(
                f"{check['identity']},{check['residual']!r},"
                f"{check['tolerance']!r},{str(check['passed']).lower()}"
            )
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit(cfg, _to_json(report))
    return 0 if report["all_passed"] else 1


def _cmd_crb(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    section = file_cfg.get("crb", {})
    _require_fields(section, "crb", ("M", "mode_count", "modes_in_cutoff"))
    m_value = getattr(args, "M", None)
    if m_value is None and "M" in section:
        m_value = _as_number(section["M"], "crb.M")
    if m_value is None:
        raise ConfigError("crb: provide --M or crb.M in the config")

    modes_flag = getattr(args, "modes", None)
    if modes_flag is not None:
        mode_count = modes_flag
        # an integral --modes also serves as the mode count inside the cutoff
        modes_in_cutoff = (
            int(modes_flag)
            if math.isfinite(modes_flag) and modes_flag == int(modes_flag)
            else None
        )
    else:
        mode_count = _as_number(section.get("mode_count", math.inf), "crb.mode_count")
        modes_in_cutoff = None
    if "modes_in_cutoff" in section:
        raw = section["modes_in_cutoff"]
        if isinstance(raw, bool) or not isinstance(raw, int) or raw < 1:
            raise ConfigError("crb.modes_in_cutoff: expected a positive integer")
        modes_in_cutoff = raw

    report = phase_crb(m_value, mode_count, modes_in_cutoff)
    out = report.as_dict()
    _emit(cfg, _single_row_csv(out) if cfg.format == "csv" else _to_json(out))
    return 0


def _cmd_serve(args: argparse.Namespace, cfg: RunConfig, file_cfg: dict) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(
        app,
        host=getattr(args, "host", "127.0.0.1"),
        port=getattr(args, "port", 8000),
    )
    return 0


_HANDLERS = {
    "reproduce": _cmd_reproduce,
    "macro": _cmd_macro,
    "instanton": _cmd_instanton,
    "hybrid-scan": _cmd_hybrid_scan,
    "bcs-grid": _cmd_bcs_grid,
    "kernels-check": _cmd_kernels_check,
    "crb": _cmd_crb,
    "serve": _cmd_serve,
}


# --- argument parsing ---------------------------------------------------------


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", default=argparse.SUPPRESS, help="TOML or JSON config file"
    )
    parser.add_argument(
        "--out",
        default=argparse.SUPPRESS,
        help="write output to this path (atomic) instead of stdout",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default=argparse.SUPPRESS,
        help="output format (default json)",
    )
    parser.add_argument(
        "--rel-tol",
        type=float,
        dest="rel_tol",
        default=argparse.SUPPRESS,
        help="relative quadrature tolerance, in (0, 1e-2]",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed for randomized searches (default 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxmacro",
        description="macroscopicity of flux-qubit superpositions",
    )
    _common_flags(parser)
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("reproduce", help="recompute the headline numbers")
    _common_flags(p)

    p = sub.add_parser("macro", help="macroscopicity from branch overlaps")
    _common_flags(p)
    p.add_argument(
        "--z",
        type=float,
        action="append",
        default=argparse.SUPPRESS,
        help="real branch overlap for one mode; repeat per mode",
    )

    p = sub.add_parser("instanton", help="tunneling action and macroscopicity bound")
    _common_flags(p)
    p.add_argument("--preset", default=argparse.SUPPRESS, help="circuit preset name")
    p.add_argument(
        "--kappa-K",
        type=float,
        dest="kappa_K",
        default=argparse.SUPPRESS,
        help="inductive renormalization energy in kelvin",
    )
    p.add_argument(
        "--modes",
        type=float,
        default=argparse.SUPPRESS,
        help="mode count entering the bound (inf allowed)",
    )
    p.add_argument(
        "--convention",
        choices=("Literal", "ShiftedWells"),
        default=argparse.SUPPRESS,
        help="action convention",
    )

    p = sub.add_parser("hybrid-scan", help="bound vs magnet geometry")
    _common_flags(p)
    p.add_argument(
        "--NB", type=float, default=argparse.SUPPRESS, help="number of moments"
    )
    p.add_argument(
        "--Rs", type=float, default=argparse.SUPPRESS, help="sphere radius in m"
    )
    p.add_argument(
        "--D", type=float, default=argparse.SUPPRESS, help="sphere-loop distance in m"
    )
    p.add_argument(
        "--convention",
        choices=("Literal", "ShiftedWells"),
        default=argparse.SUPPRESS,
        help="action convention",
    )

    p = sub.add_parser("bcs-grid", help="max-variance coefficient grid")
    _common_flags(p)

    p = sub.add_parser("kernels-check", help="kernel identity conformance report")
    _common_flags(p)

    p = sub.add_parser("crb", help="Cramer-Rao bounds from a macroscopicity value")
    _common_flags(p)
    p.add_argument(
        "--M", type=float, default=argparse.SUPPRESS, help="macroscopicity value"
    )
    p.add_argument(
        "--modes",
        type=float,
        default=argparse.SUPPRESS,
        help="mode count (also the cutoff count when integral)",
    )

    p = sub.add_parser("serve", help="run the HTTP wrapper")
    _common_flags(p)
    p.add_argument("--host", default=argparse.SUPPRESS)
    p.add_argument("--port", type=int, default=argparse.SUPPRESS)

    return parser


def _build_run_config(args: argparse.Namespace, file_cfg: dict) -> RunConfig:
    command = getattr(args, "command", None) or file_cfg.get("command")
    if command is None:
        raise ConfigError("no command given on the command line or in the config")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; choose from {COMMANDS}")

    fmt = getattr(args, "format", None) or file_cfg.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError(f"format must be 'json' or 'csv'; got {fmt!r}")

    rel_tol = getattr(args, "rel_tol", None)
    if rel_tol is None and "rel_tol" in file_cfg:
        rel_tol = _as_number(file_cfg["rel_tol"], "rel_tol")
    if rel_tol is not None and not 0.0 < rel_tol <= 1e-2:
        raise ConfigError(f"rel_tol must lie in (0, 1e-2]; got {rel_tol!r}")

    seed = getattr(args, "seed", None)
    if seed is None:
        seed = file_cfg.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"seed must be a nonnegative integer; got {seed!r}")

    return RunConfig(
        command=command,
        input_path=getattr(args, "config", None),
        output_path=getattr(args, "out", None) or file_cfg.get("output_path"),
        format=fmt,
        rel_tol=rel_tol,
        seed=seed,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config_path = getattr(args, "config", None)
        file_cfg = load_config(config_path) if config_path else {}
        cfg = _build_run_config(args, file_cfg)
        return _HANDLERS[cfg.command](args, cfg, file_cfg)
    except BrokenPipeError:
        # downstream consumer (e.g. head) closed the pipe; not our failure
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
