"""Run orchestration: solve, verify, and write field tables and the summary."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .circular import PSI_VARIANTS, circle_coefficients, circle_field
from .config import TABLE_FORMATS, RunConfig, circle_radius, moment_about_user_origin, transform_loads_to_centroid
from .ebt import solve_exact
from .errors import GridMismatch, ParseError
from .fields import TabulatedField
from .geometry import build_section, section_properties
from .shell import StressState
from .thin import thin_coefficients
from .verification import displacement_gap, equilibrium_residual, check_resultants, stress_at, verify_field

TABLE_VERSION = "koitertube-field-table 1"
SUMMARY_VERSION = "koitertube-summary 1"
COLUMNS = ("s", "z", "u1", "u2", "u3") + StressState.NAMES
ADJUDICATION_FACTOR = 100.0


# ---------------------------------------------------------------------------
# deterministic serialization
# ---------------------------------------------------------------------------


def format_float(v):
    """17 significant digits; non-finite values become ``null`` in the summary."""
    return format(float(v), ".17g")


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj) if math.isfinite(obj) else "null"
    return json.dumps(str(obj))


def dumps_summary(summary, indent=2):
    """JSON text with floats at 17 significant digits and insertion key order."""
    return _encode(summary, indent, 0) + "\n"


# ---------------------------------------------------------------------------
# field tables
# ---------------------------------------------------------------------------


def table_rows(curve, z_values, displacement, stress):
    """Rows of a field table; ``displacement(z)`` and ``stress(z)`` give grid samples."""
    rows = []
    for z in z_values:
        u = displacement(z)
        st = stress(z)
        comps = [np.broadcast_to(np.asarray(getattr(st, k), dtype=float), (curve.n,)) for k in StressState.NAMES]
        for j in range(curve.n):
            rows.append([curve.s[j], z, u[0, j], u[1, j], u[2, j]] + [c[j] for c in comps])
    return rows


def write_table(path, rows, table_format="csv"):
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        fh.write(f"# {TABLE_VERSION}\n")
        writer = csv.writer(fh, delimiter=TABLE_FORMATS[table_format], lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([format_float(v) for v in row])
    return path


def read_table(path, curve):
    """Read a field table back as a :class:`TabulatedField` on ``curve``.

    Raises
    ------
    ParseError
        Missing version line or unexpected header.
    GridMismatch
        The table's arc positions differ from the section grid.
    """
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        first = fh.readline().strip()
        if first != f"# {TABLE_VERSION}":
            raise ParseError(f"{path} is not a version-1 field table", line=1)
        header = fh.readline()
        delim = "\t" if "\t" in header else ","
        if tuple(header.strip().split(delim)) != COLUMNS:
            raise ParseError(f"unexpected header in {path}", line=2)
        data = np.array([[float(v) for v in row] for row in csv.reader(fh, delimiter=delim) if row])
    if data.size == 0 or data.shape[0] % curve.n:
        raise GridMismatch(f"row count {data.shape[0]} is not a multiple of the section grid {curve.n}")
    nz = data.shape[0] // curve.n
    data = data.reshape(nz, curve.n, len(COLUMNS))
    if not np.allclose(data[:, :, 0], curve.s[None, :], rtol=0.0, atol=1e-12 * curve.length):
        raise GridMismatch("table arc positions do not match the section grid")
    z = data[:, 0, 1]
    u = np.transpose(data[:, :, 2:5], (2, 0, 1))
    return TabulatedField(curve, z, u)


# ---------------------------------------------------------------------------
# the run
# ---------------------------------------------------------------------------


@dataclass
class RunResult:
    status: int
    summary: dict
    tables: dict


def _gate_block(report, gates):
    checks = {
        "equilibrium": (report.equilibrium.worst, gates.equilibrium),
        "resultants": (report.resultants.deviation, gates.resultants),
        "balance": (report.balance.defect, gates.resultants),
        "seams": (report.seams.worst, gates.seams),
    }
    return {name: {"value": v, "gate": g, "passed": bool(v <= g)} for name, (v, g) in checks.items()}


def _verification(field, curve, mat, loads, cfg, centroid):
    report = verify_field(field, curve, mat, loads, cfg.length)
    out = report.as_dict()
    if cfg.origin == "user":
        out["resultants"]["moment_about_user_origin"] = [
            float(v) for v in moment_about_user_origin(report.resultants.moment, report.resultants.force, centroid)
        ]
    return report, out


def adjudicate_psi_variants(case, curve, mat, loads):
    """Compare the two circular ``u3`` coefficients through the residual suite.

    The combined residual is the equilibrium residual plus the resultant
    deviation.  The winner must beat the other variant by
    ``ADJUDICATION_FACTOR``; otherwise the outcome is a tie.
    """
    scores = {}
    for variant in PSI_VARIANTS:
        f = circle_field(case, curve, variant)
        eq = equilibrium_residual(f, curve, mat, (0.0,)).worst
        res = check_resultants(f, curve, mat, loads).deviation
        scores[variant] = {"equilibrium": eq, "resultants": res, "combined": eq + res}
    ranked = sorted(PSI_VARIANTS, key=lambda v: scores[v]["combined"])
    best, other = scores[ranked[0]]["combined"], scores[ranked[1]]["combined"]
    factor = other / best if best > 0 else (math.inf if other > 0 else 1.0)
    winner = ranked[0] if factor >= ADJUDICATION_FACTOR else "tie"
    return {**scores, "factor": factor, "winner": winner}


def run_case(cfg: RunConfig, write=True) -> RunResult:
    """Solve, verify and (optionally) write artifacts for one configuration.

    The exit status is 1 when any gated residual of the exact solution
    exceeds its threshold and 0 otherwise.
    """
    mat = cfg.material
    curve = build_section(cfg.section, cfg.n_s)
    props = section_properties(curve)
    centroid = np.asarray(curve.centroid, dtype=float)
    loads = cfg.loads if cfg.origin == "centroid" else transform_loads_to_centroid(cfg.loads, centroid)
    z_values = np.linspace(0.0, cfg.length, cfg.n_z)

    modes = list(cfg.modes)
    radius = circle_radius(cfg.section)
    skipped = {}
    if "circular" in modes and radius is None:
        modes.remove("circular")
        skipped["circular"] = "section is not a circle"

    solutions, fields, stresses = {}, {}, {}
    blocks = {}
    for mode in modes:
        if mode == "exact":
            sol = solve_exact(curve, mat, loads)
            coeffs = {**sol.ebt.coefficients(), **sol.flexure.coefficients()}
            coeffs["condition_seam"] = sol.ebt.seam_condition
            coeffs["condition_resultant"] = sol.ebt.resultant_condition
            fields[mode] = sol.field()
            stresses[mode] = sol.stress
        elif mode == "thin":
            sol = thin_coefficients(curve, mat, loads)
            coeffs = sol.coefficients()
            fields[mode] = sol.field()
            stresses[mode] = sol.stress
        else:
            sol = circle_coefficients(radius, mat, loads)
            coeffs = sol.coefficients()
            f = circle_field(sol, curve, cfg.psi_variant)
            fields[mode] = f
            stresses[mode] = lambda s, z, f=f: stress_at(f, curve, mat, z)
        solutions[mode] = sol
        report, vblock = _verification(fields[mode], curve, mat, loads, cfg, centroid)
        block = {"coefficients": coeffs, "verification": vblock}
        if mode == "exact":
            block["gates"] = _gate_block(report, cfg.gates)
        if mode == "circular":
            block["psi_variant"] = cfg.psi_variant
            block["psi_variant_adjudication"] = adjudicate_psi_variants(sol, curve, mat, loads)
        blocks[mode] = block

    comparisons = {}
    scale = max(float(np.max(np.abs(fields[m].displacement(None, z)))) for m in fields for z in z_values)
    for a, b in (("exact", "thin"), ("exact", "circular"), ("thin", "circular")):
        if a in fields and b in fields:
            gap = displacement_gap(fields[a], fields[b], z_values)
            comparisons[f"{a}_vs_{b}"] = {
                "max_displacement_gap": gap,
                "relative_gap": gap / scale if scale > 0 else 0.0,
                "rigid_motion_removed": True,
            }

    tables = {}
    if write:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        ext = cfg.table_format
        for mode in modes:
            rows = table_rows(
                curve,
                z_values,
                lambda z, m=mode: fields[m].displacement(None, z),
                lambda z, m=mode: stresses[m](None, z),
            )
            tables[mode] = str(write_table(out / f"field_{mode}.{ext}", rows, ext))
            blocks[mode]["table"] = Path(tables[mode]).name

    failures = [
        f"exact.{name}" for name, g in blocks.get("exact", {}).get("gates", {}).items() if not g["passed"]
    ]
    summary = {
        "format": SUMMARY_VERSION,
        "config": cfg.as_dict(),
        "section": props.as_dict(),
        "material": mat.as_dict(),
        "loads": {
            "input_force": list(cfg.loads.force),
            "input_moment": list(cfg.loads.moment),
            "origin": cfg.origin,
            "centroid": [float(v) for v in centroid],
            "force_about_centroid": [float(v) for v in loads.R],
            "moment_about_centroid": [float(v) for v in loads.M],
        },
        "grid": {"n_s": cfg.n_s, "n_z": cfg.n_z, "z_stations": [float(z) for z in z_values]},
        "solutions": blocks,
        "skipped": skipped,
        "comparisons": comparisons,
        "status": {"passed": not failures, "failures": failures},
    }
    if write:
        (Path(cfg.out_dir) / "summary.json").write_text(dumps_summary(summary), encoding="utf-8")
    return RunResult(status=1 if failures else 0, summary=summary, tables=tables)


def verify_table(cfg: RunConfig, path):
    """Re-run the verification suite on a saved field table.

    Returns ``(status, block)`` where ``block`` holds the report and gates.
    """
    mat = cfg.material
    curve = build_section(cfg.section, cfg.n_s)
    centroid = np.asarray(curve.centroid, dtype=float)
    loads = cfg.loads if cfg.origin == "centroid" else transform_loads_to_centroid(cfg.loads, centroid)
    field = read_table(path, curve)
    report, vblock = _verification(field, curve, mat, loads, cfg, centroid)
    gates = _gate_block(report, cfg.gates)
    passed = all(g["passed"] for g in gates.values())
    return (0 if passed else 1), {"table": str(path), "verification": vblock, "gates": gates, "passed": passed}
