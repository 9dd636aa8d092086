"""Command-line front end for the quadmap library.

Usage:
    quadmap poles    --input job.json                 # poles + scaled natural values
    quadmap fit      --input job.json --scheme pascal6
    quadmap eval     --input job.json --grid 5        # natural -> Cartesian table
    quadmap invert   --input job.json --at 2.5,3.0    # Cartesian -> natural (Newton)
    quadmap geometry --input job.json --at 0,0        # full geometry state per point
    quadmap area     --input job.json                 # shoelace vs Jacobian integrals
    quadmap compare  --input job.json                 # Pascal vs bilinear side by side

The job file is a JSON object with the keys

    vertices              four [x1, x2] pairs, counterclockwise (required)
    scheme                "lagrange4" | "pascal6" | "pascal10"   (default "pascal6")
    pairing               "text-order" | "swapped"               (default "text-order")
    scaled_pole_override  [t5, t6] to replace the computed scaled pole values
    eval_points           list of [a, b] pairs (natural, except Cartesian for `invert`)
    grid                  N for an N x N natural grid on [-1, 1]^2 (N >= 2)
    quadrature_points     2, 3 or 4 Gauss points per axis          (default 2)
    output_format         "json" | "csv" | "table"                 (default "table")

Command-line flags override file values.  Data goes to stdout,
diagnostics to stderr; exit status is 0 on success, 1 on a domain error
(with a one-line JSON error record on stderr), 2 on usage errors.
Numbers in json/csv are emitted with 17 significant digits so parsed
values round-trip exactly; tables use 8 decimals.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .basis import LAGRANGE4, SCHEMES, basis_by_name
from .diffgeo import (
    GAUSS_RULES,
    geometry_state,
    integrate_jacobian,
    map_point,
    newton_inverse,
    verify_gauss_relations,
)
from .errors import ParseError, QuadMapError
from .fitting import PAIRINGS, fit_map
from .geometry import Point2, compute_poles, midpoint_frame, shoelace_area, validate_quad
from .natural import scaled_pole_coordinates

OUTPUT_FORMATS = ("json", "csv", "table")
SUBCOMMANDS = ("poles", "fit", "eval", "invert", "geometry", "area", "compare")

_JOB_KEYS = (
    "vertices",
    "scheme",
    "pairing",
    "scaled_pole_override",
    "eval_points",
    "grid",
    "quadrature_points",
    "output_format",
)


@dataclass(frozen=True)
class JobConfig:
    """One run of the tool: the quad plus every optional knob."""

    vertices: tuple[tuple[float, float], ...]
    scheme: str = "pascal6"
    pairing: str = "text-order"
    scaled_pole_override: Optional[tuple[float, float]] = None
    eval_points: Optional[tuple[tuple[float, float], ...]] = None
    grid: Optional[int] = None
    quadrature_points: int = 2
    output_format: str = "table"


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _pair(value, key: str) -> tuple[float, float]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(_is_number(v) for v in value)
    ):
        raise ParseError(f"key '{key}': expected a pair of numbers, got {value!r}")
    return (float(value[0]), float(value[1]))


def read_job(path: str) -> JobConfig:
    """Parse a job file; unknown keys and malformed values raise ParseError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read job file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ParseError("top-level value must be an object of job keys")
    for key in raw:
        if key not in _JOB_KEYS:
            raise ParseError(f"unknown key '{key}'")
    if "vertices" not in raw:
        raise ParseError("missing required key 'vertices'")
    verts = raw["vertices"]
    if not isinstance(verts, (list, tuple)) or len(verts) != 4:
        raise ParseError("key 'vertices': expected exactly 4 coordinate pairs")
    vertices = tuple(_pair(v, "vertices") for v in verts)

    cfg = JobConfig(vertices=vertices)
    if "scheme" in raw:
        if raw["scheme"] not in SCHEMES:
            raise ParseError(f"key 'scheme': expected one of {sorted(SCHEMES)}, got {raw['scheme']!r}")
        cfg = replace(cfg, scheme=raw["scheme"])
    if "pairing" in raw:
        if raw["pairing"] not in PAIRINGS:
            raise ParseError(f"key 'pairing': expected one of {list(PAIRINGS)}, got {raw['pairing']!r}")
        cfg = replace(cfg, pairing=raw["pairing"])
    if "scaled_pole_override" in raw and raw["scaled_pole_override"] is not None:
        cfg = replace(cfg, scaled_pole_override=_pair(raw["scaled_pole_override"], "scaled_pole_override"))
    if "eval_points" in raw and raw["eval_points"] is not None:
        pts = raw["eval_points"]
        if not isinstance(pts, (list, tuple)) or not pts:
            raise ParseError("key 'eval_points': expected a non-empty list of pairs")
        cfg = replace(cfg, eval_points=tuple(_pair(p, "eval_points") for p in pts))
    if "grid" in raw and raw["grid"] is not None:
        g = raw["grid"]
        if not isinstance(g, int) or isinstance(g, bool) or g < 2:
            raise ParseError(f"key 'grid': expected an integer >= 2, got {g!r}")
        cfg = replace(cfg, grid=g)
    if "quadrature_points" in raw:
        qp = raw["quadrature_points"]
        if not isinstance(qp, int) or isinstance(qp, bool) or qp not in GAUSS_RULES:
            raise ParseError(
                f"key 'quadrature_points': expected one of {sorted(GAUSS_RULES)}, got {qp!r}"
            )
        cfg = replace(cfg, quadrature_points=qp)
    if "output_format" in raw:
        if raw["output_format"] not in OUTPUT_FORMATS:
            raise ParseError(
                f"key 'output_format': expected one of {list(OUTPUT_FORMATS)}, got {raw['output_format']!r}"
            )
        cfg = replace(cfg, output_format=raw["output_format"])
    return cfg


# --------------------------------------------------------------------------- #
# Rendering helpers
# --------------------------------------------------------------------------- #

def _f17(v: float) -> str:
    return format(float(v), ".17g")


def _f8(v: float) -> str:
    return format(float(v), ".8f")


def _csv(lines: list[Sequence]) -> str:
    out = []
    for row in lines:
        out.append(",".join(_f17(v) if _is_number(v) and not isinstance(v, int) else str(v) for v in row))
    return "\n".join(out) + "\n"


def _pole_json(pole):
    if isinstance(pole, Point2):
        return {"type": "finite", "x1": pole.x1, "x2": pole.x2}
    return {"type": "at-infinity", "direction": list(pole.direction)}


def _scaled_json(computed, override) -> dict:
    effective = override if override is not None else computed
    rec = {
        "source": "override" if override is not None else "computed",
        "t5": effective.t5,
        "t6": effective.t6,
        "computed": {"t5": computed.t5, "t6": computed.t6},
        "override": None,
        "difference": None,
    }
    if override is not None:
        rec["override"] = {"t5": override.t5, "t6": override.t6}
        rec["difference"] = {
            "t5": None if computed.t5 is None else override.t5 - computed.t5,
            "t6": None if computed.t6 is None else override.t6 - computed.t6,
        }
    return rec


def _opt(v, fmt=_f17) -> str:
    return "" if v is None else fmt(v)


# --------------------------------------------------------------------------- #
# Subcommand implementations (each returns the JSON-ready report dict)
# --------------------------------------------------------------------------- #

def _scaled_records(job: JobConfig, quad):
    from .natural import ScaledPoles

    poles = compute_poles(quad)
    computed = scaled_pole_coordinates(midpoint_frame(quad), poles)
    override = None
    if job.scaled_pole_override is not None:
        override = ScaledPoles(*job.scaled_pole_override, source="override")
    return poles, computed, override


def _cmd_poles(job: JobConfig, quad) -> dict:
    poles, computed, override = _scaled_records(job, quad)
    return {
        "command": "poles",
        "pole5": _pole_json(poles.pole5),
        "pole6": _pole_json(poles.pole6),
        "scaled": _scaled_json(computed, override),
    }


def _poles_csv(rep: dict) -> str:
    rows = [("field", "value")]
    for name in ("pole5", "pole6"):
        p = rep[name]
        rows.append((f"{name}_type", p["type"]))
        if p["type"] == "finite":
            rows.append((f"{name}_x1", p["x1"]))
            rows.append((f"{name}_x2", p["x2"]))
        else:
            rows.append((f"{name}_dir1", p["direction"][0]))
            rows.append((f"{name}_dir2", p["direction"][1]))
    s = rep["scaled"]
    rows.append(("scaled_source", s["source"]))
    rows.append(("scaled_t5", _opt(s["t5"])))
    rows.append(("scaled_t6", _opt(s["t6"])))
    rows.append(("computed_t5", _opt(s["computed"]["t5"])))
    rows.append(("computed_t6", _opt(s["computed"]["t6"])))
    if s["override"] is not None:
        rows.append(("override_t5", s["override"]["t5"]))
        rows.append(("override_t6", s["override"]["t6"]))
        rows.append(("difference_t5", _opt(s["difference"]["t5"])))
        rows.append(("difference_t6", _opt(s["difference"]["t6"])))
    return _csv(rows)


def _poles_table(rep: dict) -> str:
    lines = [
        f"pole5:  {_pole_table_from_json(rep['pole5'])}",
        f"pole6:  {_pole_table_from_json(rep['pole6'])}",
    ]
    s = rep["scaled"]
    lines.append(f"scaled source:  {s['source']}")
    lines.append(f"scaled t5:      {_opt(s['t5'], _f8) or 'infinite'}")
    lines.append(f"scaled t6:      {_opt(s['t6'], _f8) or 'infinite'}")
    if s["override"] is not None:
        lines.append(f"computed t5:    {_opt(s['computed']['t5'], _f8) or 'infinite'}")
        lines.append(f"computed t6:    {_opt(s['computed']['t6'], _f8) or 'infinite'}")
        lines.append(f"override t5:    {_f8(s['override']['t5'])}")
        lines.append(f"override t6:    {_f8(s['override']['t6'])}")
        if s["difference"]["t5"] is not None:
            lines.append(f"difference t5:  {_f8(s['difference']['t5'])}")
        if s["difference"]["t6"] is not None:
            lines.append(f"difference t6:  {_f8(s['difference']['t6'])}")
    return "\n".join(lines) + "\n"


def _pole_table_from_json(p: dict) -> str:
    if p["type"] == "finite":
        return f"{_f8(p['x1'])}  {_f8(p['x2'])}"
    return f"at-infinity  direction ({_f8(p['direction'][0])}, {_f8(p['direction'][1])})"


def _fit(job: JobConfig, quad):
    return fit_map(
        quad,
        job.scheme,
        pairing=job.pairing,
        scaled_pole_override=job.scaled_pole_override,
    )


def _cmd_fit(job: JobConfig, quad) -> dict:
    m = _fit(job, quad)
    return {
        "command": "fit",
        "scheme": m.spec.name,
        "pairing": m.pairing,
        "monomials": [list(e) for e in m.spec.exponents],
        "params": [[float(a), float(b)] for a, b in m.params],
        "dropped": [list(m.spec.exponents[k]) for k in sorted(m.dropped)],
        "cond_estimate": m.cond_estimate,
        "scaled": {"source": m.scaled.source, "t5": m.scaled.t5, "t6": m.scaled.t6},
    }


def _fit_csv(rep: dict) -> str:
    dropped = {tuple(e) for e in rep["dropped"]}
    rows: list[Sequence] = [("exp1", "exp2", "a_x1", "a_x2", "dropped", "cond_estimate")]
    for (i, j), (a, b) in zip(rep["monomials"], rep["params"]):
        rows.append((i, j, a, b, int((i, j) in dropped), rep["cond_estimate"]))
    return _csv(rows)


def _fit_table(rep: dict) -> str:
    lines = [f"scheme: {rep['scheme']}    pairing: {rep['pairing']}"]
    for (i, j), (a, b) in zip(rep["monomials"], rep["params"]):
        lines.append(f"term ({i},{j}):  {_f8(a):>15}  {_f8(b):>15}")
    drop = ", ".join(f"({i},{j})" for i, j in rep["dropped"]) or "none"
    lines.append(f"dropped terms: {drop}")
    lines.append(f"cond estimate: {rep['cond_estimate']:.8e}")
    return "\n".join(lines) + "\n"


def _natural_points(job: JobConfig, command: str) -> list[tuple[float, float]]:
    if job.eval_points is not None:
        return list(job.eval_points)
    if job.grid is not None:
        n = job.grid
        axis = [-1.0 + 2.0 * k / (n - 1) for k in range(n)]
        return [(t1, t2) for t2 in axis for t1 in axis]
    raise ParseError(f"'{command}' requires 'eval_points' (--at) or 'grid' (--grid)")


def _cmd_eval(job: JobConfig, quad) -> dict:
    m = _fit(job, quad)
    rows = []
    for t1, t2 in _natural_points(job, "eval"):
        p = map_point(m, (t1, t2))
        rows.append([t1, t2, p.x1, p.x2])
    return {
        "command": "eval",
        "scheme": m.spec.name,
        "columns": ["t1", "t2", "x1", "x2"],
        "rows": rows,
    }


def _cmd_invert(job: JobConfig, quad) -> dict:
    if job.eval_points is None:
        raise ParseError("'invert' requires Cartesian targets via 'eval_points' (--at)")
    m = _fit(job, quad)
    rows = []
    for x1, x2 in job.eval_points:
        res = newton_inverse(m, (x1, x2))
        rows.append([x1, x2, res.point.t1, res.point.t2, res.iterations, res.residual])
    return {
        "command": "invert",
        "scheme": m.spec.name,
        "columns": ["x1", "x2", "t1", "t2", "iterations", "residual"],
        "rows": rows,
    }


#: Frozen flattening order of a geometry state row (after t1, t2).
GEOMETRY_COLUMNS = (
    ["t1", "t2", "pos_x1", "pos_x2"]
    + ["g1_x1", "g1_x2", "g2_x1", "g2_x2"]
    + ["g11_x1", "g11_x2", "g21_x1", "g21_x2", "g12_x1", "g12_x2", "g22_x1", "g22_x2"]
    + ["metric_11", "metric_12", "metric_22"]
    + ["metric_inv_11", "metric_inv_12", "metric_inv_22"]
    + ["gcontra1_x1", "gcontra1_x2", "gcontra2_x1", "gcontra2_x2"]
    + [f"gamma1_{a}{b}{c}" for a in (1, 2) for b in (1, 2) for c in (1, 2)]
    + [f"gamma2_{a}{b}{c}" for a in (1, 2) for b in (1, 2) for c in (1, 2)]
    + ["jac_det", "gauss_residual"]
)


def _geometry_row(s, residual: float) -> list[float]:
    return (
        [s.at.t1, s.at.t2, s.position.x1, s.position.x2]
        + [float(v) for v in s.g_cov.ravel()]
        + [float(v) for v in s.g_der.ravel()]
        + [float(s.metric[0, 0]), float(s.metric[0, 1]), float(s.metric[1, 1])]
        + [float(s.metric_inv[0, 0]), float(s.metric_inv[0, 1]), float(s.metric_inv[1, 1])]
        + [float(v) for v in s.g_contra.ravel()]
        + [float(v) for v in s.gamma1.ravel()]
        + [float(v) for v in s.gamma2.ravel()]
        + [s.jac_det, residual]
    )


def _cmd_geometry(job: JobConfig, quad) -> dict:
    m = _fit(job, quad)
    rows = []
    for t1, t2 in _natural_points(job, "geometry"):
        s = geometry_state(m, (t1, t2))
        rows.append(_geometry_row(s, verify_gauss_relations(s)))
    return {
        "command": "geometry",
        "scheme": m.spec.name,
        "columns": list(GEOMETRY_COLUMNS),
        "rows": rows,
    }


def _geometry_table(rep: dict) -> str:
    cols = rep["columns"]
    lines = []
    for row in rep["rows"]:
        vals = dict(zip(cols, row))
        lines.append(f"point ({_f8(vals['t1'])}, {_f8(vals['t2'])}):")
        lines.append(f"  position:   {_f8(vals['pos_x1'])}  {_f8(vals['pos_x2'])}")
        lines.append(f"  g1:         {_f8(vals['g1_x1'])}  {_f8(vals['g1_x2'])}")
        lines.append(f"  g2:         {_f8(vals['g2_x1'])}  {_f8(vals['g2_x2'])}")
        for name in ("g11", "g21", "g12", "g22"):
            lines.append(f"  {name}:        {_f8(vals[name + '_x1'])}  {_f8(vals[name + '_x2'])}")
        lines.append(
            "  metric:     "
            f"{_f8(vals['metric_11'])}  {_f8(vals['metric_12'])}  {_f8(vals['metric_22'])}"
        )
        lines.append(
            "  metric inv: "
            f"{_f8(vals['metric_inv_11'])}  {_f8(vals['metric_inv_12'])}  {_f8(vals['metric_inv_22'])}"
        )
        lines.append(
            f"  gcontra1:   {_f8(vals['gcontra1_x1'])}  {_f8(vals['gcontra1_x2'])}"
        )
        lines.append(
            f"  gcontra2:   {_f8(vals['gcontra2_x1'])}  {_f8(vals['gcontra2_x2'])}"
        )
        for pre in ("gamma1", "gamma2"):
            flat = "  ".join(_f8(vals[f"{pre}_{a}{b}{c}"]) for a in (1, 2) for b in (1, 2) for c in (1, 2))
            lines.append(f"  {pre}:     {flat}")
        lines.append(f"  jac det:    {_f8(vals['jac_det'])}")
        lines.append(f"  gauss residual: {vals['gauss_residual']:.3e}")
    return "\n".join(lines) + "\n"


def _cmd_area(job: JobConfig, quad) -> dict:
    m = _fit(job, quad)
    s = geometry_state(m, (0.0, 0.0))
    return {
        "command": "area",
        "scheme": m.spec.name,
        "shoelace_area": shoelace_area(quad),
        "center_jac_det": s.jac_det,
        "four_center_jac_det": 4.0 * s.jac_det,
        "integrated_jac_det": integrate_jacobian(m, job.quadrature_points),
        "quadrature_points": job.quadrature_points,
    }


def _area_csv(rep: dict) -> str:
    rows = [("field", "value")]
    for key in (
        "scheme",
        "shoelace_area",
        "center_jac_det",
        "four_center_jac_det",
        "integrated_jac_det",
        "quadrature_points",
    ):
        rows.append((key, rep[key]))
    return _csv(rows)


def _area_table(rep: dict) -> str:
    return (
        f"scheme:               {rep['scheme']}\n"
        f"shoelace area:        {_f8(rep['shoelace_area'])}\n"
        f"center jac det:       {_f8(rep['center_jac_det'])}\n"
        f"4 x center jac det:   {_f8(rep['four_center_jac_det'])}\n"
        f"integrated jac det:   {_f8(rep['integrated_jac_det'])}\n"
        f"quadrature points:    {rep['quadrature_points']}\n"
    )


def _cmd_compare(job: JobConfig, quad) -> dict:
    pascal_scheme = job.scheme if job.scheme != LAGRANGE4.name else "pascal6"
    pascal = fit_map(
        quad, pascal_scheme, pairing=job.pairing, scaled_pole_override=job.scaled_pole_override
    )
    lagrange = fit_map(quad, "lagrange4")
    n = job.grid if job.grid is not None else 11
    axis = [-1.0 + 2.0 * k / (n - 1) for k in range(n)]
    disc = 0.0
    for t2 in axis:
        for t1 in axis:
            a = map_point(pascal, (t1, t2))
            b = map_point(lagrange, (t1, t2))
            disc = max(disc, abs(a.x1 - b.x1), abs(a.x2 - b.x2))
    spec = basis_by_name(pascal_scheme)
    lag_rows = []
    for e in spec.exponents:
        if e in LAGRANGE4.exponents:
            k = LAGRANGE4.exponents.index(e)
            lag_rows.append([float(lagrange.params[k, 0]), float(lagrange.params[k, 1])])
        else:
            lag_rows.append(None)
    return {
        "command": "compare",
        "pascal_scheme": pascal_scheme,
        "pairing": pascal.pairing,
        "monomials": [list(e) for e in spec.exponents],
        "params_pascal": [[float(a), float(b)] for a, b in pascal.params],
        "params_lagrange": lag_rows,
        "grid": n,
        "max_cartesian_discrepancy": disc,
    }


def _compare_csv(rep: dict) -> str:
    rows: list[Sequence] = [
        ("exp1", "exp2", "pascal_x1", "pascal_x2", "lagrange_x1", "lagrange_x2", "grid", "max_discrepancy")
    ]
    for (i, j), p, l in zip(rep["monomials"], rep["params_pascal"], rep["params_lagrange"]):
        l1 = "" if l is None else _f17(l[0])
        l2 = "" if l is None else _f17(l[1])
        rows.append((i, j, p[0], p[1], l1, l2, rep["grid"], rep["max_cartesian_discrepancy"]))
    return _csv(rows)


def _compare_table(rep: dict) -> str:
    lines = [f"{rep['pascal_scheme']} (pairing {rep['pairing']}) vs lagrange4"]
    lines.append(f"{'term':>10}  {'pascal x1':>15} {'pascal x2':>15}  {'bilinear x1':>15} {'bilinear x2':>15}")
    for (i, j), p, l in zip(rep["monomials"], rep["params_pascal"], rep["params_lagrange"]):
        left = f"{_f8(p[0]):>15} {_f8(p[1]):>15}"
        right = f"{_f8(l[0]):>15} {_f8(l[1]):>15}" if l is not None else f"{'-':>15} {'-':>15}"
        lines.append(f"{f'({i},{j})':>10}  {left}  {right}")
    lines.append(f"grid: {rep['grid']} x {rep['grid']}")
    lines.append(f"max Cartesian discrepancy: {rep['max_cartesian_discrepancy']:.8e}")
    return "\n".join(lines) + "\n"


def _rows_csv(rep: dict) -> str:
    rows: list[Sequence] = [tuple(rep["columns"])]
    rows.extend(tuple(row) for row in rep["rows"])
    return _csv(rows)


def _rows_table(rep: dict) -> str:
    cols = rep["columns"]
    header = "  ".join(f"{c:>15}" for c in cols)
    lines = [header]
    for row in rep["rows"]:
        lines.append("  ".join(f"{_f8(v):>15}" if _is_number(v) else f"{v!s:>15}" for v in row))
    return "\n".join(lines) + "\n"


_RENDERERS = {
    ("poles", "csv"): _poles_csv,
    ("poles", "table"): _poles_table,
    ("fit", "csv"): _fit_csv,
    ("fit", "table"): _fit_table,
    ("eval", "csv"): _rows_csv,
    ("eval", "table"): _rows_table,
    ("invert", "csv"): _rows_csv,
    ("invert", "table"): _rows_table,
    ("geometry", "csv"): _rows_csv,
    ("geometry", "table"): _geometry_table,
    ("area", "csv"): _area_csv,
    ("area", "table"): _area_table,
    ("compare", "csv"): _compare_csv,
    ("compare", "table"): _compare_table,
}

_COMMANDS = {
    "poles": _cmd_poles,
    "fit": _cmd_fit,
    "eval": _cmd_eval,
    "invert": _cmd_invert,
    "geometry": _cmd_geometry,
    "area": _cmd_area,
    "compare": _cmd_compare,
}


# --------------------------------------------------------------------------- #
# Argument parsing and entry point
# --------------------------------------------------------------------------- #

def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        a, b = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b' with two numbers, got {text!r}") from None
    return (a, b)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadmap",
        description="Fit polynomial quadrilateral maps and report their geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the '{name}' report")
        p.add_argument("--input", required=True, help="job file (JSON)")
        p.add_argument("--scheme", choices=sorted(SCHEMES), help="override the job scheme")
        p.add_argument("--pairing", choices=list(PAIRINGS), help="override the pole-row pairing")
        p.add_argument(
            "--at",
            action="append",
            type=_parse_pair,
            metavar="A,B",
            help="evaluation point (repeatable); natural coordinates, Cartesian for 'invert'",
        )
        p.add_argument("--grid", type=int, help="N for an N x N natural grid")
        p.add_argument(
            "--quad-points",
            type=int,
            choices=sorted(GAUSS_RULES),
            help="Gauss points per axis for integrals",
        )
        p.add_argument("--format", choices=list(OUTPUT_FORMATS), help="output format")
        p.add_argument(
            "--override",
            type=_parse_pair,
            metavar="T5,T6",
            help="scaled pole coordinates to use instead of the computed ones",
        )
    return parser


def _merge(job: JobConfig, args: argparse.Namespace) -> JobConfig:
    if args.scheme:
        job = replace(job, scheme=args.scheme)
    if args.pairing:
        job = replace(job, pairing=args.pairing)
    if args.at:
        job = replace(job, eval_points=tuple(args.at))
    if args.grid is not None:
        if args.grid < 2:
            raise ParseError(f"key 'grid': expected an integer >= 2, got {args.grid}")
        job = replace(job, grid=args.grid)
    if args.quad_points is not None:
        job = replace(job, quadrature_points=args.quad_points)
    if args.format:
        job = replace(job, output_format=args.format)
    if args.override is not None:
        job = replace(job, scaled_pole_override=args.override)
    return job


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns the process exit status (0/1/2)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        job = _merge(read_job(args.input), args)
        quad = validate_quad(job.vertices)
        report = _COMMANDS[args.command](job, quad)
        if job.output_format == "json":
            text = json.dumps(report, indent=2) + "\n"
        else:
            text = _RENDERERS[(args.command, job.output_format)](report)
        sys.stdout.write(text)
        return 0
    except QuadMapError as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("reason", "cond_estimate", "iterations"):
            value = getattr(exc, attr, None)
            if value is not None:
                record[attr] = value
        sys.stderr.write(json.dumps(record) + "\n")
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
