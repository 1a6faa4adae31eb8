"""Command-line front end: run, sweep, verify.

``run`` evaluates both phase routes for a configured scenario at a list
of boosts; ``sweep`` varies the boost speed over a range and emits one
row per step; ``verify`` executes a randomized property suite.  Output
is CSV (fixed column order, 17-significant-digit scientific notation) or
a JSON report; identical inputs produce byte-identical output unless
``--timing`` is given, which fills the otherwise-zero wall-time column.

Exit codes: 0 success, 1 verification/quadrature failure, 2 bad config.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from . import __version__
from .constants import C_LIGHT, E_CHARGE, HBAR
from .em import EmConfiguration, polynomial_gauge_configuration
from .holonomy import flux_phase, potential_phase
from .polynomial import Polynomial4D
from .quadrature import QuadratureSpec, ToleranceNotMet
from .scenarios import CapacitorScenario, SolenoidScenario, build_capacitor_scenario, build_solenoid_scenario
from .spacetime import (
    Boost,
    Event,
    SpacetimeSurface,
    Worldline,
    WorldlinePair,
    bulged_ruled_surface,
    ruled_surface_equal_time,
    three_vec,
)
from .verification import SUITES, run_suite

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """A config file violates the schema; the message carries the field path."""


# ---------------------------------------------------------------------------
# config schema


@dataclass(frozen=True)
class RunConfig:
    """A validated run request: scenario, boosts, surface, quadrature, output."""

    kind: str
    pair: WorldlinePair
    em: EmConfiguration
    q: float
    hbar: float
    c: float
    analytic_total: float | None
    boosts: tuple[float, ...]
    surface_kind: str
    surface_args: dict[str, Any]
    quadrature: QuadratureSpec
    output: str | None
    fmt: str
    strict: bool
    echo: dict[str, Any]


def _require_mapping(node: Any, path: str) -> dict:
    if not isinstance(node, dict):
        raise ConfigError(f"{path}: expected an object, got {type(node).__name__}")
    return node


def _check_keys(node: dict, allowed: set[str], path: str) -> None:
    unknown = sorted(set(node) - allowed)
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}: unknown key (allowed: {sorted(allowed)})")


def _number(node: dict, key: str, path: str, default: float) -> float:
    raw = node.get(key, default)
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number")
    return float(raw)


def _integer(node: dict, key: str, path: str, default: int) -> int:
    raw = node.get(key, default)
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ConfigError(f"{path}.{key}: expected an integer")
    return raw


def _vector(node: dict, key: str, path: str, length: int, default) -> np.ndarray:
    raw = node.get(key, default)
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != length
        or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in raw)
    ):
        raise ConfigError(f"{path}.{key}: expected a list of {length} numbers")
    return np.asarray(raw, dtype=float)


def _parse_polynomial(raw: Any, path: str) -> Polynomial4D:
    if not isinstance(raw, list):
        raise ConfigError(f"{path}: expected a list of [i, j, k, l, coeff] terms")
    coeffs = {}
    for n, term in enumerate(raw):
        if (
            not isinstance(term, (list, tuple))
            or len(term) != 5
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in term)
            or any(not isinstance(x, int) or x < 0 for x in term[:4])
        ):
            raise ConfigError(f"{path}[{n}]: expected [i, j, k, l, coeff] with integer exponents")
        coeffs[tuple(term[:4])] = coeffs.get(tuple(term[:4]), 0.0) + float(term[4])
    return Polynomial4D(coeffs)


def _parse_worldline(raw: Any, path: str) -> Worldline:
    if not isinstance(raw, list) or len(raw) < 2:
        raise ConfigError(f"{path}: expected a list of at least two [t, x, y, z] vertices")
    events = []
    for n, vert in enumerate(raw):
        if (
            not isinstance(vert, (list, tuple))
            or len(vert) != 4
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in vert)
        ):
            raise ConfigError(f"{path}[{n}]: expected [t, x, y, z]")
        events.append(Event(float(vert[0]), np.asarray(vert[1:], dtype=float)))
    try:
        return Worldline(events)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_scenario(node: dict, path: str):
    """Returns (kind, pair, em, q, hbar, c, analytic_total)."""
    kind = node.get("kind")
    if kind == "solenoid":
        _check_keys(
            node,
            {"kind", "b0", "radius", "square_half_side", "packet_speed_over_c", "axis_center", "q", "hbar", "c"},
            path,
        )
        c = _number(node, "c", path, C_LIGHT)
        s = SolenoidScenario(
            b0=_number(node, "b0", path, 1.0),
            radius=_number(node, "radius", path, 0.1),
            square_half_side=_number(node, "square_half_side", path, 0.5),
            packet_speed=_number(node, "packet_speed_over_c", path, 0.5) * c,
            axis_center=_vector(node, "axis_center", path, 3, [0.0, 0.0, 0.0]),
            q=_number(node, "q", path, E_CHARGE),
            hbar=_number(node, "hbar", path, HBAR),
            c=c,
        )
        pair, em = build_solenoid_scenario(s)
        return kind, pair, em, s.q, s.hbar, s.c, s.q / s.hbar * s.enclosed_flux
    if kind == "capacitor":
        _check_keys(
            node,
            {"kind", "e_mag", "chord_length", "theta", "pulse_start", "pulse_duration", "station_pad", "center", "q", "hbar", "c"},
            path,
        )
        s = CapacitorScenario(
            e_mag=_number(node, "e_mag", path, 1.0),
            chord_length=_number(node, "chord_length", path, 1.0),
            theta=_number(node, "theta", path, math.pi / 6.0),
            pulse_start=_number(node, "pulse_start", path, 1.0),
            pulse_duration=_number(node, "pulse_duration", path, 1.0),
            station_pad=_number(node, "station_pad", path, 0.2),
            center=_vector(node, "center", path, 3, [0.0, 0.0, 0.0]),
            q=_number(node, "q", path, E_CHARGE),
            hbar=_number(node, "hbar", path, HBAR),
            c=_number(node, "c", path, C_LIGHT),
        )
        pair, em = build_capacitor_scenario(s)
        analytic = -s.q / s.hbar * s.e_mag * s.chord_length * s.pulse_duration * math.cos(2.0 * s.theta)
        return kind, pair, em, s.q, s.hbar, s.c, analytic
    if kind == "custom-gauge":
        _check_keys(node, {"kind", "v_coeffs", "a_coeffs", "path_a", "path_b", "q", "hbar", "c"}, path)
        v_poly = _parse_polynomial(node.get("v_coeffs", []), f"{path}.v_coeffs")
        raw_a = node.get("a_coeffs", [[], [], []])
        if not isinstance(raw_a, list) or len(raw_a) != 3:
            raise ConfigError(f"{path}.a_coeffs: expected three term lists")
        a_polys = tuple(_parse_polynomial(raw_a[i], f"{path}.a_coeffs[{i}]") for i in range(3))
        pair_a = _parse_worldline(node.get("path_a"), f"{path}.path_a")
        pair_b = _parse_worldline(node.get("path_b"), f"{path}.path_b")
        try:
            pair = WorldlinePair(a=pair_a, b=pair_b)
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        em = polynomial_gauge_configuration(v_poly, a_polys)
        q = _number(node, "q", path, E_CHARGE)
        hbar = _number(node, "hbar", path, HBAR)
        c = _number(node, "c", path, C_LIGHT)
        return kind, pair, em, q, hbar, c, None
    raise ConfigError(f"{path}.kind: expected solenoid | capacitor | custom-gauge, got {kind!r}")


def _parse_surface(node: Any, path: str) -> tuple[str, dict[str, Any]]:
    node = _require_mapping(node, path)
    kind = node.get("kind", "equal-time-ruled")
    if kind == "equal-time-ruled":
        _check_keys(node, {"kind"}, path)
        return kind, {}
    if kind == "bulged":
        _check_keys(node, {"kind", "amp_t", "amp_pos", "modes"}, path)
        modes = node.get("modes", [1, 1])
        if (
            not isinstance(modes, list)
            or len(modes) != 2
            or any(isinstance(m, bool) or not isinstance(m, int) or m < 1 for m in modes)
        ):
            raise ConfigError(f"{path}.modes: expected two positive integers")
        return kind, {
            "amp_t": _number(node, "amp_t", path, 0.0),
            "amp_pos": _vector(node, "amp_pos", path, 3, [0.0, 0.0, 0.0]),
            "modes": (modes[0], modes[1]),
        }
    if kind == "custom-mesh":
        _check_keys(node, {"kind", "nodes"}, path)
        try:
            nodes = np.asarray(node.get("nodes"), dtype=float)
        except (TypeError, ValueError):
            raise ConfigError(f"{path}.nodes: expected a 2-D grid of [t, x, y, z] nodes") from None
        if nodes.ndim != 3 or nodes.shape[2] != 4 or nodes.shape[0] < 2 or nodes.shape[1] < 2:
            raise ConfigError(f"{path}.nodes: expected shape (n_u >= 2, n_s >= 2, 4), got {nodes.shape}")
        if not np.isfinite(nodes).all():
            raise ConfigError(f"{path}.nodes: entries must be finite")
        return kind, {"nodes": nodes}
    raise ConfigError(f"{path}.kind: expected equal-time-ruled | bulged | custom-mesh, got {kind!r}")


def _parse_quadrature(node: Any, path: str) -> QuadratureSpec:
    node = _require_mapping(node, path)
    _check_keys(node, {"base_order", "initial_panels", "tol", "max_depth"}, path)
    panels = node.get("initial_panels", [16, 16])
    if (
        not isinstance(panels, list)
        or len(panels) != 2
        or any(isinstance(p, bool) or not isinstance(p, int) for p in panels)
    ):
        raise ConfigError(f"{path}.initial_panels: expected two integers")
    try:
        return QuadratureSpec(
            base_order=_integer(node, "base_order", path, 4),
            initial_panels=(panels[0], panels[1]),
            tol=_number(node, "tol", path, 1e-9),
            max_depth=_integer(node, "max_depth", path, 18),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_config(config_path: str) -> RunConfig:
    """Parse and validate a JSON run config; raise :class:`ConfigError` loudly."""
    try:
        with open(config_path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {config_path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{config_path}: not valid JSON ({exc})") from exc

    root = _require_mapping(raw, "config")
    _check_keys(
        root,
        {"schema_version", "scenario", "boosts", "surface", "quadrature", "output", "format", "strict"},
        "config",
    )
    version = root.get("schema_version")
    if version != 1:
        raise ConfigError(f"config.schema_version: expected 1, got {version!r}")

    kind, pair, em, q, hbar, c, analytic = _parse_scenario(
        _require_mapping(root.get("scenario"), "config.scenario"), "config.scenario"
    )

    boosts_raw = root.get("boosts", [])
    if not isinstance(boosts_raw, list) or any(
        isinstance(b, bool) or not isinstance(b, (int, float)) for b in boosts_raw
    ):
        raise ConfigError("config.boosts: expected a list of v/c fractions")
    boosts = tuple(float(b) for b in boosts_raw)
    for n, b in enumerate(boosts):
        if not abs(b) < 1.0:
            raise ConfigError(f"config.boosts[{n}]: |v/c| must be < 1, got {b!r}")

    surface_kind, surface_args = _parse_surface(root.get("surface", {"kind": "equal-time-ruled"}), "config.surface")
    quad = _parse_quadrature(root.get("quadrature", {}), "config.quadrature")

    output = root.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError("config.output: expected a path string")
    fmt = root.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"config.format: expected csv | json, got {fmt!r}")
    strict = root.get("strict", False)
    if not isinstance(strict, bool):
        raise ConfigError("config.strict: expected true or false")

    return RunConfig(
        kind=kind,
        pair=pair,
        em=em,
        q=q,
        hbar=hbar,
        c=c,
        analytic_total=analytic,
        boosts=boosts,
        surface_kind=surface_kind,
        surface_args=surface_args,
        quadrature=quad,
        output=output,
        fmt=fmt,
        strict=strict,
        echo=raw,
    )


# ---------------------------------------------------------------------------
# surfaces


def _mesh_surface(nodes: np.ndarray) -> SpacetimeSurface:
    """Bilinear interpolation of a (n_u, n_s, 4) node grid, with exact jacobian."""
    n_u, n_s = nodes.shape[0] - 1, nodes.shape[1] - 1

    def locate(x: float, n: int) -> tuple[int, float]:
        scaled = min(max(x, 0.0), 1.0) * n
        i = min(int(scaled), n - 1)
        return i, scaled - i

    def corners(u: float, s: float):
        i, fu = locate(u, n_u)
        j, fs = locate(s, n_s)
        return nodes[i, j], nodes[i + 1, j], nodes[i, j + 1], nodes[i + 1, j + 1], fu, fs

    def chart(u: float, s: float) -> Event:
        c00, c10, c01, c11, fu, fs = corners(u, s)
        val = (
            (1 - fu) * (1 - fs) * c00
            + fu * (1 - fs) * c10
            + (1 - fu) * fs * c01
            + fu * fs * c11
        )
        return Event(float(val[0]), val[1:].copy())

    def jacobian(u: float, s: float):
        c00, c10, c01, c11, fu, fs = corners(u, s)
        du = n_u * ((1 - fs) * (c10 - c00) + fs * (c11 - c01))
        ds = n_s * ((1 - fu) * (c01 - c00) + fu * (c11 - c10))
        return du, ds

    return SpacetimeSurface(
        chart=chart,
        jacobian=jacobian,
        u_breaks=tuple(i / n_u for i in range(n_u + 1)),
        s_breaks=tuple(j / n_s for j in range(n_s + 1)),
    )


def _make_surface(
    pair: WorldlinePair, kind: str, args: dict[str, Any], slicing: Boost | None
) -> SpacetimeSurface:
    if kind == "equal-time-ruled":
        return ruled_surface_equal_time(pair, slicing)
    if kind == "bulged":
        return bulged_ruled_surface(
            pair, amp_pos=args["amp_pos"], amp_t=args["amp_t"], modes=args["modes"],
            slicing=slicing,
        )
    return _mesh_surface(args["nodes"])


# ---------------------------------------------------------------------------
# rows and reports

SWEEP_COLUMNS = (
    "v_over_c",
    "gamma",
    "phase_magnetic",
    "phase_electric",
    "phase_total",
    "analytic_total",
    "abs_err",
    "panels_used",
    "wall_time_ms",
    "phase_total_mod_2pi",
)


@dataclass(frozen=True)
class SweepRow:
    """One boost's phase decomposition; total = magnetic + electric exactly."""

    v_over_c: float
    gamma: float
    phase_magnetic: float
    phase_electric: float
    phase_total: float
    analytic_total: float | None
    abs_err: float | None
    panels_used: int
    wall_time_ms: float
    phase_total_mod_2pi: float


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def _row_cells(row: SweepRow) -> list[str]:
    cells = []
    for col in SWEEP_COLUMNS:
        val = getattr(row, col)
        if val is None:
            cells.append("")
        elif col == "panels_used":
            cells.append(str(val))
        else:
            cells.append(_fmt(val))
    return cells


def _row_dict(row: SweepRow) -> dict[str, Any]:
    return {col: getattr(row, col) for col in SWEEP_COLUMNS}


def _evaluate_row(
    cfg: RunConfig, v_frac: float, *, timing: bool, strict: bool, with_potential: bool
) -> tuple[SweepRow, float | None]:
    """Flux-route row at one boost, plus the route residual when requested.

    The flux is integrated over a surface sliced along the boosted frame's
    simultaneity, with fields and tangents transformed per sample; the lab
    chart stays the coordinate system of record, which is exact arithmetic
    where direct boosted coordinates would lose half the significand.
    """
    b = None if v_frac == 0.0 else Boost(three_vec(v_frac * cfg.c, 0.0, 0.0), cfg.c)
    gamma = 1.0 if b is None else b.gamma
    srf = _make_surface(cfg.pair, cfg.surface_kind, cfg.surface_args, b)

    started = time.perf_counter()
    dec = flux_phase(srf, cfg.em, q=cfg.q, spec=cfg.quadrature, hbar=cfg.hbar, frame=b)
    elapsed_ms = (time.perf_counter() - started) * 1e3 if timing else 0.0

    route_residual = None
    if with_potential:
        # The path integral of the potentials is a Lorentz scalar, so the
        # best-conditioned frame to evaluate it in is always the lab one.
        pot = potential_phase(cfg.pair, cfg.em, q=cfg.q, hbar=cfg.hbar, strict=strict)
        route_residual = abs(pot - dec.total) / max(abs(dec.total), 1e-300)

    abs_err = None if cfg.analytic_total is None else abs(dec.total - cfg.analytic_total)
    row = SweepRow(
        v_over_c=v_frac,
        gamma=gamma,
        phase_magnetic=dec.magnetic,
        phase_electric=dec.electric,
        phase_total=dec.total,
        analytic_total=cfg.analytic_total,
        abs_err=abs_err,
        panels_used=dec.panels_used,
        wall_time_ms=elapsed_ms,
        phase_total_mod_2pi=dec.total % TWO_PI,
    )
    return row, route_residual


def _render_rows(rows: list[SweepRow], fmt: str, cfg: RunConfig, summary: dict[str, Any]) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(_row_cells(row))
        return buf.getvalue()
    report = {
        "config": cfg.echo,
        "rows": [_row_dict(r) for r in rows],
        "summary": summary,
        "versions": {"abflux": __version__, "numpy": np.__version__},
    }
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"output: cannot write {output!r}: {exc}") from exc


def _summarize(rows: list[SweepRow], route_residuals: list[float]) -> dict[str, Any]:
    reference = rows[0].analytic_total
    if reference is None:
        reference = rows[0].phase_total
    scale = max(abs(reference), 1e-300)
    invariance = max((abs(r.phase_total - reference) / scale for r in rows), default=0.0)
    return {
        "max_invariance_residual": invariance,
        "max_route_residual": max(route_residuals) if route_residuals else None,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_run(args: argparse.Namespace) -> int:
    cfg = _merge_cli(load_config(args.config), args)
    boosts = cfg.boosts or (0.0,)
    rows, residuals = [], []
    for frac in boosts:
        row, route = _evaluate_row(cfg, frac, timing=args.timing, strict=cfg.strict, with_potential=True)
        rows.append(row)
        residuals.append(route)
    summary = _summarize(rows, [r for r in residuals if r is not None])
    _emit(_render_rows(rows, cfg.fmt, cfg, summary), cfg.output)
    if cfg.fmt == "csv":
        print(
            f"max_invariance_residual={_fmt(summary['max_invariance_residual'])} "
            f"max_route_residual={_fmt(summary['max_route_residual'])}",
            file=sys.stderr,
        )
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _merge_cli(load_config(args.config), args)
    if args.param != "v":
        raise ConfigError(f"--param: only 'v' is supported, got {args.param!r}")
    lo, hi, steps = args.start, args.stop, args.steps
    for name, val in (("--from", lo), ("--to", hi)):
        if not abs(val) < 0.99:
            raise ConfigError(f"{name}: |v/c| must be < 0.99, got {val!r}")
    if steps < 1:
        raise ConfigError(f"--steps: expected a positive integer, got {steps!r}")
    rows = []
    for frac in np.linspace(lo, hi, steps):
        row, _ = _evaluate_row(cfg, float(frac), timing=args.timing, strict=cfg.strict, with_potential=False)
        rows.append(row)
    _emit(_render_rows(rows, cfg.fmt, cfg, _summarize(rows, [])), cfg.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cases = run_suite(args.suite, seed=args.seed, count=args.count)
    all_passed = all(c.passed for c in cases)
    if args.format == "json":
        report = {
            "suite": args.suite,
            "seed": args.seed,
            "count": args.count,
            "cases": [
                {"name": c.name, "residual": c.residual, "tol": c.tol, "passed": c.passed}
                for c in cases
            ],
            "passed": all_passed,
            "versions": {"abflux": __version__, "numpy": np.__version__},
        }
        text = json.dumps(report, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("name", "residual", "tol", "passed"))
        for c in cases:
            writer.writerow((c.name, _fmt(c.residual), _fmt(c.tol), str(c.passed).lower()))
        text = buf.getvalue()
    _emit(text, args.output)
    if cases:
        worst = max(cases, key=lambda c: c.residual / c.tol)
        print(
            f"{args.suite}: {sum(c.passed for c in cases)}/{len(cases)} cases passed; "
            f"worst residual {worst.residual:.3e} (tol {worst.tol:.1e}, {worst.name})",
            file=sys.stderr,
        )
    return 0 if all_passed else 1


def _merge_cli(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    """CLI flags override the corresponding config-file fields."""
    updates: dict[str, Any] = {}
    if args.output is not None:
        updates["output"] = args.output
    if args.format is not None:
        updates["fmt"] = args.format
    if args.strict:
        updates["strict"] = True
    return replace(cfg, **updates) if updates else cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abflux",
        description="Interference phases from electromagnetic potentials and fluxes, frame by frame.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), help="report format (default csv)")
    common.add_argument("--strict", action="store_true", help="escalate fields-on-path warnings to errors")
    common.add_argument(
        "--timing", action="store_true", help="fill wall_time_ms (breaks byte-identical output)"
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_run = sub.add_parser("run", parents=[common], help="evaluate both phase routes at each configured boost")
    p_run.add_argument("config", help="JSON config path")
    p_run.set_defaults(fn=cmd_run)

    p_sweep = sub.add_parser("sweep", parents=[common], help="sweep the boost speed and tabulate phase parts")
    p_sweep.add_argument("config", help="JSON config path")
    p_sweep.add_argument("--param", required=True, help="swept parameter (only 'v')")
    p_sweep.add_argument("--from", dest="start", type=float, required=True, help="first v/c")
    p_sweep.add_argument("--to", dest="stop", type=float, required=True, help="last v/c")
    p_sweep.add_argument("--steps", type=int, required=True, help="number of rows")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_verify = sub.add_parser("verify", parents=[common], help="run a randomized property suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--count", type=int, default=None, help="cases to run (suite default if omitted)")
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None and args.cmd == "verify":
        args.format = "csv"
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ToleranceNotMet as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
