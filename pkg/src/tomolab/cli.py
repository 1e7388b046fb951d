"""``tomolab`` command line.

Subcommands: check, tomogram, reconstruct, validate.
Exit codes: 0 all inequalities hold, 1 at least one violation,
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .config import ConfigError, RunConfig, default_grid, load_config, parse_grid
from .datasets import (
    DEFAULT_NORM_TOL,
    DEFAULT_Q_GRID,
    SCHEMA_VERSION,
    MeasuredTomogramDataset,
    fmt,
    validate_measured_tomogram,
    write_tomogram_csv,
)
from .entropy import von_neumann_entropy
from .errors import TomolabError
from .inequalities import GRID_TOL, sweep_reports
from .states import FockSuperposition, sample_wavefunction
from .tomography import (
    MULTIMODE_GRID,
    RECONSTRUCTION_GRID,
    SymplecticFrame,
    multimode_tomogram,
    optical_tomogram,
    reconstruct_density,
    symplectic_tomogram,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _json_value(v):
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def report_rows(reports):
    return [{**r.to_dict(), "schema_version": SCHEMA_VERSION} for r in reports]


def render_reports(reports, fmt_name) -> str:
    rows = report_rows(reports)
    if fmt_name == "json":
        return "[\n" + ",\n".join("  " + _json_value(r) for r in rows) + "\n]\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = ["name", "params", "lhs", "rhs", "margin", "satisfied", "tolerance", "schema_version"]
    writer.writerow(cols)
    for r in rows:
        writer.writerow([r["name"], _json_value(r["params"]), fmt(r["lhs"]), fmt(r["rhs"]),
                         fmt(r["margin"]), "true" if r["satisfied"] else "false",
                         fmt(r["tolerance"]), r["schema_version"]])
    return buf.getvalue()


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _out_format(args, cfg=None, default="json"):
    if args.format:
        return args.format
    if cfg is not None and cfg.output_format:
        return cfg.output_format
    return default


def _summary(reports, code):
    worst = min((r.margin for r in reports), default=float("nan"))
    bad = sum(not r.satisfied for r in reports)
    print(f"{len(reports)} reports, {bad} violated, min margin {worst:.6g}", file=sys.stderr)
    return code


def run_check_command(cfg: RunConfig, out=None, fmt_name=None, tol=None) -> int:
    if not cfg.checks:
        raise ConfigError("config lists no checks")
    grid = cfg.grid
    state = cfg.state
    if isinstance(state, FockSuperposition) and grid is not None:
        state = sample_wavefunction(state, grid)
    reports = sweep_reports(state, cfg.thetas, cfg.qs or list(DEFAULT_Q_GRID), cfg.checks, r=cfg.r,
                            tolerance=tol if tol is not None else cfg.tolerance)
    _emit(render_reports(reports, fmt_name or cfg.output_format), out or cfg.output_path)
    code = EXIT_OK if all(r.satisfied for r in reports) else EXIT_VIOLATION
    return _summary(reports, code)


def run_tomogram_command(cfg: RunConfig, out=None, fmt_name="csv") -> int:
    state = cfg.state
    n = getattr(state, "n_modes", 1)
    blocks = []
    if n > 1:
        grid = cfg.grid or MULTIMODE_GRID
        header = [f"theta_{k + 1}" for k in range(n)] + [f"X_{k + 1}" for k in range(n)] + ["w"]
        for theta in cfg.thetas:
            frames = [SymplecticFrame(math.cos(theta), math.sin(theta))] * n
            tomo = multimode_tomogram(state, frames, [grid] * n)
            axes = np.meshgrid(*[g.points for g in tomo.density.grids], indexing="ij")
            xs = np.stack([a.ravel() for a in axes], axis=1)
            blocks.append(([theta] * n, xs, tomo.density.weights.ravel()))
    elif cfg.frames:
        header = ["mu", "nu", "X", "w"]
        for mu, nu in cfg.frames:
            frame = SymplecticFrame(mu, nu)
            w = symplectic_tomogram(state, frame, default_grid(cfg).scaled(frame.r))
            blocks.append(([mu, nu], w.grid.points[:, None], w.weights))
    else:
        header = ["theta", "X", "w"]
        for theta in cfg.thetas:
            w = optical_tomogram(state, theta, default_grid(cfg))
            blocks.append(([theta], w.grid.points[:, None], w.weights))
    path = out or cfg.output_path
    if fmt_name == "json":
        payload = {"schema_version": SCHEMA_VERSION, "columns": header,
                   "blocks": [{"labels": list(lab), "X": xs.tolist(), "w": ws.tolist()}
                              for lab, xs, ws in blocks]}
        _emit(_json_value(payload) + "\n", path)
    elif path in (None, "-"):
        raise ConfigError("tomogram CSV output needs --out or output.path")
    else:
        write_tomogram_csv(path, blocks, header)
    return EXIT_OK


def _reconstruction_kwargs(spec):
    kw = {}
    if "grid" in spec:
        kw["grid"] = parse_grid(spec["grid"])
    if "mu_cutoff" in spec:
        kw["mu_cutoff"] = float(spec["mu_cutoff"])
    if "mu_points" in spec:
        kw["mu_points"] = int(spec["mu_points"])
    return kw


def run_reconstruct_command(source, spec, out=None, fmt_name="json", reference=None) -> int:
    kw = _reconstruction_kwargs(spec)
    rho = reconstruct_density(source, **kw)
    grid = rho.grid
    info = {"schema_version": SCHEMA_VERSION,
            "grid": {"xmin": grid.x_min, "xmax": grid.x_max, "points": grid.n_points},
            "trace": grid.integrate(rho.diagonal),
            "von_neumann_entropy": von_neumann_entropy(rho)}
    if reference is not None:
        info["fidelity"] = rho.expectation(reference)
    if fmt_name == "json":
        info["re"] = rho.elements.real.tolist()
        info["im"] = rho.elements.imag.tolist()
        _emit(_json_value(info) + "\n", out)
    else:
        x = grid.points
        lines = [f"# schema_version={SCHEMA_VERSION}", "x,x_prime,re,im"]
        for i in range(grid.n_points):
            for j in range(grid.n_points):
                z = rho.elements[i, j]
                lines.append(f"{fmt(x[i])},{fmt(x[j])},{fmt(z.real)},{fmt(z.imag)}")
        _emit("\n".join(lines) + "\n", out)
    msg = ", ".join(f"{k} {info[k]:.6g}" for k in ("trace", "von_neumann_entropy", "fidelity") if k in info)
    print(f"reconstructed {grid.n_points}x{grid.n_points} density matrix: {msg}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomolab",
        description="Tomograms, tomographic entropies and entropic uncertainty checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required):
        p.add_argument("--config", required=config_required, metavar="PATH", help="JSON run configuration")
        p.add_argument("--out", metavar="PATH", help="output file (default: config output.path or stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--tol", type=float, metavar="REAL")

    common(sub.add_parser("check", help="evaluate inequality checks for a configured state"), True)
    common(sub.add_parser("tomogram", help="write optical/symplectic tomograms as CSV"), True)
    p = sub.add_parser("reconstruct", help="reconstruct a density matrix from tomograms")
    common(p, False)
    p.add_argument("--data", metavar="PATH", help="tomogram CSV (theta,X,w) covering [0, pi)")
    p = sub.add_parser("validate", help="check measured tomograms against the entropic relations")
    common(p, False)
    p.add_argument("--data", required=True, metavar="PATH", help="tomogram CSV (theta,X,w)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None and not args.tol > 0:
        print("error: invalid input: --tol must be > 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        cfg = load_config(args.config) if args.config else None
        if args.command == "check":
            return run_check_command(cfg, args.out, _out_format(args, cfg), args.tol)
        if args.command == "tomogram":
            return run_tomogram_command(cfg, args.out, args.format or "csv")
        if args.command == "reconstruct":
            spec = cfg.reconstruction if cfg else {}
            if args.data:
                table = MeasuredTomogramDataset.read_csv(args.data, args.tol or DEFAULT_NORM_TOL).to_table()
                return run_reconstruct_command(table, spec, args.out, _out_format(args, cfg))
            if cfg is None:
                raise ConfigError("reconstruct needs --config or --data")
            ref = None
            kw = _reconstruction_kwargs(spec)
            if isinstance(cfg.state, FockSuperposition):
                ref = sample_wavefunction(cfg.state, kw.get("grid", RECONSTRUCTION_GRID))
            return run_reconstruct_command(cfg.state, spec, args.out, _out_format(args, cfg), ref)
        # validate
        dataset = MeasuredTomogramDataset.read_csv(args.data, args.tol or DEFAULT_NORM_TOL)
        qs = cfg.qs if cfg and cfg.qs else list(DEFAULT_Q_GRID)
        ineq_tol = cfg.tolerance if cfg and cfg.tolerance else GRID_TOL
        reports, code = validate_measured_tomogram(dataset, cfg.pairs if cfg else None, qs, ineq_tol)
        _emit(render_reports(reports, _out_format(args, cfg)), args.out or (cfg.output_path if cfg else None))
        return _summary(reports, code)
    except (TomolabError, OSError) as exc:
        kind = type(exc).__name__
        print(f"error: invalid input ({kind}): {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
