"""
Command-line interface.

Subcommands: eigen, spectrum, cavity, scan, oracle-check. Rates are in units
of gamma, angles in microradians, fields in tesla.

Exit codes: 0 success, 1 oracle check failed, 2 invalid parameters or config,
3 I/O failure, 4 infeasible calibration.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cavity import (CalibrationError, CavityConfig, ConfigError, baseline_reflectivity,
                     calibrate, collective_params_from_cavity, dip_separation,
                     load_config, reflectivity_spectrum)
from .eigen import CollectiveParams, collective_eigenvalues
from .files import fmt, write_manifest, write_spectrum_csv
from .oracle import run_oracle_suite
from .spectrum import (DEFAULT_POINTS, classify_regime, default_span,
                       measure_splitting, radiation_spectrum)

EXIT_OK, EXIT_CHECK, EXIT_INVALID, EXIT_IO, EXIT_CALIBRATION = 0, 1, 2, 3, 4

URAD = 1e-6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _complex(z):
    return None if z is None else [z.real, z.imag]


def _params(args) -> CollectiveParams:
    try:
        return CollectiveParams(args.big_gamma, args.lamb_shift, args.phi)
    except ValueError as exc:
        raise CliError(f"invalid parameters: {exc}", EXIT_INVALID)


def _grid_args(args, params):
    span = args.span if args.span is not None else default_span(params)
    if not span > 0:
        raise CliError("--span must be positive", EXIT_INVALID)
    if args.points < 16:
        raise CliError("--points must be >= 16", EXIT_INVALID)
    return span, args.points


def _write(path, grid, column, comments):
    try:
        return write_spectrum_csv(path, grid, column, comments)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO)


def _manifest(path, command, parameters):
    try:
        write_manifest(path, command, parameters, __version__)
    except OSError as exc:
        raise CliError(f"cannot write manifest for {path}: {exc}", EXIT_IO)


def _plot_script(csv_path, column):
    script = Path(str(csv_path) + ".gp")
    text = (
        "set datafile separator ','\n"
        "set datafile commentschars '#'\n"
        "set xlabel 'detuning (gamma)'\n"
        f"set ylabel '{column}'\n"
        f"plot '{Path(csv_path).name}' every ::1 using 1:2 with lines title '{column}'\n"
    )
    try:
        script.write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {script}: {exc}", EXIT_IO)


# -- eigen -----------------------------------------------------------------

def eigen_report(params: CollectiveParams) -> dict:
    eig = collective_eigenvalues(params)
    report = classify_regime(params)
    return {
        "params": {"gamma": params.gamma, "big_gamma": params.big_gamma,
                   "lamb_shift": params.lamb_shift, "phi": params.phi},
        "lambda_plus": _complex(eig.lambda_plus),
        "lambda_minus": _complex(eig.lambda_minus),
        "a_plus": _complex(eig.a_plus),
        "a_minus": _complex(eig.a_minus),
        "delta_plus": _complex(eig.delta_plus),
        "delta_minus": _complex(eig.delta_minus),
        "x": eig.x_param,
        "y": eig.y_param,
        "degenerate": eig.degenerate,
        "splitting": report.predicted_splitting,
        "regime": report.to_dict(),
    }


def cmd_eigen(args) -> int:
    report = eigen_report(_params(args))
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_OK

    def c(z):
        return "undefined" if z is None else f"{fmt(z[0])} {'+' if z[1] >= 0 else '-'} {fmt(abs(z[1]))}i"

    reg = report["regime"]
    print(f"lambda_plus   {c(report['lambda_plus'])}")
    print(f"lambda_minus  {c(report['lambda_minus'])}")
    print(f"A_plus        {c(report['a_plus'])}")
    print(f"A_minus       {c(report['a_minus'])}")
    print(f"delta_plus    {c(report['delta_plus'])}")
    print(f"delta_minus   {c(report['delta_minus'])}")
    print(f"x             {'undefined' if report['x'] is None else fmt(report['x'])}")
    print(f"y             {fmt(report['y'])}")
    print(f"degenerate    {report['degenerate']}")
    print(f"splitting     {fmt(report['splitting'])}")
    print(f"measured      {fmt(reg['measured_splitting'])}")
    print(f"regime        {reg['label']}")
    return EXIT_OK


# -- spectrum ----------------------------------------------------------------

def cmd_spectrum(args) -> int:
    params = _params(args)
    span, points = _grid_args(args, params)
    grid = radiation_spectrum(params, span, points, args.normalize)
    split = measure_splitting(grid)
    comments = [
        f"param,gamma,{fmt(params.gamma)}",
        f"param,Gamma,{fmt(params.big_gamma)}",
        f"param,L,{fmt(params.lamb_shift)}",
        f"param,phi,{fmt(params.phi)}",
        f"splitting,{fmt(split.splitting)}",
    ]
    path = _write(args.out, grid, "intensity", comments)
    _manifest(path, "spectrum", {"big_gamma": params.big_gamma, "lamb_shift": params.lamb_shift,
                                 "phi": params.phi, "span": span, "points": points,
                                 "normalize": bool(args.normalize)})
    if args.emit_plot_script:
        _plot_script(path, "intensity")
    return EXIT_OK


# -- cavity ------------------------------------------------------------------

def _cavity_config(args) -> CavityConfig:
    try:
        cfg = load_config(args.config) if args.config else CavityConfig()
    except OSError as exc:
        raise CliError(f"cannot read config {args.config}: {exc}", EXIT_INVALID)
    except ConfigError as exc:
        raise CliError(f"config error: {exc}", EXIT_INVALID)
    target, angle = args.calibrate_L, args.calibrate_angle
    if (target is None) != (angle is None):
        raise CliError("--calibrate-L and --calibrate-angle go together", EXIT_INVALID)
    if target is not None:
        try:
            cfg = calibrate(cfg, target, angle * URAD)
        except CalibrationError as exc:
            raise CliError(f"calibration infeasible: {exc}", EXIT_CALIBRATION)
        except ValueError as exc:
            raise CliError(f"calibration error: {exc}", EXIT_INVALID)
    if not cfg.calibrated:
        raise CliError("config lacks coupling_C; pass --calibrate-L/--calibrate-angle",
                       EXIT_INVALID)
    return cfg


def _cavity_params(cfg, dphi_urad, b_field):
    try:
        return collective_params_from_cavity(cfg, dphi_urad * URAD, b_field)
    except ValueError as exc:
        raise CliError(f"invalid cavity parameters: {exc}", EXIT_INVALID)


def cmd_cavity(args) -> int:
    cfg = _cavity_config(args)
    params = _cavity_params(cfg, args.delta_phi_urad, args.b_field)
    span, points = _grid_args(args, params)
    dphi = args.delta_phi_urad * URAD
    grid = reflectivity_spectrum(cfg, dphi, args.b_field, span, points)
    eig = collective_eigenvalues(params)
    comments = [
        f"param,gamma,{fmt(params.gamma)}",
        f"param,Gamma,{fmt(params.big_gamma)}",
        f"param,L,{fmt(params.lamb_shift)}",
        f"param,phi,{fmt(params.phi)}",
        f"param,coupling_C,{fmt(cfg.coupling_C)}",
        f"baseline,{fmt(baseline_reflectivity(cfg, dphi))}",
        f"dip_separation,{fmt(dip_separation(grid))}",
        f"peak_separation,{fmt(measure_splitting(grid).splitting)}",
        f"pole_splitting,{fmt(0.0 if eig.degenerate else eig.pole_splitting)}",
    ]
    path = _write(args.out, grid, "reflectivity", comments)
    _manifest(path, "cavity", {
        "config": str(args.config) if args.config else None,
        "coupling_C": cfg.coupling_C, "kappa": cfg.kappa, "phi0": cfg.phi0,
        "b_to_phi": cfg.b_to_phi, "channel": cfg.channel,
        "delta_phi_urad": args.delta_phi_urad, "b_field": args.b_field,
        "span": span, "points": points})
    if args.emit_plot_script:
        _plot_script(path, "reflectivity")
    return EXIT_OK


# -- scan --------------------------------------------------------------------

SCAN_COLUMNS = "delta_phi_urad,b_tesla,phi,L,Gamma,splitting,deviation"


def _axis(lo, hi, steps):
    if hi < lo:
        raise CliError(f"empty range [{lo}, {hi}]", EXIT_INVALID)
    if lo == hi:
        return np.array([lo], dtype=float)
    return np.linspace(lo, hi, steps)


def scan_rows(cfg, dphi_values, b_values, points=DEFAULT_POINTS):
    """One row per (angle, field) cell: params, measured splitting, deviation."""
    rows = []
    for dphi in dphi_values:
        for b in b_values:
            p = _cavity_params(cfg, dphi, b)
            split = measure_splitting(radiation_spectrum(p, n_points=points)).splitting
            rows.append((dphi, b, p.phi, p.lamb_shift, p.big_gamma, split, split - p.phi))
    return rows


def best_cell(rows):
    """Largest deviation among cells whose splitting is resolvable, ``>= (Gamma+gamma)/2``."""
    ok = [r for r in rows if r[5] > 0 and r[5] >= 0.5 * (r[4] + 1.0)]
    return max(ok, key=lambda r: r[6]) if ok else None


def cmd_scan(args) -> int:
    cfg = _cavity_config(args)
    if args.steps < 1:
        raise CliError("--steps must be >= 1", EXIT_INVALID)
    dphis = _axis(*args.delta_phi_range, args.steps)
    bs = _axis(*args.b_range, args.steps)
    rows = scan_rows(cfg, dphis, bs, args.points)
    lines = ["# supersplit-scan v1", SCAN_COLUMNS]
    lines += [",".join(fmt(v) for v in r) for r in rows]
    best = best_cell(rows)
    if best is None:
        lines.append("# best,none")
    else:
        lines.append("# best," + ",".join(fmt(v) for v in best))
    try:
        Path(args.out).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO)
    _manifest(args.out, "scan", {
        "config": str(args.config) if args.config else None,
        "coupling_C": cfg.coupling_C, "delta_phi_range": list(args.delta_phi_range),
        "b_range": list(args.b_range), "steps": args.steps, "points": args.points})
    if best is None:
        print("no resolvable cell")
    else:
        print("best cell: delta_phi_urad={} b_tesla={} splitting={} deviation={}".format(
            fmt(best[0]), fmt(best[1]), fmt(best[5]), fmt(best[6])))
    return EXIT_OK


# -- oracle-check --------------------------------------------------------------

def cmd_oracle_check(args) -> int:
    if args.n_max > 2048 or args.n_max < 2:
        raise CliError("--n-max must be in [2, 2048]", EXIT_INVALID)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = run_oracle_suite(args.n_max, args.seed)
    sys.stdout.write(report.text())
    return EXIT_OK if report.passed else EXIT_CHECK


# -- parser --------------------------------------------------------------------

def _eigen_flags(p, required=True):
    p.add_argument("--big-gamma", type=float, required=required, help="Gamma / gamma")
    p.add_argument("--lamb-shift", type=float, default=0.0, help="L / gamma")
    p.add_argument("--phi", type=float, default=0.0, help="phi / gamma")


def _grid_flags(p):
    p.add_argument("--span", type=float, default=None, help="half-width of the detuning grid")
    p.add_argument("--points", type=int, default=DEFAULT_POINTS)


def _cavity_flags(p):
    p.add_argument("--config", help="cavity config file ([cavity] section)")
    p.add_argument("--calibrate-L", type=float, default=None, help="target L / gamma")
    p.add_argument("--calibrate-angle", type=float, default=None, help="urad")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supersplit", description=__doc__.split("\n")[1])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", help="eigenvalues, amplitudes, poles and regime")
    _eigen_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("spectrum", help="radiation spectrum as CSV")
    _eigen_flags(p)
    _grid_flags(p)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--emit-plot-script", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("cavity", help="cavity reflectivity as CSV")
    _cavity_flags(p)
    p.add_argument("--delta-phi-urad", type=float, required=True)
    p.add_argument("--b-field", type=float, required=True)
    _grid_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--emit-plot-script", action="store_true")
    p.set_defaults(func=cmd_cavity)

    p = sub.add_parser("scan", help="(angle, field) deviation map as CSV")
    _cavity_flags(p)
    p.add_argument("--delta-phi-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--b-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle-check", help="dense N-atom self-check")
    p.add_argument("--n-max", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"supersplit: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
