"""Command-line front end.

Verbs::

    steerlab compute  --c1 35 --c2 15 --nth1 1 --nth2 2 --r 0.8
    steerlab sweep    --config sweep.cfg
    steerlab figure   fig2c --out fig2c.csv
    steerlab validate

Exit status is 0 on success, 1 on usage/configuration errors and 2 on
numeric or domain errors.
"""

import argparse
import json
import sys
import warnings
from dataclasses import replace

from . import __version__
from .errors import ConfigError, DomainError, InvalidArgumentError, NumericDegenerateError, PreconditionError, StructureError
from .measures import steering_report
from .model import LAB_DAMPING_RATIO, SystemParams, check_validity, derive_state, lab_cavity
from .steady import (
    CROSS_VALIDATION_TOL,
    analytic_mechanical_cm,
    numeric_mechanical_cm,
    relative_deviation,
)
from .sweep import (
    DEFAULT_NTH1_GRID,
    DEFAULT_R_GRID,
    PRESET_NAMES,
    figure_preset,
    format_csv,
    format_json,
    format_svg,
    parse_config,
    run_sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_PRESET_HELP = (
    "presets: fig2a-fig2d sweep r over [{:g}, {:g}] ({} points), fig3a-fig3d sweep n_th1 over "
    "[{:g}, {:g}] ({} points); these grid ranges are defaults chosen by this tool"
).format(*DEFAULT_R_GRID, *DEFAULT_NTH1_GRID)


def build_parser():
    parser = _Parser(prog="steerlab", description="Steady-state Gaussian steering of two optomechanical mirrors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate one parameter point")
    p.add_argument("--c1", type=float, help="cooperativity of cavity 1")
    p.add_argument("--c2", type=float, help="cooperativity of cavity 2")
    p.add_argument("--power1", type=float, help="laser power of cavity 1 in W (lab parameters)")
    p.add_argument("--power2", type=float, help="laser power of cavity 2 in W (lab parameters)")
    p.add_argument("--nth1", type=float, default=0.0)
    p.add_argument("--nth2", type=float, default=0.0)
    p.add_argument("--r", type=float, default=0.0, help="squeezing parameter")
    p.add_argument("--tau", type=float, default=LAB_DAMPING_RATIO, help="damping ratio gamma_m / kappa_c")
    p.add_argument("--engine", choices=("analytic", "numeric", "both"), default="analytic")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("sweep", help="run a sweep described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="output path (overrides config; '-' for stdout)")
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.add_argument("--engine", choices=("analytic", "numeric", "both"))
    p.add_argument("--workers", type=int)

    p = sub.add_parser("figure", help="regenerate the data behind a figure panel", epilog=_PRESET_HELP)
    p.add_argument("name", help="one of " + ", ".join(PRESET_NAMES))
    p.add_argument("--out", default="-", help="output path ('-' for stdout, the default)")
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.add_argument("--engine", choices=("analytic", "numeric", "both"), default="analytic")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("validate", help="cross-check numeric and closed-form steady states", epilog=_PRESET_HELP)
    p.add_argument("--preset", action="append", choices=PRESET_NAMES, help="restrict to these presets")
    p.add_argument("--workers", type=int)
    return parser


def _cmd_compute(args, out):
    if args.c1 is not None or args.c2 is not None:
        if args.c1 is None or args.c2 is None:
            raise UsageError("give both --c1 and --c2")
        if args.power1 is not None or args.power2 is not None:
            raise UsageError("--c1/--c2 and --power1/--power2 are mutually exclusive")
        c1, c2, tau = args.c1, args.c2, args.tau
    elif args.power1 is not None and args.power2 is not None:
        params = SystemParams(
            lab_cavity(laser_power=args.power1, n_th=args.nth1),
            lab_cavity(laser_power=args.power2, n_th=args.nth2),
            squeezing=args.r,
        )
        state = derive_state(params)
        for msg in check_validity(params, state, emit=False):
            print(f"warning: {msg}", file=sys.stderr)
        c1, c2 = (s.cooperativity for s in state.cavities)
        tau = state.damping_ratio
    else:
        raise UsageError("give either --c1/--c2 or --power1/--power2")

    point = (c1, c2, args.nth1, args.nth2, args.r, tau)
    deviation = None
    if args.engine == "numeric":
        cm = numeric_mechanical_cm(*point)
    else:
        cm = analytic_mechanical_cm(*point)
        if args.engine == "both":
            deviation = relative_deviation(numeric_mechanical_cm(*point), cm)
    rep = steering_report(cm.standard_form)
    doc = {"c1": c1, "c2": c2, "nth1": args.nth1, "nth2": args.nth2, "r": args.r, "tau": tau,
           "v1": cm.v1, "v2": cm.v2, "v12": cm.v12, **rep.as_dict(), "engine": args.engine}
    if deviation is not None:
        doc["deviation"] = deviation
    if args.json:
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        width = max(len(k) for k in doc)
        for k, v in doc.items():
            text = format(v, ".12g") if isinstance(v, float) else str(v)
            out.write(f"{k:<{width}}  {text}\n")
    return EXIT_OK


def _write(text, path, out):
    if path in (None, "-"):
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _render(rows, spec):
    if spec.format == "json":
        return format_json(rows, spec)
    if spec.format == "svg":
        label = "squeezing r" if spec.variable == "r" else "n_th1"
        return format_svg(rows, axis_label=label, title=spec.name or "")
    return format_csv(rows)


def _report_deviation(rows):
    devs = [r.deviation for r in rows if r.deviation is not None]
    if devs:
        print(f"max numeric/analytic deviation: {max(devs):.3e}", file=sys.stderr)


def _cmd_sweep(args, out):
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    spec = parse_config(text)
    overrides = {k: getattr(args, k) for k in ("format", "engine") if getattr(args, k)}
    if overrides:
        spec = replace(spec, **overrides)
    rows = run_sweep(spec, workers=args.workers)
    _report_deviation(rows)
    _write(_render(rows, spec), args.out or spec.out, out)
    return EXIT_OK


def _cmd_figure(args, out):
    fmt = args.format
    if fmt is None and args.out not in (None, "-"):
        suffix = args.out.rsplit(".", 1)[-1].lower()
        fmt = suffix if suffix in ("csv", "json", "svg") else "csv"
    spec = figure_preset(args.name, engine=args.engine, fmt=fmt or "csv", out=args.out)
    rows = run_sweep(spec, workers=args.workers)
    _report_deviation(rows)
    _write(_render(rows, spec), args.out, out)
    return EXIT_OK


def _cmd_validate(args, out):
    names = args.preset or PRESET_NAMES
    ok = True
    for name in names:
        spec = figure_preset(name, engine="both")
        rows = run_sweep(spec, workers=args.workers)
        worst = max(r.deviation for r in rows)
        passed = worst <= CROSS_VALIDATION_TOL
        ok &= passed
        out.write(f"{name}: {len(rows)} points, max deviation {worst:.3e} {'PASS' if passed else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_NUMERIC


_COMMANDS = {"compute": _cmd_compute, "sweep": _cmd_sweep, "figure": _cmd_figure, "validate": _cmd_validate}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return _COMMANDS[args.command](args, out)
    except (UsageError, ConfigError, InvalidArgumentError) as exc:
        print(f"steerlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, NumericDegenerateError, PreconditionError, StructureError) as exc:
        print(f"steerlab: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"steerlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
