"""
Command-line front end.

    noise-localize localize --model amp --d 0.5 --theta 1.5707963
    noise-localize figure 7 --output fig7.csv
    noise-localize optimize --objective fave --d 0.4
    noise-localize threshold --objective n+ --theta 1.5707963
    noise-localize compare --d 0.5 --d3 0 --theta 1.5707963

Exit status is 0 on success, 2 on a usage error and 3 when a parameter is
outside its domain.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from . import distribute as dist
from . import localize as loc
from . import measures as ms
from . import optimize as opt
from .channels import DecoherenceParams
from .states import MeasurementBasis

EXIT_USAGE = 2
EXIT_DOMAIN = 3
THREADS_ENV = "NOISE_LOCALIZE_THREADS"
SQRT5_D = (math.sqrt(5) - 1) / 2
FIGURES = (2, 3, 4, 5, 7, 8)


class DomainError(ValueError):
    pass


def format_float(x: float, precision: int) -> str:
    if x is None or math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = f"{x:.{precision}f}"
    if s.lstrip("-").strip("0.") == "":
        s = s.lstrip("-")
    return s


def _json_value(x, precision: int):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return None
        return float(format_float(x, precision))
    return x


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    return min(4, os.cpu_count() or 1)


def parallel_rows(fn, items) -> list:
    """Map ``fn`` over ``items`` and concatenate the row lists in input order."""
    items = list(items)
    workers = thread_count()
    if workers == 1:
        chunks = [fn(x) for x in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(fn, items))
    return [row for chunk in chunks for row in chunk]


# -- output ------------------------------------------------------------------


def render(columns, rows, config: dict, args, grid_shape=None, extra_meta=None) -> str:
    p = args.precision
    if args.format == "json":
        meta = {"tool": "noise-localize", "version": __version__, "grid_shape": list(grid_shape or [len(rows)])}
        if extra_meta:
            meta.update(extra_meta)
        doc = {
            "config": {k: _json_value(v, p) for k, v in config.items()},
            "rows": [{c: _json_value(v, p) for c, v in zip(columns, row)} for row in rows],
            "meta": {k: _json_value(v, p) for k, v in meta.items()},
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if args.format == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_cell(v, p) for v in row))
        return "\n".join(lines) + "\n"
    # text
    cells = [[_cell(v, p) for v in row] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    if extra_meta and "warning" in extra_meta:
        lines.append(f"warning: {extra_meta['warning']}")
    return "\n".join(lines) + "\n"


def _cell(v, precision: int) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    return format_float(float(v), precision)


def emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- validation --------------------------------------------------------------


def _angle(args, name: str):
    v = getattr(args, name, None)
    if v is None:
        return None
    return math.radians(v) if args.degrees else v


def _in_range(name: str, v: float, lo: float, hi: float) -> float:
    if v is None or not (lo <= v <= hi) or math.isnan(v):
        raise DomainError(f"{name} = {v!r} is outside [{lo}, {hi}]")
    return v


def _params(args) -> DecoherenceParams:
    base = args.d
    vals = []
    for name in ("d1", "d2", "d3"):
        v = getattr(args, name, None)
        v = base if v is None else v
        if v is None:
            raise DomainError(f"{name} is not set (give --d or --{name})")
        vals.append(_in_range(name, v, 0.0, 1.0))
    return DecoherenceParams(*vals)


def _config(args, **extra) -> dict:
    skip = {"func", "output", "format"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    cfg.update(extra)
    return cfg


# -- subcommands ---------------------------------------------------------------

LOCALIZE_COLUMNS = (
    "outcome", "probability", "probability_closed",
    "negativity", "negativity_closed", "negativity_diff",
    "fef", "fef_closed", "fef_diff",
    "min_pt_eigenvalue", "useful",
)


def cmd_localize(args) -> str:
    p = _params(args)
    theta = _in_range("theta", _angle(args, "theta"), 0.0, math.pi)
    phi = _in_range("phi", _angle(args, "phi") or 0.0, 0.0, 2 * math.pi)
    b = MeasurementBasis(theta, phi)
    outcomes = loc.measure_qubit3(loc.noisy_ghz(p, args.model), b)
    rows = []
    for out in outcomes:
        sign = 1 if out.label == "+" else -1
        if args.model == "amp":
            p_closed = loc.amp_probability(p.d3, theta, out.label)
            n_closed = ms.n_amp(p, b, out.label)
            f_closed = ms.fef_closed_amp(p, b, out.label)
        elif p.is_symmetric:
            p_closed = 0.5
            n_closed = loc.depolarized_negativity(p.d1, theta)
            f_closed = ms.fef_closed_depol(p.d1, theta)
        else:
            p_closed = 0.5
            n_closed = f_closed = math.nan
        if out.absent:
            n = f = lam = math.nan
            useful = False
        else:
            rep = ms.entanglement_report(out.collapsed)
            n, f, lam, useful = rep.negativity, rep.fef, rep.min_pt_eigenvalue, rep.useful_for_teleportation
        rows.append((sign, out.probability, p_closed, n, n_closed, n - n_closed, f, f_closed, f - f_closed, lam, useful))
    return render(LOCALIZE_COLUMNS, rows, _config(args), args)


def _grid(lo: float, hi: float, n: int) -> list[float]:
    return [float(x) for x in np.linspace(lo, hi, n)]


def _figure_rows(fig: int, n: int, theta_prime: float):
    ds_full = _grid(0.0, 1.0, n)
    if fig == 2:
        ts = _grid(0.0, math.pi, n)
        cols = ("d", "theta", "p_plus", "n_plus", "n_minus")

        def row(d):
            return [(d, t, loc.amp_probability(d, t, "+"),
                     ms.n_amp(d, MeasurementBasis(t), "+"), ms.n_amp(d, MeasurementBasis(t), "-")) for t in ts]

        return cols, parallel_rows(row, ds_full), (n, n)
    if fig in (3, 5):
        upper = _grid(math.pi / 2, 2 * math.pi / 3, n)
        lower = _grid(math.pi / 3, math.pi / 2, n)
        if fig == 3:
            ds = ds_full
            cols = ("d", "theta_upper", "delta_n_plus", "theta_lower", "delta_n_minus")

            def value(d, t, label):
                return ms.n_amp(d, MeasurementBasis(t), label) - ms.n_amp(d, MeasurementBasis(math.pi / 2), label)
        else:
            ds = _grid(SQRT5_D, 0.65, n)
            cols = ("d", "theta_upper", "f_plus", "theta_lower", "f_minus")

            def value(d, t, label):
                return ms.fef_closed_amp(d, MeasurementBasis(t), label)

        def row(d):
            return [(d, tu, value(d, tu, "+"), tl, value(d, tl, "-")) for tu, tl in zip(upper, lower)]

        return cols, parallel_rows(row, ds), (n, n)
    if fig == 4:
        ds = _grid(0.58, 0.64, n)
        ts = _grid(0.0, math.pi, n)
        cols = ("d", "theta", "n_plus", "n_minus", "n_ave")

        def row(d):
            out = []
            for t in ts:
                b = MeasurementBasis(t)
                out.append((d, t, ms.n_amp(d, b, "+"), ms.n_amp(d, b, "-"), ms.n_average(d, b)))
            return out

        return cols, parallel_rows(row, ds), (n, n)
    if fig == 7:
        ts = _grid(0.0, math.pi / 2, n)

        def row(d):
            return [tuple(getattr(pt, f) for f in dist.FIELDS) for pt in dist.compare_scan([d], ts, [0.0])]

        return dist.FIELDS, parallel_rows(row, ds_full), (n, n)
    if fig == 8:
        rs = _grid(0.0, 0.1, n)
        cols = ("d", "r") + dist.FIELDS[1:]

        def row(d):
            pts = dist.compare_scan([d], [theta_prime], rs)
            return [(pt.d, r) + tuple(getattr(pt, f) for f in dist.FIELDS[1:]) for pt, r in zip(pts, rs)]

        return cols, parallel_rows(row, ds_full), (n, n)
    raise DomainError(f"unknown figure {fig}; choose from {FIGURES}")


def cmd_figure(args) -> str:
    if args.grid_points < 2:
        raise DomainError("grid-points must be at least 2")
    theta_prime = _in_range("theta-prime", _angle(args, "theta_prime"), 0.0, math.pi)
    cols, rows, shape = _figure_rows(args.figure, args.grid_points, theta_prime)
    return render(cols, rows, _config(args), args, grid_shape=shape)


def cmd_optimize(args) -> str:
    if args.objective == "depol-n":
        p = _in_range("d", args.d, 0.0, 1.0)
    else:
        p = _params(args)
    res = opt.optimize_theta(args.objective, p, args.grid_points)
    meta = {"warning": "objective is identically zero on the grid"} if res.flat else {}
    cols = ("best_theta", "best_value", "grid_max", "flat")
    rows = [(res.best_theta, res.best_value, res.grid_max, res.flat)]
    if args.objective == "nave" and isinstance(p, DecoherenceParams) and p.is_symmetric:
        split = opt.nave_argmax_split(p.d1, args.grid_points)
        if len(split) == 2:
            cols += ("theta_low", "theta_high")
            rows = [rows[0] + split]
    return render(cols, rows, _config(args), args, extra_meta=meta)


def cmd_threshold(args) -> str:
    theta = _in_range("theta", _angle(args, "theta"), 0.0, math.pi)
    res = opt.sudden_death_threshold(theta, args.objective)
    meta = {} if res.found else {"warning": "no sign change of the objective in d on [0, 1]"}
    rows = [(res.theta, res.d_star if res.found else math.nan, res.bracket_width, res.found)]
    return render(("theta", "d_star", "bracket_width", "found"), rows, _config(args), args, extra_meta=meta)


def cmd_compare(args) -> str:
    d = _in_range("d", args.d, 0.0, 1.0)
    theta = _in_range("theta", _angle(args, "theta"), 0.0, math.pi)
    if args.r is not None:
        if d <= 0:
            raise DomainError("r = d3/d needs d > 0")
        d3 = args.r * d
    else:
        d3 = args.d3 if args.d3 is not None else 0.0
    _in_range("d3", d3, 0.0, 1.0)
    pt = dist.compare_point(d, theta, d3)
    return render(dist.FIELDS, [tuple(getattr(pt, f) for f in dist.FIELDS)], _config(args), args)


# -- parser ------------------------------------------------------------------


def _common(sp, default_format: str) -> None:
    sp.add_argument("--format", choices=("text", "csv", "json"), default=default_format)
    sp.add_argument("--output", "-o", help="write to this file instead of stdout")
    sp.add_argument("--precision", type=int, default=12, help="decimal digits (default 12)")
    sp.add_argument("--degrees", action="store_true", help="angles are given in degrees")


def _noise(sp) -> None:
    sp.add_argument("--d", type=float, help="equal decoherence strength for all qubits")
    for i in (1, 2, 3):
        sp.add_argument(f"--d{i}", type=float, help=f"decoherence strength of qubit {i}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noise-localize", description="GHZ entanglement localization under local noise")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("localize", help="measure qubit 3 of a noisy GHZ state and report both outcomes")
    sp.add_argument("--model", choices=("amp", "depol"), default="amp")
    _noise(sp)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--phi", type=float, default=0.0)
    _common(sp, "text")
    sp.set_defaults(func=cmd_localize)

    sp = sub.add_parser("figure", help="write the data behind one of the figures")
    sp.add_argument("figure", type=int, choices=FIGURES)
    sp.add_argument("--grid-points", type=int, default=201)
    sp.add_argument("--theta-prime", type=float, default=1.5, help="measurement angle for figure 8 (default 1.5)")
    _common(sp, "csv")
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("optimize", help="best measurement angle for an objective")
    sp.add_argument("--objective", choices=sorted(opt.OBJECTIVES), required=True)
    _noise(sp)
    sp.add_argument("--grid-points", type=int, default=2001)
    _common(sp, "text")
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("threshold", help="sudden-death noise strength at a fixed angle")
    sp.add_argument("--objective", choices=sorted(opt.OBJECTIVES), default="n+")
    sp.add_argument("--theta", type=float, required=True)
    _common(sp, "text")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("compare", help="direct versus ancilla-assisted distribution at one point")
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--theta", type=float, required=True)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--d3", type=float)
    group.add_argument("--r", type=float, help="d3 / d")
    _common(sp, "text")
    sp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 0 or args.precision > 17:
        parser.error("--precision must lie in 0..17")
    try:
        text = args.func(args)
    except ValueError as exc:
        print(f"noise-localize: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    emit(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
