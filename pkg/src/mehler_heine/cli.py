"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import asymptotics as asy
from . import zeros as zr
from .checks import run_checks
from .errors import (
    DomainError,
    MehlerHeineError,
    ParameterError,
    PoleError,
    WindowError,
)
from .families import Charlier, Family, Meixner, PolyKind, eval_poly
from .specfun import SeriesControl

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2

FIGURE_PRESETS = {
    "fig1": dict(family="charlier", a=1.23),
    "fig2": dict(family="meixner", beta=1.23, c=0.36),
}
FIGURE_N = 28
FIGURE_RANGE = (-1.0, 10.0, 551)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numerical failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    family: Family
    kind: PolyKind
    n: Optional[int] = None
    n_list: Optional[tuple] = None
    x: Optional[complex] = None
    grid: Optional[tuple] = None  # (x_min, x_max, steps)
    fmt: str = "json"
    control: SeriesControl = SeriesControl()
    scan_step: float = 0.05

    def __post_init__(self):
        if self.x is not None and self.grid is not None:
            raise UsageError("--x and a grid are mutually exclusive")
        if self.grid is not None:
            lo, hi, steps = self.grid
            if steps < 2:
                raise UsageError("--steps must be at least 2")
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise UsageError("need finite --x-min < --x-max")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be nonnegative")

    def grid_points(self) -> np.ndarray:
        lo, hi, steps = self.grid
        return np.linspace(lo, hi, steps)


def parse_complex(text: str) -> complex:
    """``"re"`` or ``"re,im"``."""
    parts = text.split(",")
    if len(parts) > 2:
        raise UsageError(f"cannot parse {text!r} as re,im")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as re,im") from None
    z = complex(vals[0], vals[1] if len(vals) == 2 else 0.0)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"{text!r} is not finite")
    return z


def parse_int_list(text: str) -> tuple:
    try:
        vals = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a list of integers") from None
    return vals


def parse_window(text: str) -> tuple:
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--window needs lo,hi, got {text!r}") from None
    return lo, hi


def build_family(args) -> Family:
    if args.family == "charlier":
        return Charlier(1.23 if args.a is None else args.a)
    return Meixner(1.23 if args.beta is None else args.beta, 0.36 if args.c is None else args.c)


def build_config(args, default_fmt: str = "json") -> RunConfig:
    ctrl = SeriesControl(
        rel_tol=1e-15 if args.rel_tol is None else args.rel_tol,
        max_terms=10000 if args.max_terms is None else args.max_terms,
    )
    grid = None
    if args.x_min is not None or args.x_max is not None or args.steps is not None:
        lo, hi, steps = FIGURE_RANGE
        grid = (
            lo if args.x_min is None else args.x_min,
            hi if args.x_max is None else args.x_max,
            steps if args.steps is None else args.steps,
        )
    return RunConfig(
        family=build_family(args),
        kind=PolyKind(args.kind),
        n=args.n,
        n_list=parse_int_list(args.n_list) if args.n_list else None,
        x=parse_complex(args.x) if args.x is not None else None,
        grid=grid,
        fmt=args.format or default_fmt,
        control=ctrl,
        scan_step=args.scan_step,
    )


# output


def fmt_float(v: float) -> str:
    return format(float(v) + 0.0, ".17g")  # + 0.0 drops the sign of -0.0


def _finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"non-finite result {z}")
    return z


def _cplx(z: complex) -> dict:
    z = _finite(z)
    return {"re": z.real + 0.0, "im": z.imag + 0.0}


def write_csv(out, header: Sequence[str], rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, float) else v for v in row])


def write_json(out, obj) -> None:
    out.write(json.dumps(obj, indent=2, allow_nan=False))
    out.write("\n")


def describe_family(family: Family) -> dict:
    if isinstance(family, Charlier):
        return {"name": "charlier", "a": family.a}
    return {"name": "meixner", "beta": family.beta, "c": family.c}


# commands


def cmd_eval(cfg: RunConfig, scaled: bool, out) -> int:
    if cfg.n is None or cfg.x is None:
        raise UsageError("eval needs --n and --x")
    record = {
        "family": describe_family(cfg.family),
        "kind": cfg.kind.value,
        "n": cfg.n,
        "x": _cplx(cfg.x),
    }
    if scaled:
        sv = asy.scaled_poly(cfg.family, cfg.kind, cfg.n, cfg.x)
        record["scaled_value"] = _cplx(sv.value)
        record["normalizer"] = sv.normalizer
        record["method"] = sv.method
    else:
        record["value"] = _cplx(eval_poly(cfg.family, cfg.kind, cfg.n, cfg.x))
    if cfg.fmt == "json":
        write_json(out, record)
        return EXIT_OK
    key = "scaled_value" if scaled else "value"
    header = ["x_re", "x_im", f"{key}_re", f"{key}_im"]
    write_csv(out, header, [[cfg.x.real, cfg.x.imag, record[key]["re"], record[key]["im"]]])
    return EXIT_OK


def _scaled_rows(family: Family, kind: PolyKind, n: int, xs, ctrl: SeriesControl) -> list:
    rows = []
    for x in xs:
        x = float(x)
        t = _finite(asy.scaled_poly(family, kind, n, x).value).real
        lim = _finite(asy.mh_limit(family, kind, x, ctrl)).real
        rows.append([x, t, lim, abs(t - lim)])
    return rows


def cmd_grid(cfg: RunConfig, scaled: bool, out) -> int:
    if cfg.n is None:
        raise UsageError("grid needs --n")
    if cfg.grid is None:
        raise UsageError("grid needs --x-min/--x-max/--steps")
    xs = cfg.grid_points()
    if scaled:
        header = ["x", "scaled_poly", "limit", "abs_err"]
        rows = _scaled_rows(cfg.family, cfg.kind, cfg.n, xs, cfg.control)
    else:
        header = ["x", "value"]
        rows = [[float(x), _finite(eval_poly(cfg.family, cfg.kind, cfg.n, float(x))).real] for x in xs]
    if cfg.fmt == "json":
        write_json(out, {"columns": header, "rows": rows})
    else:
        write_csv(out, header, rows)
    return EXIT_OK


def figure_config(preset: str, args) -> RunConfig:
    p = FIGURE_PRESETS[preset]
    family = Charlier(p["a"] if args.a is None else args.a) if p["family"] == "charlier" else Meixner(
        p["beta"] if args.beta is None else args.beta, p["c"] if args.c is None else args.c
    )
    lo, hi, steps = FIGURE_RANGE
    return RunConfig(
        family=family,
        kind=PolyKind.ASSOCIATED,
        n=FIGURE_N if args.n is None else args.n,
        grid=(
            lo if args.x_min is None else args.x_min,
            hi if args.x_max is None else args.x_max,
            steps if args.steps is None else args.steps,
        ),
        fmt=args.format or "csv",
        control=SeriesControl(
            rel_tol=1e-15 if args.rel_tol is None else args.rel_tol,
            max_terms=10000 if args.max_terms is None else args.max_terms,
        ),
    )


def cmd_figure(cfg: RunConfig, out) -> int:
    header = ["x", "scaled_poly", "limit", "abs_err"]
    rows = _scaled_rows(cfg.family, cfg.kind, cfg.n, cfg.grid_points(), cfg.control)
    if cfg.fmt == "json":
        write_json(out, {"columns": header, "rows": rows})
    else:
        write_csv(out, header, rows)
    return EXIT_OK


def cmd_zeros(cfg: RunConfig, window: tuple, out) -> int:
    if cfg.n is None:
        raise UsageError("zeros needs --n")
    lo, hi = window
    bracket = zr.BracketConfig(lo, hi, scan_step=cfg.scan_step)
    pz = zr.poly_zeros(cfg.family, cfg.kind, cfg.n)
    lz = zr.limit_zeros(zr.MHTarget(cfg.family, cfg.kind), bracket)
    in_window = [float(v) for v in pz.zeros if lo <= v <= hi]
    m = min(len(in_window), len(lz.zeros))
    report = {
        "family": describe_family(cfg.family),
        "kind": cfg.kind.value,
        "n": cfg.n,
        "window": [lo, hi],
        "scan_step": cfg.scan_step,
        "poly_zeros": [float(v) for v in pz.zeros],
        "limit_zeros": [float(v) for v in lz.zeros],
        "differences": [in_window[k] - float(lz.zeros[k]) for k in range(m)],
    }
    if cfg.fmt == "json":
        write_json(out, report)
    else:
        write_csv(
            out,
            ["k", "poly_zero", "limit_zero", "difference"],
            [[k + 1, in_window[k], float(lz.zeros[k]), report["differences"][k]] for k in range(m)],
        )
    return EXIT_OK


def cmd_markov(cfg: RunConfig, z: complex, out) -> int:
    ns = cfg.n_list or ((cfg.n,) if cfg.n is not None else None)
    if not ns:
        raise UsageError("markov needs --n or --n-list")
    if any(n < 1 for n in ns):
        raise UsageError("markov indices must be positive")
    try:
        ref = _finite(asy.stieltjes(cfg.family, z, cfg.control))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for n in ns:
        r = _finite(asy.markov_ratio(cfg.family, z, n))
        rows.append({"n": n, "markov_ratio": _cplx(r), "abs_err": abs(r - ref)})
    if cfg.fmt == "json":
        write_json(out, {"family": describe_family(cfg.family), "z": _cplx(z), "stieltjes": _cplx(ref), "rows": rows})
    else:
        write_csv(
            out,
            ["n", "ratio_re", "ratio_im", "abs_err"],
            [[r["n"], r["markov_ratio"]["re"], r["markov_ratio"]["im"], r["abs_err"]] for r in rows],
        )
    return EXIT_OK


def cmd_check(inject_fault: bool, out) -> int:
    report = run_checks(inject_fault=inject_fault)
    for r in report.results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: measured={r.measured:.3e} tol={r.tolerance:.1e}", file=sys.stderr)
    write_json(out, report.to_dict())
    return EXIT_OK if report.passed else EXIT_NUMERIC


# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["charlier", "meixner"], default="charlier")
    p.add_argument("--a", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--kind", choices=[k.value for k in PolyKind], default="standard")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list")
    p.add_argument("--x", help='real "x" or complex "re,im"')
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--max-terms", type=int)
    p.add_argument("--rel-tol", type=float)
    p.add_argument(
        "--scan-step",
        type=float,
        default=0.05,
        help="zero-scan step; close zero pairs of the limit can hide inside one step",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mehler-heine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("eval", "grid"):
        p = sub.add_parser(name)
        _add_common(p)
        p.add_argument("--scaled", action="store_true")

    p = sub.add_parser("figure")
    p.add_argument("preset", choices=sorted(FIGURE_PRESETS))
    _add_common(p)

    p = sub.add_parser("zeros")
    _add_common(p)
    p.add_argument("--window", default="-0.5,10")

    p = sub.add_parser("markov")
    _add_common(p)
    p.add_argument("--z", required=True, help='"re" or "re,im", off [0, inf)')

    p = sub.add_parser("check")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def _dispatch(args, out) -> int:
    if args.command == "check":
        return cmd_check(args.inject_fault, out)
    if args.command == "figure":
        return cmd_figure(figure_config(args.preset, args), out)
    default_fmt = "csv" if args.command == "grid" else "json"
    cfg = build_config(args, default_fmt)
    if args.command == "eval":
        return cmd_eval(cfg, args.scaled, out)
    if args.command == "grid":
        return cmd_grid(cfg, args.scaled, out)
    if args.command == "zeros":
        return cmd_zeros(cfg, parse_window(args.window), out)
    return cmd_markov(cfg, parse_complex(args.z), out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    # buffer so a failure part-way never leaves partial output behind
    buf = io.StringIO()
    try:
        code = _dispatch(args, buf)
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ParameterError, DomainError, WindowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (MehlerHeineError, ArithmeticError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
