"""Batch command-line front end.

Subcommands: bounds (analytic endpoints only), witness (construction
report), solve (full three-way bracket), sweep (parameter grid to CSV
or JSON), verify (invariant suites), plot (SVG or plot-ready CSV from a
sweep file).

Exit codes are a stable contract: 0 success, 1 parse or I/O error, 2
invalid math arguments (a named hypothesis is violated), 3 solver
remediation needed (constraint grid too coarse), 4 verification
failure.

Every command is deterministic given its full flag set.  Sweep rows are
computed by a share-nothing worker pool and assembled in sorted (n,
alpha_re, alpha_im) order, so --jobs never changes the output bytes.
Floats in CSV are printed with 17 significant digits ('.' decimal
separator); extended-precision fields in the witness report are printed
as full-precision decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re as _re
import sys
import time
from multiprocessing import Pool

from mpmath import mp

from .analytic_bounds import theorem2_bounds
from .construct import required_witness_bits, witness_certificate
from .core import DEFAULT_BITS, AlphaParam, make_alpha, space_dimension
from .solver import LPConfig, SolverGridError, en_bracket
from .suites import run_suites

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DOMAIN = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4

SWEEP_COLUMNS = (
    "n",
    "alpha_re",
    "alpha_im",
    "analytic_lower",
    "analytic_upper",
    "witness_lower",
    "oracle_lower",
    "lp_estimate",
    "precision_bits",
    "seed",
)

_ALPHA_PATTERN = _re.compile(
    r"^(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)i$"
)


class _Parser(argparse.ArgumentParser):
    """argparse with parse errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _alpha_flag(text: str):
    """Parse `RE+IMi` (explicit sign before the imaginary part)."""
    m = _ALPHA_PATTERN.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(
            f"alpha must look like RE+IMi (e.g. 0.3+0.4i, 0.0-0.5i), got {text!r}"
        )
    return float(m.group("re")), float(m.group("im"))


def _checked_alpha(re: float, im: float) -> AlphaParam:
    """Build AlphaParam, naming the violated hypothesis on rejection."""
    a = make_alpha(re, im)
    if a.im == 0.0:
        raise ValueError("alpha_2 must be nonzero")
    if not a.theorem_valid:
        raise ValueError("alpha must satisfy |alpha| < 1")
    return a


def _f17(x) -> str:
    return "%.17g" % float(x)


def _mp_str(x, bits: int) -> str:
    """Full-precision decimal string for an extended-precision value."""
    digits = int(bits * 0.30103) + 3
    with mp.workprec(bits):
        return mp.nstr(mp.mpf(x), digits, strip_zeros=True)


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _parse_n_range(text: str):
    """'1..3' -> [1, 2, 3]; '2' -> [2]."""
    t = text.strip()
    m = _re.match(r"^(-?\d+)\.\.(-?\d+)$", t)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
    elif _re.match(r"^-?\d+$", t):
        lo = hi = int(t)
    else:
        raise ValueError(f"bad n range {text!r}; expected N or LO..HI")
    if lo > hi:
        raise ValueError(f"empty n range {text!r}")
    return list(range(lo, hi + 1))


def _parse_axis(text: str):
    """'0.1..0.9:5' -> 5 evenly spaced values; '0' -> [0.0]."""
    t = text.strip()
    m = _re.match(r"^([^.]*(?:\.[^.]*)?)\.\.([^:]+):(\d+)$", t)
    if m:
        lo, hi, count = float(m.group(1)), float(m.group(2)), int(m.group(3))
        if count < 1:
            raise ValueError(f"axis count must be >= 1 in {text!r}")
        if count == 1:
            return [lo]
        step = (hi - lo) / (count - 1)
        return [lo + i * step for i in range(count)]
    return [float(t)]


def _parse_alpha_grid(text: str):
    """'im:0.1..0.9:5,re:0' -> cross product of the re and im axes."""
    axes = {}
    for clause in text.split(","):
        clause = clause.strip()
        if not clause:
            continue
        key, _, rest = clause.partition(":")
        key = key.strip()
        if key not in ("re", "im") or not rest:
            raise ValueError(f"bad alpha grid clause {clause!r}; expected re:... or im:...")
        axes[key] = _parse_axis(rest)
    if "re" not in axes or "im" not in axes:
        raise ValueError("alpha grid must set both re and im axes")
    return [(r, i) for r in axes["re"] for i in axes["im"]]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int, default=DEFAULT_BITS,
                   help="working precision in bits (default 256)")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="output format (default json)")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--circle-points", type=int, default=512,
                   help="constraint circle grid size (default 512)")
    p.add_argument("--polygon-sides", type=int, default=64,
                   help="outer polygon directions per point (default 64)")
    p.add_argument("--torus-points", type=int, default=32,
                   help="objective torus grid per axis (default 32)")
    p.add_argument("--phases", type=int, default=16,
                   help="objective phase samples (default 16)")
    p.add_argument("--trials", type=int, default=1000,
                   help="random-search trials (default 1000)")
    p.add_argument("--seed", type=int, default=0,
                   help="random-search seed (default 0)")
    p.add_argument("--max-degree", type=int, default=8,
                   help="LP size guard; raise to allow larger n (default 8)")


def cmd_bounds(args) -> int:
    t0 = time.time()
    a = _checked_alpha(*args.alpha)
    lo, up = theorem2_bounds(args.n, a, args.precision)
    runtime_ms = (time.time() - t0) * 1000.0
    if args.format == "json":
        report = {
            "n": args.n,
            "alpha": {"re": a.re, "im": a.im},
            "analytic_lower": float(lo),
            "analytic_upper": float(up),
            "precision_bits": args.precision,
            "runtime_ms": runtime_ms,
        }
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        header = ("n", "alpha_re", "alpha_im", "analytic_lower",
                  "analytic_upper", "precision_bits", "runtime_ms")
        row = (args.n, _f17(a.re), _f17(a.im), _f17(lo), _f17(up),
               args.precision, _f17(runtime_ms))
        _emit(_csv_text(header, [row]), args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    t0 = time.time()
    a = _checked_alpha(*args.alpha)
    bits = args.precision
    w, normk, circle, lower = witness_certificate(
        args.n, a, r=args.r, grid=512, bits=bits
    )
    lo, up = theorem2_bounds(args.n, a, bits)
    runtime_ms = (time.time() - t0) * 1000.0
    digits = int(bits * 0.30103) + 3
    with mp.workprec(bits):
        coeff_rows = [
            {
                "j": jk[0],
                "k": jk[1],
                "re": mp.nstr(mp.mpc(c).real, digits, strip_zeros=True),
                "im": mp.nstr(mp.mpc(c).imag, digits, strip_zeros=True),
            }
            for jk, c in sorted(
                w.p.coeffs.items(), key=lambda it: (it[0][0] + it[0][1], it[0][1])
            )
        ]
    if args.format == "json":
        report = {
            "n": args.n,
            "alpha": {"re": a.re, "im": a.im},
            "r": float(w.r if args.r is None else args.r),
            "vanishing_order": w.order,
            "precision_bits": bits,
            "coefficients": coeff_rows,
            "max_residual": _mp_str(w.max_residual, bits),
            "norm_K": {
                "grid_max": _mp_str(normk.grid_max, bits),
                "certified_upper": _mp_str(normk.certified_upper, bits),
            },
            "circle_sup": {
                "grid_max": _mp_str(circle.grid_max, bits),
                "certified_upper": (
                    None
                    if circle.certified_upper is None
                    else _mp_str(circle.certified_upper, bits)
                ),
            },
            "witness_lower": float(lower),
            "analytic_lower": float(lo),
            "analytic_upper": float(up),
            "runtime_ms": runtime_ms,
        }
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        header = ("n", "alpha_re", "alpha_im", "r", "vanishing_order",
                  "precision_bits", "max_residual", "norm_k_grid",
                  "norm_k_upper", "circle_grid", "witness_lower",
                  "analytic_lower", "analytic_upper", "runtime_ms")
        row = (args.n, _f17(a.re), _f17(a.im),
               _f17(w.r if args.r is None else args.r), w.order, bits,
               _mp_str(w.max_residual, bits), _mp_str(normk.grid_max, bits),
               _mp_str(normk.certified_upper, bits),
               _mp_str(circle.grid_max, bits), _f17(lower), _f17(lo),
               _f17(up), _f17(runtime_ms))
        _emit(_csv_text(header, [row]), args.out)
    return EXIT_OK


def _cfg_from_args(args) -> LPConfig:
    return LPConfig(
        circle_points=args.circle_points,
        polygon_sides=args.polygon_sides,
        torus_points=args.torus_points,
        phase_samples=args.phases,
    )


def cmd_solve(args) -> int:
    t0 = time.time()
    a = _checked_alpha(*args.alpha)
    cfg = _cfg_from_args(args)
    est = en_bracket(
        args.n, a, cfg,
        trials=args.trials, seed=args.seed, bits=args.precision,
        max_degree=args.max_degree,
    )
    runtime_ms = (time.time() - t0) * 1000.0
    for flag in est.flags:
        print(f"warning: {flag}", file=sys.stderr)
    if args.format == "json":
        report = {
            "n": est.n,
            "alpha": {"re": a.re, "im": a.im},
            "analytic_lower": est.analytic_lower,
            "analytic_upper": est.analytic_upper,
            "witness_lower": est.witness_log_value,
            "oracle_lower": est.oracle_log_value,
            "lp_estimate": est.lp_log_value,
            "precision_bits": est.precision_bits,
            "cfg": {
                "circle_points": cfg.circle_points,
                "polygon_sides": cfg.polygon_sides,
                "torus_points": cfg.torus_points,
                "phase_samples": cfg.phase_samples,
            },
            "trials": est.trials,
            "seed": est.seed,
            "flags": list(est.flags),
            "runtime_ms": runtime_ms,
        }
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        header = SWEEP_COLUMNS + ("runtime_ms",)
        row = (est.n, _f17(a.re), _f17(a.im), _f17(est.analytic_lower),
               _f17(est.analytic_upper), _f17(est.witness_log_value),
               _f17(est.oracle_log_value), _f17(est.lp_log_value),
               est.precision_bits, est.seed, _f17(runtime_ms))
        _emit(_csv_text(header, [row]), args.out)
    return EXIT_OK


def _sweep_worker(task):
    """One (n, alpha) sweep row; returns a dict, never raises."""
    n, re, im, cfg_tuple, trials, seed, bits, max_degree = task
    row = {"n": n, "alpha_re": re, "alpha_im": im}
    try:
        a = _checked_alpha(re, im)
        cfg = LPConfig(*cfg_tuple)
        est = en_bracket(
            n, a, cfg, trials=trials, seed=seed, bits=bits, max_degree=max_degree
        )
        row.update(
            analytic_lower=est.analytic_lower,
            analytic_upper=est.analytic_upper,
            witness_lower=est.witness_log_value,
            oracle_lower=est.oracle_log_value,
            lp_estimate=est.lp_log_value,
            precision_bits=est.precision_bits,
            seed=est.seed,
        )
        if est.flags:
            row["error"] = "; ".join(est.flags)
    except (ValueError, SolverGridError) as ex:
        row["error"] = str(ex)
    return row


def cmd_sweep(args) -> int:
    try:
        ns = _parse_n_range(args.n_range)
        alphas = _parse_alpha_grid(args.alpha_grid)
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _cfg_from_args(args)  # validate before spawning workers
    cfg_tuple = (cfg.circle_points, cfg.polygon_sides, cfg.torus_points,
                 cfg.phase_samples)
    tasks = [
        (n, re, im, cfg_tuple, args.trials, args.seed, args.precision,
         args.max_degree)
        for n in sorted(ns)
        for re, im in sorted(alphas)
    ]
    if not tasks:
        raise ValueError("sweep grid is empty")
    if args.jobs > 1:
        with Pool(processes=args.jobs) as pool:
            rows = pool.map(_sweep_worker, tasks)
    else:
        rows = [_sweep_worker(t) for t in tasks]
    rows.sort(key=lambda r: (r["n"], r["alpha_re"], r["alpha_im"]))

    any_error = any("error" in r for r in rows)
    ok_count = sum(1 for r in rows if "error" not in r)
    if args.format == "csv":
        header = SWEEP_COLUMNS + (("error",) if any_error else ())
        table = []
        for r in rows:
            line = [
                r["n"], _f17(r["alpha_re"]), _f17(r["alpha_im"]),
                _f17(r["analytic_lower"]) if "analytic_lower" in r else "",
                _f17(r["analytic_upper"]) if "analytic_upper" in r else "",
                _f17(r["witness_lower"]) if "witness_lower" in r else "",
                _f17(r["oracle_lower"]) if "oracle_lower" in r else "",
                _f17(r["lp_estimate"]) if "lp_estimate" in r else "",
                r.get("precision_bits", ""), r.get("seed", ""),
            ]
            if any_error:
                line.append(r.get("error", ""))
            table.append(line)
        _emit(_csv_text(header, table), args.out)
    else:
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    if ok_count == 0:
        print("error: every sweep row failed", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(args.level, args.precision)
    name_w = max(len(r.name) for r in results)
    print(f"{'suite':{name_w}s}  {'cases':>6s}  {'failures':>8s}  "
          f"{'time_s':>7s}  status")
    for r in results:
        status = "ok" if r.ok else "FAIL"
        print(f"{r.name:{name_w}s}  {r.cases:6d}  {r.failures:8d}  "
              f"{r.seconds:7.2f}  {status}")
    bad = [r for r in results if not r.ok]
    if bad:
        first = bad[0]
        print(f"first failure: {first.name}: {first.first_failure}",
              file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _read_sweep_rows(path: str):
    """Rows from a sweep CSV or JSON file; raises ValueError when malformed."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        raise ValueError(f"cannot read {path!r}: {ex}") from ex
    if not text.strip():
        raise ValueError(f"sweep file {path!r} is empty")
    rows = []
    if text.lstrip().startswith(("[", "{")):
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("JSON sweep file must be a list of rows")
        raw_rows = data
    else:
        reader = csv.DictReader(io.StringIO(text))
        raw_rows = list(reader)
    needed = ("n", "alpha_re", "alpha_im", "analytic_lower", "analytic_upper",
              "witness_lower", "oracle_lower", "lp_estimate")
    for raw in raw_rows:
        if raw.get("error"):
            continue
        try:
            rows.append({
                "n": int(raw["n"]),
                **{key: float(raw[key]) for key in needed[1:]},
            })
        except (KeyError, TypeError, ValueError) as ex:
            raise ValueError(f"malformed sweep row {raw!r}") from ex
    if not rows:
        raise ValueError("sweep file has no usable rows")
    return rows


_SVG_W, _SVG_H = 720, 460
_MARGIN = 56


def _svg_document(rows, kind: str) -> str:
    """Static SVG: per-n band plus overlaid point estimates."""
    if kind == "bounds":
        low_key, high_key = "analytic_lower", "analytic_upper"
        series = ("witness_lower", "oracle_lower", "lp_estimate")
        band_label = "analytic band"
    else:
        low_key, high_key = "witness_lower", "lp_estimate"
        series = ("oracle_lower",)
        band_label = "numeric bracket"
    ns = sorted({r["n"] for r in rows})
    band = {
        n: (
            min(r[low_key] for r in rows if r["n"] == n),
            max(r[high_key] for r in rows if r["n"] == n),
        )
        for n in ns
    }
    ymin = min(v[0] for v in band.values())
    ymax = max(v[1] for v in band.values())
    for r in rows:
        for key in series:
            ymin = min(ymin, r[key])
            ymax = max(ymax, r[key])
    span = (ymax - ymin) or 1.0
    ymin -= 0.05 * span
    ymax += 0.05 * span
    x0, x1 = min(ns), max(ns)
    xspan = (x1 - x0) or 1

    def sx(n):
        return _MARGIN + (n - x0) / xspan * (_SVG_W - 2 * _MARGIN)

    def sy(v):
        return _SVG_H - _MARGIN - (v - ymin) / (ymax - ymin) * (_SVG_H - 2 * _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    upper_pts = [f"{sx(n):.2f},{sy(band[n][1]):.2f}" for n in ns]
    lower_pts = [f"{sx(n):.2f},{sy(band[n][0]):.2f}" for n in reversed(ns)]
    parts.append(
        f'<polygon points="{" ".join(upper_pts + lower_pts)}" '
        f'fill="#c8d8f0" stroke="#4b6ea8" stroke-width="1"/>'
    )
    colors = {"witness_lower": "#2a7f2a", "oracle_lower": "#b8860b",
              "lp_estimate": "#b03030"}
    for key in series:
        for r in rows:
            parts.append(
                f'<circle cx="{sx(r["n"]):.2f}" cy="{sy(r[key]):.2f}" r="3.5" '
                f'fill="{colors[key]}"/>'
            )
    # axes
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_SVG_H - _MARGIN}" x2="{_SVG_W - _MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>'
    )
    for n in ns:
        parts.append(
            f'<text x="{sx(n):.2f}" y="{_SVG_H - _MARGIN + 18}" '
            f'font-size="12" text-anchor="middle">{n}</text>'
        )
    for i in range(5):
        v = ymin + i * (ymax - ymin) / 4
        parts.append(
            f'<text x="{_MARGIN - 6}" y="{sy(v):.2f}" font-size="11" '
            f'text-anchor="end" dominant-baseline="middle">{v:.3g}</text>'
        )
    parts.append(
        f'<text x="{_SVG_W / 2:.0f}" y="{_SVG_H - 14}" font-size="13" '
        f'text-anchor="middle">degree n</text>'
    )
    legend = [("band", band_label, "#c8d8f0")] + [
        (key, key, colors[key]) for key in series
    ]
    ly = _MARGIN - 34
    lx = _MARGIN
    for _, label, color in legend:
        parts.append(
            f'<rect x="{lx}" y="{ly}" width="12" height="12" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{lx + 16}" y="{ly + 10}" font-size="12">{label}</text>'
        )
        lx += 16 + 8 * len(label) + 24
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _plot_csv(rows, kind: str) -> str:
    if kind == "bounds":
        header = ("n", "alpha_re", "alpha_im", "band_low", "band_high",
                  "witness_lower", "oracle_lower", "lp_estimate")
        table = [
            (r["n"], _f17(r["alpha_re"]), _f17(r["alpha_im"]),
             _f17(r["analytic_lower"]), _f17(r["analytic_upper"]),
             _f17(r["witness_lower"]), _f17(r["oracle_lower"]),
             _f17(r["lp_estimate"]))
            for r in rows
        ]
    else:
        header = ("n", "alpha_re", "alpha_im", "bracket_low", "bracket_high",
                  "oracle_lower")
        table = [
            (r["n"], _f17(r["alpha_re"]), _f17(r["alpha_im"]),
             _f17(r["witness_lower"]), _f17(r["lp_estimate"]),
             _f17(r["oracle_lower"]))
            for r in rows
        ]
    return _csv_text(header, table)


def cmd_plot(args) -> int:
    try:
        rows = _read_sweep_rows(args.input)
    except (ValueError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    rows.sort(key=lambda r: (r["n"], r["alpha_re"], r["alpha_im"]))
    if args.out.endswith(".svg"):
        text = _svg_document(rows, args.kind)
    elif args.out.endswith(".csv"):
        text = _plot_csv(rows, args.kind)
    else:
        print("error: --out must end in .svg or .csv", file=sys.stderr)
        return EXIT_PARSE
    _emit(text, args.out)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="bwexp",
        description=(
            "Bracket the extremal growth constant e_n(alpha) for polynomials "
            "bounded on an exponential curve: analytic endpoints, a witness "
            "certificate, and a discretized LP estimate."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="analytic endpoint formulas only")
    p.add_argument("--n", type=int, required=True, help="polynomial degree (>= 1)")
    p.add_argument("--alpha", type=_alpha_flag, required=True,
                   help="curve exponent, RE+IMi (e.g. 0.0+0.5i)")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    _add_common(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("witness", help="witness construction report")
    p.add_argument("--n", type=int, required=True, help="polynomial degree (>= 1)")
    p.add_argument("--alpha", type=_alpha_flag, required=True,
                   help="curve exponent, RE+IMi")
    p.add_argument("--r", type=float, default=None,
                   help="certificate radius (default N/n)")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    _add_common(p)
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser("solve", help="full three-way bracket for one (n, alpha)")
    p.add_argument("--n", type=int, required=True, help="polynomial degree (>= 1)")
    p.add_argument("--alpha", type=_alpha_flag, required=True,
                   help="curve exponent, RE+IMi")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    _add_common(p)
    _add_solver_flags(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("sweep", help="bracket a grid of (n, alpha) pairs")
    p.add_argument("--n-range", required=True, help="degree range, N or LO..HI")
    p.add_argument("--alpha-grid", required=True,
                   help="axes spec, e.g. 'im:0.1..0.9:5,re:0'")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--precision", type=int, default=DEFAULT_BITS,
                   help="working precision in bits (default 256)")
    _add_solver_flags(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("verify", help="run every invariant suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick",
                   help="case-count level (default quick)")
    p.add_argument("--precision", type=int, default=DEFAULT_BITS,
                   help="working precision in bits (default 256)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("plot", help="SVG or plot-ready CSV from a sweep file")
    p.add_argument("--input", required=True, help="sweep CSV or JSON file")
    p.add_argument("--kind", choices=("bounds", "bracket"), default="bounds",
                   help="band source: analytic bounds or numeric bracket")
    p.add_argument("--out", required=True, help="output .svg or .csv file")
    p.set_defaults(handler=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        return args.handler(args)
    except SolverGridError as ex:
        print(
            f"solver error: {ex}\nremediation: rerun with a larger "
            f"--circle-points (double it) or a smaller --n",
            file=sys.stderr,
        )
        return EXIT_SOLVER
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as ex:
        print(f"io error: {ex}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
