"""Command-line front end.

    sirseries solve    --method dtm --degree 4
    sirseries residual --method both --degree 10
    sirseries phase    --method ladm --degree 10 --grid 0:1:101
    sirseries compare  --degree 10 --tol-coeff 1e-12 --tol-oracle 1e-9

Exit codes: 0 success, 1 usage or parse error, 2 tolerance violation,
3 numeric divergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, _backend
from .dtm import dtm_solve
from .errors import (ArithmeticOverflowError, CapacityError, DivergenceError,
                     ParseError, ValidationError)
from .ladm import ladm_solve
from .model import InitialState, SeriesSolution, SirParams, load_params, residual_point
from .oracle import DEFAULT_STEP, max_deviation, rk4_integrate
from .series import evaluate_many, format_float, format_polynomial

EXIT_OK, EXIT_USAGE, EXIT_TOLERANCE, EXIT_DIVERGENCE = 0, 1, 2, 3

TABLE_GRID = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> tuple[float, ...]:
    try:
        start_s, end_s, count_s = text.split(":")
        start, end, count = float(start_s), float(end_s), int(count_s)
    except ValueError:
        raise UsageError(f"--grid expects START:END:COUNT, got {text!r}") from None
    if count < 1:
        raise UsageError("grid count must be >= 1")
    if not (math.isfinite(start) and math.isfinite(end)) or end < start:
        raise UsageError("grid bounds must be finite with START <= END")
    if count == 1:
        return (start,)
    n = count - 1
    # Weighted form keeps k/n points correctly rounded (0.6, not 0.6000000000000001).
    return tuple((start * (n - k) + end * k) / n for k in range(count))


def parse_times(text: str) -> tuple[float, ...]:
    try:
        times = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--times expects comma-separated numbers, got {text!r}") from None
    if not times:
        raise UsageError("--times is empty")
    if not all(math.isfinite(t) for t in times):
        raise UsageError("grid times must be finite")
    if any(b < a for a, b in zip(times, times[1:])):
        raise UsageError("grid times must be nondecreasing")
    return times


def _solve(method: str, params: SirParams, init: InitialState, degree: int) -> SeriesSolution:
    if method == "dtm":
        return dtm_solve(params, init, degree)
    return ladm_solve(params, init, degree)[0]


def _methods(req) -> list[str]:
    return ["dtm", "ladm"] if req.method == "both" else [req.method]


def _label(sol: SeriesSolution) -> str:
    if sol.method == "dtm":
        return f"degree={sol.degree} listing-label n={sol.listing_label} (DTM listings: n = degree + 1)"
    return f"degree={sol.degree} listing-label n={sol.listing_label} (LADM partial sums: n = degree)"


def _coeff_block(sol: SeriesSolution) -> dict:
    return {"s": sol.s.tolist(), "i": sol.i.tolist(), "r": sol.r.tolist()}


def _poly_block(sol: SeriesSolution) -> dict:
    return {"S": format_polynomial(sol.s), "I": format_polynomial(sol.i),
            "R": format_polynomial(sol.r)}


def _residual_rows(sol: SeriesSolution, params: SirParams, times) -> list[tuple]:
    rows = []
    for t in times:
        e = residual_point(sol, params, t)
        rows.append((t, abs(e.e_s), abs(e.e_i), abs(e.e_r)))
    return rows


def _coeff_deviation(a: SeriesSolution, b: SeriesSolution) -> float:
    """Max relative coefficient deviation, with a 1e-18 absolute floor."""
    worst = 0.0
    for x, y in ((a.s, b.s), (a.i, b.i), (a.r, b.r)):
        xc, yc = x.coeffs, y.coeffs
        scale_ = np.maximum(np.maximum(np.abs(xc), np.abs(yc)), 1e-18)
        worst = max(worst, float(np.max(np.abs(xc - yc) / scale_)))
    return worst


def _load_reference(path) -> list[tuple]:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        try:
            for rec in reader:
                rows.append(tuple(float(rec[k]) for k in ("t", "E_S", "E_I", "E_R")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"reference CSV needs numeric columns t,E_S,E_I,E_R ({exc})") from None
    return rows


def _header(buf, req, sols):
    buf.write(f"# sirseries {__version__} command={req.command} method={req.method}\n")
    for sol in sols:
        buf.write(f"# {sol.method}: {_label(sol)}\n")


def run_solve(req, params, init) -> tuple[str, int]:
    sols = [_solve(m, params, init, req.degree) for m in _methods(req)]
    if req.format == "json":
        report = {
            "method": req.method,
            "degree": req.degree,
            "coefficients": {s.method: _coeff_block(s) for s in sols},
            "polynomials": {s.method: _poly_block(s) for s in sols},
            "labels": {s.method: _label(s) for s in sols},
        }
        return _dump_json(report), EXIT_OK
    buf = io.StringIO()
    _header(buf, req, sols)
    for sol in sols:
        for name, poly in _poly_block(sol).items():
            buf.write(f"# {sol.method} {name}(t) = {poly}\n")
    buf.write("method,k,S,I,R\n")
    for sol in sols:
        for k in range(sol.degree + 1):
            buf.write(",".join([sol.method, str(k)] + [
                format_float(x[k]) for x in (sol.s, sol.i, sol.r)]) + "\n")
    return buf.getvalue(), EXIT_OK


def run_residual(req, params, init) -> tuple[str, int]:
    times = req.times or TABLE_GRID
    sols = [_solve(m, params, init, req.degree) for m in _methods(req)]
    table = {sol.method: _residual_rows(sol, params, times) for sol in sols}
    if req.reference:
        table["reference"] = _load_reference(req.reference)
    if req.format == "json":
        report = {
            "method": req.method,
            "degree": req.degree,
            "labels": {s.method: _label(s) for s in sols},
            "coefficients": {s.method: _coeff_block(s) for s in sols},
            "residual_table": {
                m: [dict(zip(("t", "E_S", "E_I", "E_R"), row)) for row in rows]
                for m, rows in table.items()
            },
        }
        return _dump_json(report), EXIT_OK
    buf = io.StringIO()
    _header(buf, req, sols)
    if req.reference:
        buf.write("# reference rows copied from the user-supplied CSV\n")
    buf.write("method,t,abs_E_S,abs_E_I,abs_E_R\n")
    for m, rows in table.items():
        for row in rows:
            buf.write(m + "," + ",".join(format_float(x) for x in row) + "\n")
    return buf.getvalue(), EXIT_OK


def run_phase(req, params, init) -> tuple[str, int]:
    times = np.array(req.times or parse_grid("0:1:101"))
    methods = _methods(req)
    sols = [_solve(m, params, init, req.degree) for m in methods]
    if req.format == "json":
        report = {
            "method": req.method,
            "degree": req.degree,
            "coefficients": {s.method: _coeff_block(s) for s in sols},
            "phase": {
                s.method: {"t": times.tolist(),
                           "S": evaluate_many(s.s, times).tolist(),
                           "I": evaluate_many(s.i, times).tolist(),
                           "R": evaluate_many(s.r, times).tolist()}
                for s in sols
            },
        }
        return _dump_json(report), EXIT_OK
    buf = io.StringIO()
    _header(buf, req, sols)
    with_method = len(sols) > 1
    buf.write(("method," if with_method else "") + "t,S,I,R\n")
    for sol in sols:
        cols = [evaluate_many(x, times).tolist() for x in (sol.s, sol.i, sol.r)]
        for k, t in enumerate(times.tolist()):
            prefix = sol.method + "," if with_method else ""
            buf.write(prefix + ",".join(format_float(x) for x in
                                        (t, cols[0][k], cols[1][k], cols[2][k])) + "\n")
    return buf.getvalue(), EXIT_OK


def run_compare(req, params, init) -> tuple[str, int]:
    times = req.times or TABLE_GRID
    sols = {m: _solve(m, params, init, req.degree) for m in ("dtm", "ladm")}
    t_end = max(times)
    if min(times) < 0:
        raise UsageError("compare needs grid times >= 0")
    traj = rk4_integrate(params, init, t_end, req.step)
    metrics: dict[str, float] = {}
    for m, sol in sols.items():
        rows = _residual_rows(sol, params, times)
        metrics[f"max_residual_{m}"] = max(max(r[1:]) for r in rows)
    metrics["coeff_deviation"] = _coeff_deviation(sols["dtm"], sols["ladm"])
    for m, sol in sols.items():
        metrics[f"oracle_deviation_{m}"] = max_deviation(sol, traj)

    checks = []
    if req.tol_coeff is not None:
        checks.append(("coeff_deviation", metrics["coeff_deviation"], req.tol_coeff))
    if req.tol_oracle is not None:
        for m in sols:
            checks.append((f"oracle_deviation_{m}", metrics[f"oracle_deviation_{m}"],
                           req.tol_oracle))
    failed = [c for c in checks if not c[1] <= c[2]]
    code = EXIT_TOLERANCE if failed else EXIT_OK

    if req.format == "json":
        report = {
            "method": "both",
            "degree": req.degree,
            "labels": {s.method: _label(s) for s in sols.values()},
            "coefficients": {m: _coeff_block(s) for m, s in sols.items()},
            "comparison": {
                "metrics": metrics,
                "oracle": {"t_end": t_end, "step": req.step},
                "checks": [{"metric": n, "value": v, "tolerance": tol, "pass": v <= tol}
                           for n, v, tol in checks],
                "status": "fail" if failed else "pass",
            },
        }
        return _dump_json(report), code
    buf = io.StringIO()
    _header(buf, req, list(sols.values()))
    buf.write(f"# oracle: RK4 step={format_float(req.step)} t_end={format_float(t_end)}\n")
    buf.write("metric,value,tolerance,status\n")
    tolerances = {n: tol for n, _, tol in checks}
    for name, value in metrics.items():
        tol = tolerances.get(name)
        status = "-" if tol is None else ("pass" if value <= tol else "fail")
        buf.write(f"{name},{format_float(value)},"
                  f"{'-' if tol is None else format_float(tol)},{status}\n")
    buf.write(f"overall,{'fail' if failed else 'pass'},-,-\n")
    return buf.getvalue(), code


def _dump_json(report) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sirseries",
                     description="Power-series solvers for the modified SIR virus model.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, method_default):
        p.add_argument("--method", choices=("dtm", "ladm", "both"), default=method_default)
        p.add_argument("--degree", type=int, default=10,
                       help="highest retained power of t (default 10)")
        p.add_argument("--params", metavar="FILE", help="key = value parameter file")
        grid = p.add_mutually_exclusive_group()
        grid.add_argument("--grid", metavar="START:END:COUNT")
        grid.add_argument("--times", metavar="T1,T2,...")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="FILE")

    common(sub.add_parser("solve", help="print series coefficients"), "both")
    p = sub.add_parser("residual", help="residual-error table")
    common(p, "both")
    p.add_argument("--reference", metavar="FILE",
                   help="CSV (t,E_S,E_I,E_R) of external reference residuals, shown alongside")
    common(sub.add_parser("phase", help="sampled (t, S, I, R) for phase portraits"), "ladm")
    p = sub.add_parser("compare", help="DTM vs LADM vs RK4 oracle")
    common(p, "both")
    p.add_argument("--tol-coeff", type=float, default=1e-12)
    p.add_argument("--tol-oracle", type=float, default=None)
    p.add_argument("--step", type=float, default=DEFAULT_STEP, help="RK4 step")
    return parser


_COMMANDS = {"solve": run_solve, "residual": run_residual,
             "phase": run_phase, "compare": run_compare}


def main(argv=None) -> int:
    parser = build_parser()
    req = parser.parse_args(argv)
    try:
        if req.degree < 0:
            raise UsageError("--degree must be >= 0")
        req.times = (parse_grid(req.grid) if req.grid else
                     parse_times(req.times) if req.times else None)
        if req.command == "compare" and not req.step > 0:
            raise UsageError("--step must be positive")
        if req.params:
            params, init = load_params(req.params)
        else:
            params, init = SirParams(), InitialState()
        text, code = _COMMANDS[req.command](req, params, init)
    except (UsageError, ParseError, ValidationError, CapacityError, OSError) as exc:
        print(f"sirseries: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DivergenceError, ArithmeticOverflowError) as exc:
        print(f"sirseries: numeric divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    if req.out:
        with open(req.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _entry():
    sys.exit(main())


if __name__ == "__main__":
    _entry()
