"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 scale or precision limits,
4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import approx, bounds, discrepancy
from .errors import (DomainError, InvariantError, IrrationalInput,
                     OracleMismatch, PrecisionExhausted, ScaleExceeded, SchemaError,
                     TailNotConvergent)
from .measure import Measure, MeasureDD, load_measure
from .precision import (DEFAULT_PRECISION, MIN_PRECISION, coerce_pair, is_exact, less_equal, mp,
                        working_precision)

CSV_HEADER = ["N", "optimal_value", "scaled", "bound", "hit_lower", "hit_upper"]
ORACLE_TOL = Fraction(1, 10 ** 12)

EXIT_OK, EXIT_INVALID, EXIT_SCALE, EXIT_ORACLE = 0, 2, 3, 4


def fmt(v) -> str:
    """Rationals as p/q, reals with precision-bounded digits."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    return mp.nstr(v, max(10, mp.dps - 10), strip_zeros=False)


def fmt_interval(witness) -> str:
    if witness is None:
        return "none"
    x, side = witness
    if isinstance(x, tuple):
        return " x ".join(f"[0, {fmt(t)}{']' if s == 'closed' else ')'}" for t, s in zip(x, side))
    return f"[0, {fmt(x)}{']' if side == 'closed' else ')'}"


def fmt_tuple(ks) -> str:
    return "(" + ",".join(str(k) for k in ks) + ")"


def _agree(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return Fraction(a) == Fraction(b)
    a, b = coerce_pair(a, b)
    return abs(a - b) <= ORACLE_TOL.numerator / mp.mpf(ORACLE_TOL.denominator)


def _desk_scale(m: Measure, N: int) -> bool:
    return (m.is_finite and m.n <= discrepancy.MAX_ORACLE_ATOMS
            and 1 <= N <= discrepancy.MAX_ORACLE_N)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _write_csv(out, header, rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _require_1d(m):
    if isinstance(m, MeasureDD):
        raise DomainError("this command needs a one-dimensional measure; use multidim")
    return m


def _require_N(args):
    if args.N is None:
        raise DomainError("--N is required")
    return args.N


def _load_points(path):
    doc = json.loads(Path(path).read_text(), parse_float=Fraction)
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise SchemaError('point-set document must be {"points": [{"y": ..., "k": ...}]}')
    entries = []
    for p in doc["points"]:
        if not isinstance(p, dict) or "y" not in p:
            raise SchemaError(f"malformed point {p!r}")
        y = p["y"]
        if isinstance(y, list) and not (len(y) == 2 and all(isinstance(t, int) for t in y)):
            y = tuple(y)
        entries.append((y, p.get("k", 1)))
    return discrepancy.PointSet(tuple(entries))


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args, m, out):
    if args.points is None:
        raise DomainError("eval needs --points")
    ps = _load_points(args.points)
    if isinstance(m, MeasureDD):
        res = discrepancy.star_discrepancy_dd(m, ps)
        witness = (res.witness, res.side)
    else:
        res = discrepancy.star_discrepancy_1d(m, ps)
        witness = (res.witness, res.side)
    if args.output == "csv":
        _write_csv(out, ["N", "discrepancy", "witness"], [[ps.N, fmt(res.value), fmt_interval(witness)]])
    else:
        print(f"D* = {fmt(res.value)}, witness {fmt_interval(witness)}", file=out)
    return EXIT_OK


def cmd_approx(args, m, out):
    m, N = _require_1d(m), _require_N(args)
    prof, ps = approx.cumulative_rounding(m, N)
    qs = approx.quantile_construction(m, N)
    q_value = discrepancy.star_discrepancy_1d(m, qs).value
    if args.oracle:
        _oracle_check(args, m, N, prof.achieved)
    if args.output == "csv":
        _write_csv(out, ["construction", "position", "multiplicity", "discrepancy"],
                   [["rounding", fmt(y), k, fmt(prof.achieved)] for y, k in ps.entries]
                   + [["quantile", fmt(y), k, fmt(q_value)] for y, k in qs.entries])
        return EXIT_OK
    print(f"rounding: counts {fmt_tuple(prof.counts)}, multiplicities {fmt_tuple(prof.multiplicities)}, "
          f"D* = {fmt(prof.achieved)}", file=out)
    print(f"quantile: multiplicities {fmt_tuple(qs.multiplicities)} at "
          f"{fmt_tuple(fmt(y) for y in qs.positions)}, D* = {fmt(q_value)} (<= 1/N = {fmt(Fraction(1, N))})",
          file=out)
    return EXIT_OK


def _oracle_check(args, m, N, value):
    if not _desk_scale(m, N):
        print(f"oracle: skipped (N={N} beyond desk scale)", file=sys.stderr)
        return
    brute, _ = discrepancy.brute_force_optimal(m, N, args.include_gaps)
    if not _agree(brute, value):
        raise OracleMismatch(f"oracle: N={N} brute force gives {fmt(brute)}, reported {fmt(value)}")


def _hit_cols(scaled, c):
    if c is None:
        return ["", ""]
    inv_c = 1 / c
    a, b = coerce_pair(scaled, inv_c)
    return [fmt(a >= b), fmt(a <= b)]


def cmd_optimal(args, m, out):
    m, N = _require_1d(m), _require_N(args)
    value = approx.optimal_value(m, N)
    prof, _ = approx.cumulative_rounding(m, N)
    if args.oracle:
        _oracle_check(args, m, N, value)
    c = bounds._as_fraction(args.c) if args.c is not None else None
    if args.output == "csv":
        bound = 1 / (c * N) if c is not None else None
        _write_csv(out, CSV_HEADER, [[N, fmt(value), fmt(N * value), fmt(bound)] + _hit_cols(N * value, c)])
    else:
        print(f"D*_opt = {fmt(value)}, multiplicities {fmt_tuple(prof.multiplicities)}", file=out)
    return EXIT_OK


def _certificate(args, m, N):
    if not m.is_finite:
        return bounds.infinite_case_certificate(m, N, args.c if args.c is not None else 4)
    if m.is_rational:
        return bounds.rational_lower_bound(m, N)
    return bounds.irrational_lower_bound(m, N)


def cmd_bound(args, m, out):
    m, N = _require_1d(m), _require_N(args)
    cert = _certificate(args, m, N)
    if args.oracle:
        if _desk_scale(m, N):
            brute, _ = discrepancy.brute_force_optimal(m, N, args.include_gaps)
            if not (_agree(cert.bound, brute) or less_equal(cert.bound, brute)):
                raise OracleMismatch(f"oracle: bound {fmt(cert.bound)} exceeds brute-force optimum {fmt(brute)}")
        else:
            print(f"oracle: skipped (N={N} beyond desk scale)", file=sys.stderr)
    if args.output == "csv":
        value = approx.optimal_value(m, N)
        _write_csv(out, CSV_HEADER, [[N, fmt(value), fmt(N * value), fmt(cert.bound), "", ""]])
        return EXIT_OK
    if cert.kind == bounds.RATIONAL_EXACT_ZERO:
        print(f"exact zero; multiplicities {fmt_tuple(cert.arithmetic['multiplicities'])}", file=out)
        return EXIT_OK
    details = ", ".join(f"{k}={fmt(v) if not isinstance(v, (str, list)) else v}"
                        for k, v in cert.arithmetic.items() if k != "z_points")
    print(f"{cert.kind}: D*_N >= {fmt(cert.bound)} on {fmt_interval(cert.witness)} ({details})", file=out)
    if cert.kind == bounds.IRRATIONAL_BOUND:
        print(f"note: computed at {mp.dps} digits; absolute error <= {fmt(cert.arithmetic['error_bound'])}",
              file=out)
    return EXIT_OK


def cmd_scan(args, m, out):
    m = _require_1d(m)
    if args.c is None or args.n_max is None:
        raise DomainError("scan needs --c and --n-max")
    if not bounds._as_fraction(args.c) > 2:
        raise DomainError(f"--c must exceed 2 (the lower-bound statement needs c > 2), got {args.c}")
    rep = bounds.scan_irrational(m, args.c, args.n_max)
    if args.oracle:
        for N, value, _ in rep.rows:
            if _desk_scale(m, N):
                _oracle_check(args, m, N, value)
    lower, upper = set(rep.hits_lower), set(rep.hits_upper)
    if args.output == "csv":
        _write_csv(out, CSV_HEADER,
                   [[N, fmt(v), fmt(s), fmt(rep.threshold(N)), fmt(N in lower), fmt(N in upper)]
                    for N, v, s in rep.rows])
        return EXIT_OK
    c = rep.c
    print(f"scan N = 1..{rep.N_max}, c = {fmt(c)}", file=out)
    print(f"hits_lower (D* >= 1/(cN)): {len(rep.hits_lower)}, density {rep.density_lower:.4f} "
          f"(equidistribution predicts {float(1 - 2 / c):.4f} for one irrational sum)", file=out)
    print(f"hits_upper (D* <= 1/(cN)): {len(rep.hits_upper)}", file=out)
    print(f"sup N*D* = {fmt(rep.sup_scaled)}; empirical c estimate {fmt(rep.c_estimate)} "
          f"(observed, not a proof)", file=out)
    for N, v, s in rep.rows:
        print(f"N={N} optimal_value={fmt(v)} scaled={fmt(s)} bound={fmt(rep.threshold(N))} "
              f"hit_lower={fmt(N in lower)} hit_upper={fmt(N in upper)}", file=out)
    return EXIT_OK


def cmd_multidim(args, m, out):
    if not isinstance(m, MeasureDD):
        raise DomainError("multidim needs a measure with dimension >= 2")
    N = _require_N(args)
    cert = bounds.multidim_lower_bound(m, N)
    ps, res = bounds.largest_remainder_construction(m, N)
    if args.oracle:
        opt, _ = discrepancy.brute_force_optimal_dd(m, N, args.include_gaps)
        if not (less_equal(cert.bound, opt) and less_equal(opt, res.value)):
            raise OracleMismatch(f"oracle: bound {fmt(cert.bound)} <= optimum {fmt(opt)} "
                                 f"<= construction {fmt(res.value)} fails")
    mults = [ps.count(p) for p, _ in m.atoms]
    if args.output == "csv":
        _write_csv(out, ["N", "bound", "axis", "construction", "k_over_N"],
                   [[N, fmt(cert.bound), cert.arithmetic["axis"], fmt(res.value), fmt(Fraction(m.k, N))]])
        return EXIT_OK
    print(f"lower bound {fmt(cert.bound)} from axis {cert.arithmetic['axis']} marginal", file=out)
    print(f"largest remainder: multiplicities {fmt_tuple(mults)}, D* = {fmt(res.value)} "
          f"(<= k/N = {fmt(Fraction(m.k, N))})", file=out)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "approx": cmd_approx, "optimal": cmd_optimal,
            "bound": cmd_bound, "scan": cmd_scan, "multidim": cmd_multidim}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", required=True, help="measure document (JSON)")
    common.add_argument("--N", type=_positive_int)
    common.add_argument("--n-max", type=_positive_int, dest="n_max")
    common.add_argument("--c", type=str, help="threshold constant (scan) or c~ (infinite-case bound)")
    common.add_argument("--precision", type=int, help=f"significant digits (>= {MIN_PRECISION})")
    common.add_argument("--output", choices=["text", "csv"], default="text")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    common.add_argument("--include-gaps", action="store_true", dest="include_gaps",
                        help="let the oracle place points between atoms")
    common.add_argument("--points", help="point-set document for eval")

    parser = argparse.ArgumentParser(prog="atomdisc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("eval", "star-discrepancy of a given point set"),
                        ("approx", "cumulative-rounding and quantile constructions"),
                        ("optimal", "optimal N-point discrepancy"),
                        ("bound", "lower-bound certificate"),
                        ("scan", "classify N = 1..n-max against 1/(cN)"),
                        ("multidim", "d-dimensional bound and construction")]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        precision = args.precision
        if precision is None:
            precision = int(os.environ.get("DISCREPANCY_PRECISION", DEFAULT_PRECISION))
        with working_precision(precision):
            if args.c is not None:
                args.c = Fraction(args.c)
            m = load_measure(args.measure)
            return COMMANDS[args.command](args, m, out)
    except OracleMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ORACLE
    except (ScaleExceeded, PrecisionExhausted, TailNotConvergent) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCALE
    except (SchemaError, InvariantError, DomainError, IrrationalInput) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
