"""Acceptance criteria, one test per criterion.

Each criterion records a single PASS/FAIL line, shown in the pytest
terminal summary. Run directly with ``python3 tests/test_acceptance.py``
for the lines alone.
"""
import csv
import io
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from atomdisc import cli  # noqa: E402
from atomdisc.approx import (exact_zero_construction, optimal_value,  # noqa: E402
                             quantile_construction)
from atomdisc.bounds import (RATIONAL_BOUND, largest_remainder_construction,  # noqa: E402
                             multidim_lower_bound, rational_lower_bound, scan_irrational)
from atomdisc.discrepancy import (MAX_ORACLE_N, brute_force_optimal,  # noqa: E402
                                  brute_force_optimal_dd, star_discrepancy_1d)
from atomdisc.measure import Measure, RealWeight  # noqa: E402
from atomdisc.numtheory import lcm_denominators  # noqa: E402
from atomdisc.precision import less_equal, mp  # noqa: E402

from conftest import (ACCEPTANCE_LINES, MEASURES_DIR, dd_order_types,  # noqa: E402
                      real_weight_measure, small_rational_measures)

F = Fraction
ALL_SMALL = list(small_rational_measures())


def inv_sqrt2_measure():
    return Measure.from_atoms([F(3, 10), F(7, 10)], [RealWeight.from_constant("inv_sqrt2"),
                                                     RealWeight.from_constant("one_minus_inv_sqrt2")])


def report(number, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    if failures:
        line += f"; first failure: {failures[0]}"
    ACCEPTANCE_LINES.append(line)
    assert not failures, line


def criterion_1():
    failures = []
    for m in ALL_SMALL:
        for N in range(1, 7):
            brute = brute_force_optimal(m, N, include_gaps=True)[0]
            if optimal_value(m, N) != brute:
                failures.append((m, N, brute))
    rng = random.Random(2024)
    tol = mp.mpf(10) ** -12
    for _ in range(50):
        n = rng.randint(2, 4)
        m = real_weight_measure([rng.randint(1, 40) for _ in range(n)])
        N = rng.randint(1, 6)
        brute = brute_force_optimal(m, N, include_gaps=True)[0]
        if abs(optimal_value(m, N) - brute) > tol:
            failures.append((m, N, brute))
    report(1, "optimal_value equals brute force", failures,
           f"{len(ALL_SMALL)} rational measures x N<=6, 50 irrational instances")


def criterion_2():
    failures = []
    checked = 0
    for m in ALL_SMALL:
        L = lcm_denominators(m)
        q = max(a.weight.denominator for a in m.atoms)
        for N in range(1, 37):
            if N % L == 0:
                ps = exact_zero_construction(m, N)
                if ps is None or star_discrepancy_1d(m, ps).value != 0:
                    failures.append(("zero", m, N))
                continue
            cert = rational_lower_bound(m, N)
            optimum = brute_force_optimal(m, N)[0] if N <= MAX_ORACLE_N else optimal_value(m, N)
            checked += 1
            if cert.kind != RATIONAL_BOUND or cert.bound < F(1, q * N) or cert.bound > optimum:
                failures.append(("bound", m, N, cert.bound, optimum))
    report(2, "exact zero iff lcm | N, otherwise 1/(qN) <= bound <= optimum", failures,
           f"{checked} bound instances")


def criterion_3():
    rep = scan_irrational(inv_sqrt2_measure(), F(21, 10), 10 ** 4)
    lo, hi = len(rep.hits_lower), len(rep.hits_upper)
    failures = [] if lo >= 10 and hi >= 10 else [(lo, hi)]
    report(3, "1/sqrt2, c=2.1, N<=10^4: >=10 hits each side", failures,
           f"hits_lower={lo}, hits_upper={hi}")


def criterion_4():
    failures, details = [], []
    for c in (F(5, 2), F(4)):
        rep = scan_irrational(inv_sqrt2_measure(), c, 10 ** 5)
        expected = 1 - 2 / float(c)
        details.append(f"c={c}: {rep.density_lower:.4f} vs {expected:.4f}")
        if abs(rep.density_lower - expected) > 0.05:
            failures.append((c, rep.density_lower))
    report(4, "hits_lower density within 0.05 of 1-2/c", failures, "; ".join(details))


def criterion_5():
    g = Measure.geometric()
    failures = [N for N in range(1, 10 ** 4 + 1) if N * optimal_value(g, N) != F(1, 2)]
    trunc = Measure.from_atoms([F(1, 2), F(3, 4), F(7, 8), F(15, 16), 1],
                               [F(1, 2), F(1, 4), F(1, 8), F(1, 16), F(1, 16)])
    failures += [("oracle", N) for N in range(1, 7) if brute_force_optimal(trunc, N)[0] != F(1, 2 * N)]
    report(5, "geometric(1/2): N * optimal_value = 1/2 for N <= 10^4", failures,
           "truncation oracle N<=6")


def criterion_6():
    rng = random.Random(6)
    failures = []
    for i in range(200):
        kind = i % 4
        if kind == 0:
            m = Measure.geometric(F(rng.randint(1, 9), 10))
        elif kind == 3:
            m = real_weight_measure([rng.randint(1, 30) for _ in range(rng.randint(1, 8))])
        else:
            n = rng.randint(1, 10)
            nums = [rng.randint(1, 20) for _ in range(n)]
            xs = sorted(rng.sample(range(101), n))
            m = Measure.from_atoms([F(x, 100) for x in xs], [F(c, sum(nums)) for c in nums])
        N = rng.randint(1, 100)
        ps = quantile_construction(m, N)
        value = star_discrepancy_1d(m, ps).value
        if ps.N != N or not less_equal(value, F(1, N)):
            failures.append((m, N, value))
    report(6, "quantile construction <= 1/N", failures, "200 measures, N<=100")


def criterion_7():
    failures = []
    measures = dd_order_types()
    for m in measures:
        for N in range(1, 5):
            _, res = largest_remainder_construction(m, N)
            bound = multidim_lower_bound(m, N).bound
            opt = brute_force_optimal_dd(m, N)[0]
            if res.value > F(m.k, N) or bound > opt or opt > res.value:
                failures.append((m, N, bound, opt, res.value))
    report(7, "d=2, k<=3, N<=4: bound <= optimum <= construction <= k/N", failures,
           f"{len(measures)} order types")


def criterion_8():
    failures = []
    for m in ALL_SMALL:
        for N in range(1, 7):
            with_gaps = brute_force_optimal(m, N, include_gaps=True)[0]
            without = brute_force_optimal(m, N, include_gaps=False)[0]
            if with_gaps != without:
                failures.append((m, N, with_gaps, without))
    report(8, "gap placement never improves the oracle optimum", failures)


def criterion_9():
    out = io.StringIO()
    n_max = 10 ** 4
    code = cli.run(["scan", "--measure", str(MEASURES_DIR / "inv_sqrt2.json"), "--c", "2.1",
                    "--n-max", str(n_max), "--output", "csv"], out)
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    rep = scan_irrational(inv_sqrt2_measure(), F(21, 10), n_max)
    failures = []
    if code != 0 or rows[0] != cli.CSV_HEADER or len(rows) != n_max + 1:
        failures.append(("shape", code, rows[0], len(rows)))
    else:
        lower = {int(r[0]) for r in rows[1:] if r[4] == "1"}
        upper = {int(r[0]) for r in rows[1:] if r[5] == "1"}
        if lower != set(rep.hits_lower) or upper != set(rep.hits_upper):
            failures.append("classification mismatch")
        if [int(r[0]) for r in rows[1:]] != list(range(1, n_max + 1)):
            failures.append("N column")
    report(9, "scan CSV round-trip", failures, f"{n_max} rows")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_acceptance(criterion):
    criterion()


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        try:
            crit()
        except AssertionError:
            failed += 1
        print(ACCEPTANCE_LINES[-1], flush=True)
    sys.exit(1 if failed else 0)
