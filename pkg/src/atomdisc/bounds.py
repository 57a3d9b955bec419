"""Lower-bound certificates, Kronecker scans and the d-dimensional bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .approx import worst_prefix
from .discrepancy import (CLOSED, DiscrepancyResult, PointSet, star_discrepancy_dd)
from .errors import DomainError, IrrationalInput, PrecisionExhausted, ScaleExceeded
from .measure import Measure, MeasureDD, RealWeight, add, cumulative_sums, weight_value
from .numtheory import TRUSTED_DIGITS, dist_nearest_int, lcm_denominators, reduced_coprime_part
from .precision import coerce_pair, floor, is_exact, less_equal, mp, to_real

RATIONAL_EXACT_ZERO = "rational-exact-zero"
RATIONAL_BOUND = "rational-bound"
IRRATIONAL_BOUND = "irrational-bound"
INFINITE_CASE_BOUND = "infinite-case-bound"
MULTIDIM_BOUND = "multidim-bound"

MULTIDIM_MAX_ATOMS = 16


@dataclass(frozen=True)
class Certificate:
    """Every N-point set errs by at least ``bound`` on ``witness``.

    ``witness`` is an anchored interval ``(x, side)`` in 1D, a box
    ``(corner, sides)`` in d-D, or None for exact-zero certificates.
    ``arithmetic`` records the quantities the bound is derived from.
    """

    kind: str
    N: int
    bound: object
    witness: Optional[tuple]
    arithmetic: dict = field(default_factory=dict)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        return Fraction(repr(c))
    return Fraction(c)


def precision_error_bound(N_max: int):
    """Absolute error bound N_max * 10^(1 - precision) on ||N S_l|| for real S_l."""
    return N_max * to_real(10) ** (1 - mp.dps)


def rational_lower_bound(m: Measure, N: int) -> Certificate:
    """Exact bound from the first cumulative sum S_l whose denominator Q_l does not divide N.

    |S_l - k/N| >= 1/(N s) with s = Q_l / gcd(Q_l, N) for every integer k.
    """
    if not m.is_finite:
        raise DomainError("rational_lower_bound needs a finite measure")
    lcm = lcm_denominators(m)
    if N % lcm == 0:
        mults = tuple(int(N * a.weight) for a in m.atoms)
        return Certificate(RATIONAL_EXACT_ZERO, N, Fraction(0), None,
                           {"lcm": lcm, "multiplicities": mults})
    prof = cumulative_sums(m, m.n - 1)
    q_max = max(a.weight.denominator for a in m.atoms)
    for l, (S, Q) in enumerate(zip(prof.sums, prof.denominators), start=1):
        if N % Q:
            s = reduced_coprime_part(Q, N)
            bound = Fraction(1, N * s)
            assert bound >= Fraction(1, N * q_max)
            return Certificate(RATIONAL_BOUND, N, bound, (m.atoms[l - 1].x, CLOSED),
                               {"l": l, "S_l": S, "Q_l": Q, "gcd": math.gcd(Q, N), "s": s,
                                "lcm": lcm, "q": q_max})
    raise AssertionError("lcm does not divide N but every cumulative denominator does")


def irrational_lower_bound(m: Measure, N: int) -> Certificate:
    """Bound max_l ||N S_l|| / N for a finite measure with real weights.

    The value is computed at working precision and carries an absolute
    error of at most N * 10^(1 - precision); it is not a proof-grade bound.
    """
    if not m.is_finite:
        raise DomainError("irrational_lower_bound needs a finite measure")
    if m.is_rational:
        raise DomainError("all weights are rational; use rational_lower_bound")
    value, l, _ = worst_prefix(m, N)
    S = cumulative_sums(m, l).sums[-1] if l else None
    witness = (m.atoms[l - 1].x, CLOSED) if l else None
    return Certificate(IRRATIONAL_BOUND, N, value, witness,
                       {"l": l, "S_l": S, "dist": value * N,
                        "error_bound": precision_error_bound(N)})


# ---------------------------------------------------------------------------
# infinite support


def _z_points(m: Measure, N: int, limit: int = 10_000) -> list:
    """inf{x : mu([0,x]) >= (2i - 1)/N} for i = 1 .. N/2 (empty when N > limit)."""
    if N > limit:
        return []
    out = []
    s = Fraction(0)
    i = 1
    for a in m.iter_atoms():
        s = add(s, weight_value(a.weight))
        while i <= N // 2 and less_equal(Fraction(2 * i - 1, N), s):
            out.append(a.x)
            i += 1
        if i > N // 2:
            break
    return out


def certify_at_z1(m: Measure, N: int, c_tilde, z1, mass_at_z1, index: Optional[int]) -> Certificate:
    """Branch on the mass carried by z_1 = sup{x : mu([0,x]) <= 1/(2N)}.

    ``index`` is the atom number of z_1, or None when z_1 carries no atom.
    """
    c_tilde = _as_fraction(c_tilde)
    if c_tilde <= 0:
        raise DomainError("c_tilde must be positive")
    record = {"z1": z1, "mass_at_z1": mass_at_z1, "c_tilde": c_tilde}
    if index is None or mass_at_z1 == 0:
        record["branch"] = "no-atom-at-z1"
        return Certificate(INFINITE_CASE_BOUND, N, Fraction(1, 2 * N), (z1, CLOSED), record)
    if not less_equal(Fraction(1, 1) / (c_tilde * N), mass_at_z1):
        record["branch"] = "light-atom-at-z1"
        bound = max(Fraction(0), (Fraction(1, 2) - 1 / c_tilde) / N)
        return Certificate(INFINITE_CASE_BOUND, N, bound, (z1, CLOSED), record)

    # z* = z_1 must carry points; the error at [0, z*] is at least ||N xi|| / N
    xi = cumulative_sums(m, index).sums[-1]
    record.update(branch="delegate", z_star=z1, l_star=index, xi=xi)
    if is_exact(xi):
        Q = xi.denominator
        s = reduced_coprime_part(Q, N)
        record.update(Q=Q, s=s)
        at_z = Fraction(0) if s == 1 else Fraction(1, N * s)
    else:
        at_z = dist_nearest_int(N * xi) / N
    record["bound_at_z_star"] = at_z
    # later prefixes can only raise the bound; take the best certified one
    best, l_best, l_seen = worst_prefix(m, N)
    record.update(l_best=l_best, prefix_checked=l_seen)
    a, b = coerce_pair(at_z, best)
    if b > a:
        bound = b
        witness = (m.atom(l_best).x, CLOSED)
    else:
        bound = a
        witness = (z1, CLOSED)
    return Certificate(INFINITE_CASE_BOUND, N, bound, witness, record)


def infinite_case_certificate(m: Measure, N: int, c_tilde=4) -> Certificate:
    """Lower bound for an infinitely supported measure (finite stand-ins accepted)."""
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    half = Fraction(1, 2 * N)
    s = Fraction(0)
    for l, a in enumerate(m.iter_atoms(), start=1):
        s = add(s, weight_value(a.weight))
        if not less_equal(s, half):
            cert = certify_at_z1(m, N, c_tilde, a.x, weight_value(a.weight), l)
            cert.arithmetic["z_points"] = _z_points(m, N)
            return cert
    raise AssertionError("total mass 1 never exceeded 1/(2N)")


# ---------------------------------------------------------------------------
# Kronecker scans


@dataclass
class ScanReport:
    c: Fraction
    N_max: int
    rows: list           # (N, optimal_value, scaled)
    hits_lower: list
    hits_upper: list
    sup_scaled: object   # max over scanned N of N * optimal_value
    c_estimate: object   # 1 / sup_scaled; observed, not proven

    @property
    def density_lower(self) -> float:
        return len(self.hits_lower) / self.N_max

    def threshold(self, N: int) -> Fraction:
        return 1 / (self.c * N)


def scan_irrational(m: Measure, c, N_max: int) -> ScanReport:
    """optimal_value for N = 1..N_max, classified against 1/(cN)."""
    c = _as_fraction(c)
    if not c > 2:
        raise DomainError(f"c must exceed 2, got {c}")
    if N_max < 1:
        raise DomainError("N_max must be positive")
    if not m.is_finite:
        raise DomainError("scan_irrational needs a finite measure")
    prof = cumulative_sums(m, m.n - 1)
    if not any(prof.irrational):
        raise IrrationalInput("no cumulative sum is declared irrational; "
                              "use rational_lower_bound for rational measures")
    if precision_error_bound(N_max) > to_real(10) ** (-TRUSTED_DIGITS):
        raise PrecisionExhausted(
            f"N_max = {N_max} leaves fewer than {TRUSTED_DIGITS} digits at precision {mp.dps}")
    sums = [S if is_exact(S) else to_real(S) for S in prof.sums]
    inv_c_real = to_real(1 / c)
    rows, lower, upper = [], [], []
    sup = to_real(0)
    for N in range(1, N_max + 1):
        scaled = to_real(0)
        for S in sums:
            d = to_real(dist_nearest_int(N * S))
            if d > scaled:
                scaled = d
        rows.append((N, scaled / N, scaled))
        if scaled >= inv_c_real:
            lower.append(N)
        if scaled <= inv_c_real:
            upper.append(N)
        if scaled > sup:
            sup = scaled
    c_est = 1 / sup if sup else None
    return ScanReport(c, N_max, rows, lower, upper, sup, c_est)


# ---------------------------------------------------------------------------
# d dimensions


def _check_dd(m: MeasureDD) -> None:
    if m.dimension > 4 or m.k > MULTIDIM_MAX_ATOMS:
        raise ScaleExceeded(f"desk scale is d <= 4, k <= {MULTIDIM_MAX_ATOMS}")


def marginal(m: MeasureDD, axis: int) -> Measure:
    """Projection onto one coordinate; atoms sharing a coordinate merge."""
    merged: dict = {}
    irrational: dict = {}
    for p, w in m.atoms:
        x = p[axis]
        merged[x] = add(merged.get(x, Fraction(0)), weight_value(w))
        irrational[x] = irrational.get(x, False) or (isinstance(w, RealWeight) and w.irrational)
    xs = sorted(merged)
    ws = [merged[x] if is_exact(merged[x]) else RealWeight(merged[x], irrational[x]) for x in xs]
    return Measure.from_atoms(xs, ws)


def multidim_lower_bound(m: MeasureDD, N: int) -> Certificate:
    """Largest 1D optimum over the coordinate marginals.

    A slab [0,t] x [0,1]^(d-1) is an anchored box, so each marginal's optimal
    value bounds the d-D discrepancy from below.
    """
    _check_dd(m)
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    best = None
    for axis in range(m.dimension):
        mg = marginal(m, axis)
        value, l, _ = worst_prefix(mg, N)
        if best is None or not less_equal(value, best[0]):
            best = (value, axis, l, mg)
    value, axis, l, mg = best
    if l:
        corner = tuple(mg.atoms[l - 1].x if j == axis else Fraction(1) for j in range(m.dimension))
        witness = (corner, (CLOSED,) * m.dimension)
    else:
        witness = None
    return Certificate(MULTIDIM_BOUND, N, value, witness,
                       {"axis": axis, "l": l, "marginal_atoms": mg.n})


def largest_remainder_multiplicities(m: MeasureDD, N: int) -> list:
    """floor(N xi_i) plus one for the largest remainders, ties by atom index."""
    raw = [N * weight_value(w) for _, w in m.atoms]
    base = [floor(r) for r in raw]
    rem = [r - b for r, b in zip(raw, base)]
    extra = N - sum(base)
    order = sorted(range(m.k), key=lambda i: (-to_real(rem[i]) if not is_exact(rem[i]) else -rem[i], i))
    for i in order[:extra]:
        base[i] += 1
    return base


def largest_remainder_construction(m: MeasureDD, N: int):
    """Apportion N points to the atoms; every box then errs by less than k/N.

    Returns ``(PointSet, DiscrepancyResult)``.
    """
    _check_dd(m)
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    ks = largest_remainder_multiplicities(m, N)
    ps = PointSet.from_counts([p for p, _ in m.atoms], ks)
    result: DiscrepancyResult = star_discrepancy_dd(m, ps)
    if not less_equal(result.value, Fraction(m.k, N)):
        raise AssertionError(f"largest-remainder discrepancy exceeded k/N at N={N}")
    return ps, result
