"""Optimal and near-optimal N-point approximations of 1D discrete measures.

For atoms x_1 < x_2 < ... with cumulative sums S_l, any N-point set errs by at
least ||N S_l|| / N on [0, x_l], and rounding every N S_l to its nearest
integer meets all of those bounds at once. Placing points off the atoms
never helps; ``brute_force_optimal`` checks this empirically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .discrepancy import PointSet, star_discrepancy_1d
from .errors import DomainError, InvariantError
from .measure import Measure, add, tail_mass, weight_value
from .numtheory import dist_nearest_int, lcm_denominators
from .precision import floor, is_exact, less_equal, to_real


@dataclass(frozen=True)
class RoundedProfile:
    N: int
    counts: tuple          # p_l(N), l = 1..L
    multiplicities: tuple  # k_l = p_l - p_(l-1)
    achieved: object


def _nearest(v) -> int:
    """Nearest integer, ties rounded up."""
    half = Fraction(1, 2) if is_exact(v) else to_real(Fraction(1, 2))
    return floor(v + half)


def _check_N(N: int) -> None:
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")


def worst_prefix(m: Measure, N: int):
    """(max_l ||N S_l|| / N, l attaining it, number of atoms examined).

    The last atom of a finite measure has S_n = 1 and contributes nothing.
    For an infinite family the sweep stops once the tail mass is at most the
    running maximum, since ||N S_l'|| / N <= 1 - S_l' for every later l'.
    The index is 0 when every term vanishes.
    """
    _check_N(N)
    best = Fraction(0) if m.is_rational else to_real(0)
    arg = 0
    s = Fraction(0)
    last = m.n - 1 if m.is_finite else None
    l = 0
    for l, a in enumerate(m.iter_atoms(), start=1):
        if last is not None and l > last:
            l = last
            break
        s = add(s, weight_value(a.weight))
        d = dist_nearest_int(N * s) / N
        if not m.is_rational:
            d = to_real(d)
        if d > best:
            best, arg = d, l
        if last is None and less_equal(tail_mass(m, l), best):
            break
    return best, arg, l


def optimal_value(m: Measure, N: int):
    """Minimum star-discrepancy over all N-point sets: max_l ||N S_l|| / N."""
    return worst_prefix(m, N)[0]


def cumulative_rounding(m: Measure, N: int):
    """Place round(N S_l) - round(N S_(l-1)) points on atom x_l.

    For an infinite family the sweep stops at the index L certified by
    :func:`worst_prefix`; the N - p_L leftover points go on x_(L+1).
    Returns ``(RoundedProfile, PointSet)``.
    """
    _check_N(N)
    _, _, L = worst_prefix(m, N)
    if m.is_finite:
        L = m.n
    counts, mults, positions = [], [], []
    s = Fraction(0)
    prev = 0
    for l, a in enumerate(m.iter_atoms(), start=1):
        if l > L:
            break
        s = add(s, weight_value(a.weight))
        p = N if (m.is_finite and l == m.n) else _nearest(N * s)
        if p < prev:
            raise InvariantError("cumulative counts decreased; weights must be positive")
        counts.append(p)
        mults.append(p - prev)
        positions.append(a.x)
        prev = p
    if prev < N:
        a = m.atom(L + 1)
        positions.append(a.x)
        mults.append(N - prev)
        counts.append(N)
    ps = PointSet.from_counts(positions, mults)
    achieved = star_discrepancy_1d(m, ps).value
    return RoundedProfile(N, tuple(counts), tuple(mults), achieved), ps


def exact_zero_construction(m: Measure, N: int) -> Optional[PointSet]:
    """The point set with k_i = N xi_i when every N xi_i is an integer, else None."""
    _check_N(N)
    if not m.is_finite:
        raise DomainError("exact_zero_construction needs a finite measure")
    if N % lcm_denominators(m):
        return None
    ks = [int(N * a.weight) for a in m.atoms]
    return PointSet.from_counts([a.x for a in m.atoms], ks)


def quantile_construction(m: Measure, N: int) -> PointSet:
    """y_i = inf{x : mu([0,x]) >= (2i - 1)/(2N)}, i = 1..N, merged by position.

    The result has discrepancy at most 1/N; this is asserted.
    """
    _check_N(N)
    positions, ks = [], []
    i = 1
    s = Fraction(0)
    atoms = m.iter_atoms()
    for a in atoms:
        s = add(s, weight_value(a.weight))
        k = 0
        while i <= N:
            level = Fraction(2 * i - 1, 2 * N)
            if not less_equal(level, s):
                break
            k += 1
            i += 1
        if k:
            positions.append(a.x)
            ks.append(k)
        if i > N:
            break
    if i <= N:
        # only reachable through rounding of real weights at the last atom
        positions.append(a.x)
        ks.append(N - i + 1)
    ps = PointSet.from_counts(positions, ks)
    value = star_discrepancy_1d(m, ps).value
    if not less_equal(value, Fraction(1, N)):
        raise AssertionError(f"quantile construction exceeded 1/N at N={N}")
    return ps
