"""Exact star-discrepancy between a discrete measure and a point multiset.

Both measures are purely atomic, so the supremum over anchored intervals
[0,x) and [0,x] is attained at one of finitely many one-sided evaluations:
the atoms, the point positions, and x = 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, InvariantError, ScaleExceeded
from .measure import LEFT, RIGHT, Measure, MeasureDD, _position, add, cdf, sub, weight_value
from .precision import to_real

OPEN = "open"
CLOSED = "closed"

MAX_DIM = 4
MAX_COORDS = 64
MAX_ORACLE_ATOMS = 5
MAX_ORACLE_N = 8
MAX_DD_MULTISETS = 3_000_000


@dataclass(frozen=True)
class PointSet:
    """N points given as (position, multiplicity) entries.

    Positions are Fractions in 1D and tuples (never lists) in d-D.
    """

    entries: tuple

    def __post_init__(self):
        entries = []
        for y, k in self.entries:
            if isinstance(y, tuple):
                y = tuple(_position(c) for c in y)
                bad = any(not 0 <= c <= 1 for c in y)
            else:
                y = _position(y)
                bad = not 0 <= y <= 1
            if bad:
                raise InvariantError(f"point {y} outside [0,1]")
            if int(k) != k or k < 1:
                raise InvariantError(f"multiplicity must be a positive integer, got {k}")
            entries.append((y, int(k)))
        if not entries:
            raise InvariantError("a point set needs at least one point")
        if len({y for y, _ in entries}) != len(entries):
            raise InvariantError("point positions must be pairwise distinct")
        object.__setattr__(self, "entries", tuple(entries))

    @classmethod
    def from_counts(cls, positions: Sequence, counts: Sequence[int]) -> "PointSet":
        """Build a set from parallel lists, dropping zero counts and merging repeats."""
        merged: dict = {}
        for y, k in zip(positions, counts):
            if k:
                y = tuple(_position(c) for c in y) if isinstance(y, tuple) else _position(y)
                merged[y] = merged.get(y, 0) + k
        return cls(tuple(merged.items()))

    @property
    def N(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def positions(self) -> tuple:
        return tuple(y for y, _ in self.entries)

    @property
    def multiplicities(self) -> tuple:
        return tuple(k for _, k in self.entries)

    def count(self, y) -> int:
        for p, k in self.entries:
            if p == y:
                return k
        return 0


@dataclass(frozen=True)
class DiscrepancyResult:
    """sup |mu(A) - nu_N(A)| and the anchored interval (or box) attaining it.

    In 1D ``witness`` is the right end x and ``side`` is 'open' for [0,x) or
    'closed' for [0,x]. In d-D ``witness`` is a tuple of right ends and
    ``side`` a tuple of per-coordinate sides.
    """

    value: object
    witness: object
    side: object


def empirical_cdf(ps: PointSet, x, side: str = RIGHT) -> Fraction:
    x = _position(x)
    c = sum(k for y, k in ps.entries if y < x or (side == RIGHT and y == x))
    return Fraction(c, ps.N)


def _abs(v):
    return -v if v < 0 else v


def star_discrepancy_1d(m: Measure, ps: PointSet) -> DiscrepancyResult:
    N = ps.N
    pts = sorted(ps.entries)
    n_below_one = sum(1 for y, _ in pts if y < 1)
    zero = Fraction(0) if m.is_rational else to_real(0)
    best, witness, side = zero, Fraction(0), OPEN

    def consider(x, mu_val, nu_val, s):
        nonlocal best, witness, side
        d = _abs(sub(mu_val, nu_val))
        if d > best:
            best, witness, side = d, x, s

    F_mu, F_nu = zero, Fraction(0)
    j = 0
    atoms = m.iter_atoms()
    atom = next(atoms, None)
    while atom is not None or j < len(pts):
        if not m.is_finite and j >= n_below_one:
            # nu is constant up to 1 from here; |S - C| over the remaining
            # atoms peaks either at the current S or at S -> 1 (checked below)
            break
        c = min(t for t in (atom.x if atom else None, pts[j][0] if j < len(pts) else None)
                if t is not None)
        consider(c, F_mu, F_nu, OPEN)
        if atom is not None and atom.x == c:
            F_mu = add(F_mu, weight_value(atom.weight))
            atom = next(atoms, None)
        if j < len(pts) and pts[j][0] == c:
            F_nu += Fraction(pts[j][1], N)
            j += 1
        consider(c, F_mu, F_nu, CLOSED)

    # [0,1): everything except mass sitting exactly at 1
    if m.is_finite and m.atoms[-1].x == 1:
        mu_open = sub(1, weight_value(m.atoms[-1].weight))
    else:
        mu_open = Fraction(1) if m.is_rational else to_real(1)
    consider(Fraction(1), mu_open, Fraction(sum(k for y, k in pts if y < 1), N), OPEN)
    return DiscrepancyResult(best, witness, side)


def evaluate_witness(m: Measure, ps: PointSet, x, side: str):
    """|mu(A) - nu_N(A)| on A = [0,x) (open) or [0,x] (closed)."""
    s = RIGHT if side == CLOSED else LEFT
    return _abs(sub(cdf(m, x, s), empirical_cdf(ps, x, s)))


# ---------------------------------------------------------------------------
# d dimensions


def _box_sums(arr: np.ndarray) -> np.ndarray:
    for ax in range(arr.ndim):
        arr = np.cumsum(arr, axis=ax)
    return arr


def star_discrepancy_dd(m: MeasureDD, ps: PointSet) -> DiscrepancyResult:
    d = m.dimension
    if d > MAX_DIM:
        raise ScaleExceeded(f"dimension {d} exceeds desk scale ({MAX_DIM})")
    for y, _ in ps.entries:
        if not isinstance(y, tuple) or len(y) != d:
            raise DomainError(f"point {y} is not a {d}-vector")
    axes = []
    for j in range(d):
        vals = sorted({p[j] for p, _ in m.atoms} | {y[j] for y, _ in ps.entries})
        if len(vals) > MAX_COORDS:
            raise ScaleExceeded(f"{len(vals)} distinct values on axis {j} exceeds {MAX_COORDS}")
        axes.append(vals)
    index = [{v: i for i, v in enumerate(vals)} for vals in axes]
    shape = tuple(len(v) for v in axes)
    N = ps.N

    if m.is_rational:
        D = math.lcm(*(w.denominator for _, w in m.atoms))
        # scale by D*N so both measures carry integer masses
        dtype = np.int64 if D * N < 2 ** 60 else object
        grid = np.zeros(shape, dtype=dtype)
        for p, w in m.atoms:
            grid[tuple(index[j][p[j]] for j in range(d))] += int(w * D * N)
        for y, k in ps.entries:
            grid[tuple(index[j][y[j]] for j in range(d))] -= k * D
        box = _box_sums(grid)
        flat = int(np.argmax(np.abs(box)))
        value = Fraction(abs(int(box.flat[flat])), D * N)
    else:
        grid = np.empty(shape, dtype=object)
        grid.fill(to_real(0))
        for p, w in m.atoms:
            key = tuple(index[j][p[j]] for j in range(d))
            grid[key] = grid[key] + to_real(weight_value(w))
        for y, k in ps.entries:
            key = tuple(index[j][y[j]] for j in range(d))
            grid[key] = grid[key] - to_real(Fraction(k, N))
        box = _box_sums(grid)
        mags = [abs(v) for v in box.flat]
        flat = max(range(len(mags)), key=lambda i: (mags[i], -i))
        value = mags[flat]
    idx = np.unravel_index(flat, shape)
    witness = tuple(axes[j][idx[j]] for j in range(d))
    return DiscrepancyResult(value, witness, (CLOSED,) * d)


def evaluate_box(m: MeasureDD, ps: PointSet, corner, sides):
    """|mu(B) - nu_N(B)| for the anchored box with the given right ends and sides."""
    def inside(p):
        return all(c < t or (s == CLOSED and c == t) for c, t, s in zip(p, corner, sides))
    mu = Fraction(0) if m.is_rational else to_real(0)
    for p, w in m.atoms:
        if inside(p):
            mu = add(mu, weight_value(w))
    nu = Fraction(sum(k for y, k in ps.entries if inside(y)), ps.N)
    return _abs(sub(mu, nu))


# ---------------------------------------------------------------------------
# brute-force oracles


def _oracle_slots(xs: Sequence[Fraction], include_gaps: bool) -> list:
    """Candidate positions in increasing order; each is (position, atom index or None)."""
    slots = []
    if include_gaps and xs[0] > 0:
        slots.append((xs[0] / 2, None))
    for i, x in enumerate(xs):
        slots.append((x, i))
        if include_gaps and i + 1 < len(xs):
            slots.append(((x + xs[i + 1]) / 2, None))
    if include_gaps and xs[-1] < 1:
        slots.append(((xs[-1] + 1) / 2, None))
    return slots


def brute_force_optimal(m: Measure, N: int, include_gaps: bool = True):
    """Minimum star-discrepancy over every N-point multiset on the candidate slots.

    Candidates are the atoms and, with ``include_gaps``, one representative
    point for each open gap between consecutive atoms, below the first atom
    and above the last. Only the order of a point relative to the atoms
    matters, so these representatives cover every placement in [0,1].
    Returns ``(value, PointSet)``.
    """
    if not m.is_finite:
        raise ScaleExceeded("the brute-force oracle needs a finite measure")
    if m.n > MAX_ORACLE_ATOMS or N > MAX_ORACLE_N or N < 1:
        raise ScaleExceeded(f"oracle limited to n <= {MAX_ORACLE_ATOMS}, 1 <= N <= {MAX_ORACLE_N}")
    xs = [a.x for a in m.atoms]
    slots = _oracle_slots(xs, include_gaps)
    if m.is_rational:
        D = math.lcm(*(a.weight.denominator for a in m.atoms))
        unit = D  # one point, scaled by D*N
        masses = [int(m.atoms[i].weight * D * N) if i is not None else 0 for _, i in slots]
        scale = D * N
    else:
        unit = to_real(1) / N
        masses = [to_real(weight_value(m.atoms[i].weight)) if i is not None else to_real(0)
                  for _, i in slots]
        scale = None

    S = len(slots)
    best = [None, None]
    counts = [0] * S

    def rec(j, left, mu_cum, nu_cum, worst):
        if best[0] is not None and worst >= best[0]:
            return
        if j == S - 1:
            counts[j] = left
            mu = mu_cum + masses[j]
            nu = nu_cum + left * unit
            w = max(worst, _abs(mu - nu))
            if best[0] is None or w < best[0]:
                best[0], best[1] = w, list(counts)
            return
        mu = mu_cum + masses[j]
        for c in range(left, -1, -1):
            counts[j] = c
            nu = nu_cum + c * unit
            rec(j + 1, left - c, mu, nu, max(worst, _abs(mu - nu)))
        counts[j] = 0

    zero = 0 if scale is not None else to_real(0)
    rec(0, N, zero, zero, zero)
    value = Fraction(best[0], scale) if scale is not None else best[0]
    ps = PointSet.from_counts([p for p, _ in slots], best[1])
    return value, ps


def _dd_slots(vals: Sequence[Fraction], include_gaps: bool) -> list:
    # A coordinate below every atom only adds the point to boxes of zero
    # mu-mass, so the lowest atom coordinate dominates it.
    return [p for p, _ in _oracle_slots(list(vals), include_gaps) if p >= vals[0]]


def brute_force_optimal_dd(m: MeasureDD, N: int, include_gaps: bool = True):
    """Exhaustive d-D optimum over multisets on the product grid of per-axis slots.

    Per axis the slots are the atom coordinates and, with ``include_gaps``,
    one representative of each open gap between or above them. Every
    anchored box meets a point exactly as it meets that point's slot
    representative, so the grid is complete. Returns ``(value, PointSet)``.
    """
    d = m.dimension
    if d > MAX_DIM:
        raise ScaleExceeded(f"dimension {d} exceeds desk scale ({MAX_DIM})")
    if N < 1:
        raise DomainError("N must be positive")
    axes = [_dd_slots(sorted({p[j] for p, _ in m.atoms}), include_gaps) for j in range(d)]
    shape = tuple(len(a) for a in axes)
    cells = list(itertools.product(*(range(s) for s in shape)))
    n_cells = len(cells)
    n_multisets = math.comb(n_cells + N - 1, N)
    if n_multisets > MAX_DD_MULTISETS:
        raise ScaleExceeded(f"{n_multisets} multisets exceeds {MAX_DD_MULTISETS}")
    index = [{v: i for i, v in enumerate(a)} for a in axes]
    cell_of = {c: i for i, c in enumerate(cells)}

    # inclusion[c, b]: cell c lies in the box whose (closed) corner is cell b
    cell_arr = np.array(cells, dtype=np.int64).reshape(n_cells, d)
    inclusion = np.all(cell_arr[:, None, :] <= cell_arr[None, :, :], axis=2)

    if m.is_rational:
        D = math.lcm(*(w.denominator for _, w in m.atoms))
        if D * N >= 2 ** 50:
            raise ScaleExceeded("weights too fine for the exhaustive d-D oracle")
        # integer masses scaled by D*N; float64 holds them exactly
        mu = np.zeros(n_cells)
        for p, w in m.atoms:
            mu[cell_of[tuple(index[j][p[j]] for j in range(d))]] += int(w * D * N)
        incl = inclusion.astype(np.float64)
        mu_box = mu @ incl
        unit = float(D)
    else:
        mu = [to_real(0)] * n_cells
        for p, w in m.atoms:
            c = cell_of[tuple(index[j][p[j]] for j in range(d))]
            mu[c] = mu[c] + to_real(weight_value(w))
        mu_box = [sum((mu[c] for c in range(n_cells) if inclusion[c, b]), to_real(0))
                  for b in range(n_cells)]
        incl = inclusion.astype(np.float64)
        unit = None

    best_val, best_combo = None, None
    combos = itertools.combinations_with_replacement(range(n_cells), N)
    while True:
        chunk = np.array(list(itertools.islice(combos, 100_000)), dtype=np.int64)
        if not len(chunk):
            break
        rows = len(chunk)
        flat = (np.arange(rows)[:, None] * n_cells + chunk).ravel()
        cnt = np.bincount(flat, minlength=rows * n_cells).reshape(rows, n_cells).astype(np.float64)
        nu_box = cnt @ incl
        if unit is not None:
            worst = np.abs(mu_box[None, :] - unit * nu_box).max(axis=1)
            i = int(np.argmin(worst))
            if best_val is None or worst[i] < best_val:
                best_val, best_combo = int(worst[i]), tuple(chunk[i])
        else:
            for r in range(rows):
                w = max(abs(mu_box[b] - to_real(int(nu_box[r, b])) / N) for b in range(n_cells))
                if best_val is None or w < best_val:
                    best_val, best_combo = w, tuple(chunk[r])
    value = Fraction(best_val, D * N) if unit is not None else best_val
    pos = [tuple(axes[j][cells[c][j]] for j in range(d)) for c in best_combo]
    return value, PointSet.from_counts(pos, [1] * len(pos))
