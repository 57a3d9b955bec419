import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from atomdisc.measure import Measure, MeasureDD, RealWeight
from atomdisc.precision import mp

MEASURES_DIR = Path(__file__).resolve().parent.parent / "measures"

# filled by test_acceptance.report, printed after the run
ACCEPTANCE_LINES = []

SMALL_FRACTIONS = sorted({Fraction(a, b) for b in range(2, 7) for a in range(1, b)})


def weight_tuples(n, max_den=6):
    """Every n-tuple of positive weights with denominators <= max_den summing to 1."""
    if n == 1:
        yield (Fraction(1),)
        return
    vals = sorted({Fraction(a, b) for b in range(2, max_den + 1) for a in range(1, b)})
    for head in itertools.product(vals, repeat=n - 1):
        last = 1 - sum(head)
        if last > 0 and last.denominator <= max_den:
            yield head + (last,)


def layouts(n):
    """Interior positions and a layout touching both ends of [0,1]."""
    yield [Fraction(i + 1, n + 1) for i in range(n)]
    if n >= 2:
        yield [Fraction(i, n - 1) for i in range(n)]


def small_rational_measures(ns=(2, 3, 4), max_den=6):
    for n in ns:
        for w in weight_tuples(n, max_den):
            for xs in layouts(n):
                yield Measure.from_atoms(xs, w)


def dd_order_types(max_k=3, max_den=6):
    """2-D measures with k <= max_k atoms, one per coordinate order type and weight vector."""
    grid = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    cells = list(itertools.product(grid, grid))

    def ranks(conf):
        maps = [{v: i for i, v in enumerate(sorted({p[j] for p in conf}))} for j in range(2)]
        return tuple(tuple(maps[j][p[j]] for j in range(2)) for p in conf)

    seen, out = set(), []
    for k in range(1, max_k + 1):
        weights = set()
        for w in weight_tuples(k, max_den):
            weights.update(itertools.permutations(w))
        for conf in itertools.combinations(cells, k):
            r = ranks(conf)
            for w in sorted(weights):
                key = tuple(sorted(zip(r, w)))
                if key not in seen:
                    seen.add(key)
                    out.append(MeasureDD(2, tuple(zip(conf, w))))
    return out


def real_weight_measure(raw, positions=None):
    """Normalize positive reals into declared-irrational weights."""
    vals = [mp.sqrt(v) if isinstance(v, int) else v for v in raw]
    total = sum(vals)
    ws = [RealWeight(v / total, True) for v in vals]
    n = len(ws)
    xs = positions or [Fraction(i + 1, n + 1) for i in range(n)]
    return Measure.from_atoms(xs, ws)


@st.composite
def rational_measures(draw, max_atoms=4, max_den=6):
    n = draw(st.integers(1, max_atoms))
    nums = draw(st.lists(st.integers(1, max_den), min_size=n, max_size=n))
    total = sum(nums)
    xs = draw(st.lists(st.integers(0, 20), min_size=n, max_size=n, unique=True))
    return Measure.from_atoms([Fraction(x, 20) for x in xs], [Fraction(c, total) for c in nums])


@pytest.fixture
def two_half():
    return Measure.from_atoms([Fraction(3, 10), Fraction(7, 10)], [Fraction(1, 2), Fraction(1, 2)])


@pytest.fixture
def golden():
    return Measure.from_atoms([Fraction(3, 10), Fraction(7, 10)],
                              [RealWeight.from_constant("phi_minus_1"),
                               RealWeight.from_constant("two_minus_phi")])


@pytest.fixture
def inv_sqrt2():
    return Measure.from_atoms([Fraction(3, 10), Fraction(7, 10)],
                              [RealWeight.from_constant("inv_sqrt2"),
                               RealWeight.from_constant("one_minus_inv_sqrt2")])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
