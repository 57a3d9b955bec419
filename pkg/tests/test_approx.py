import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomdisc.approx import (cumulative_rounding, exact_zero_construction, optimal_value,
                             quantile_construction, worst_prefix)
from atomdisc.discrepancy import PointSet, brute_force_optimal, star_discrepancy_1d
from atomdisc.errors import DomainError
from atomdisc.measure import Measure
from atomdisc.numtheory import lcm_denominators
from atomdisc.precision import mp

from conftest import rational_measures, real_weight_measure, weight_tuples

F = Fraction


def test_two_halves_N3(two_half):
    assert optimal_value(two_half, 3) == F(1, 6)
    prof, ps = cumulative_rounding(two_half, 3)
    assert prof.counts == (2, 3)
    assert prof.multiplicities == (2, 1)
    assert prof.achieved == F(1, 6)
    assert ps.entries == ((F(3, 10), 2), (F(7, 10), 1))


def test_two_halves_N2_exact(two_half):
    assert optimal_value(two_half, 2) == 0
    ps = exact_zero_construction(two_half, 2)
    assert ps.entries == ((F(3, 10), 1), (F(7, 10), 1))
    assert star_discrepancy_1d(two_half, ps).value == 0
    assert exact_zero_construction(two_half, 3) is None


def test_three_atoms():
    m = Measure.from_atoms([0.1, 0.5, 0.9], [F(1, 2), F(1, 3), F(1, 6)])
    # ||4/2|| = 0, ||4 * 5/6|| = 1/3
    assert optimal_value(m, 4) == F(1, 12)
    assert worst_prefix(m, 4)[:2] == (F(1, 12), 2)
    assert exact_zero_construction(m, 6).entries == ((F(1, 10), 3), (F(1, 2), 2), (F(9, 10), 1))


def test_rounding_tie_goes_up():
    m = Measure.from_atoms([0.2, 0.4, 0.6, 0.8], [F(1, 4)] * 4)
    prof, _ = cumulative_rounding(m, 2)
    # N S = 1/2, 1, 3/2, 2 round to 1, 1, 2, 2
    assert prof.counts == (1, 1, 2, 2)
    assert prof.multiplicities == (1, 0, 1, 0)
    assert prof.achieved == F(1, 4) == optimal_value(m, 2)


def test_tie_cascade_counts_monotone():
    m = Measure.from_atoms([F(i, 7) for i in range(1, 7)], [F(1, 6)] * 6)
    for N in range(1, 13):
        prof, ps = cumulative_rounding(m, N)
        assert all(a <= b for a, b in zip(prof.counts, prof.counts[1:]))
        assert ps.N == N
        assert prof.achieved == optimal_value(m, N)


def test_geometric_family():
    g = Measure.geometric()
    for N in (1, 2, 3, 4, 7, 100, 1000):
        assert optimal_value(g, N) == F(1, 2 * N)
        prof, ps = cumulative_rounding(g, N)
        assert ps.N == N
        assert prof.achieved == F(1, 2 * N)


def test_zeta_family_frozen_value():
    z = Measure.zeta(2)
    value, l, _ = worst_prefix(z, 10)
    expected = mp.mpf("0.0486082877355238089019712554535367725256020440312566174661338")
    assert abs(value - expected) < mp.mpf(10) ** -45
    assert l == 12
    prof, ps = cumulative_rounding(z, 10)
    assert ps.N == 10
    assert abs(prof.achieved - expected) < mp.mpf(10) ** -45


def test_irrational_values(golden):
    x = (mp.sqrt(5) - 1) / 2
    for N in range(1, 30):
        expected = min(N * x - mp.floor(N * x), mp.ceil(N * x) - N * x) / N
        assert abs(optimal_value(golden, N) - expected) < mp.mpf(10) ** -45


def test_domain_errors(two_half):
    for bad in (0, -1, 2.5):
        with pytest.raises(DomainError):
            optimal_value(two_half, bad)
    with pytest.raises(DomainError):
        exact_zero_construction(Measure.geometric(), 2)


@settings(max_examples=200, deadline=None)
@given(rational_measures(max_atoms=5, max_den=8), st.integers(1, 1000))
def test_rounding_achieves_optimum(m, N):
    prof, ps = cumulative_rounding(m, N)
    assert ps.N == N
    assert prof.achieved == optimal_value(m, N)
    assert optimal_value(m, N) <= F(1, 2 * N)


@settings(max_examples=60, deadline=None)
@given(rational_measures(max_atoms=3, max_den=5), st.integers(1, 5))
def test_optimum_matches_oracle(m, N):
    assert optimal_value(m, N) == brute_force_optimal(m, N)[0]


def test_zero_characterization_exhaustive():
    for n in (2, 3):
        for w in weight_tuples(n, 6):
            m = Measure.from_atoms([F(i + 1, n + 1) for i in range(n)], w)
            L = lcm_denominators(m)
            for N in range(1, 37):
                zero = optimal_value(m, N) == 0
                assert zero == (N % L == 0)
                ps = exact_zero_construction(m, N)
                assert (ps is not None) == zero
                if ps is not None:
                    assert star_discrepancy_1d(m, ps).value == 0


def test_quantile_matches_rounding_on_finite():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 6)
        nums = [rng.randint(1, 9) for _ in range(n)]
        m = Measure.from_atoms([F(i + 1, n + 1) for i in range(n)], [F(c, sum(nums)) for c in nums])
        N = rng.randint(1, 60)
        q = quantile_construction(m, N)
        assert q == cumulative_rounding(m, N)[1]


def test_quantile_real_weights():
    rng = random.Random(11)
    for _ in range(20):
        m = real_weight_measure([rng.randint(1, 50) for _ in range(rng.randint(2, 5))])
        N = rng.randint(1, 80)
        ps = quantile_construction(m, N)
        assert ps.N == N
        value = star_discrepancy_1d(m, ps).value
        assert value <= mp.mpf(1) / N
        assert abs(value - optimal_value(m, N)) < mp.mpf(10) ** -40


def test_quantile_families():
    for N in (1, 5, 33):
        ps = quantile_construction(Measure.geometric(F(1, 3)), N)
        assert ps.N == N
        assert star_discrepancy_1d(Measure.geometric(F(1, 3)), ps).value <= F(1, N)
    ps = quantile_construction(Measure.zeta(3), 20)
    assert star_discrepancy_1d(Measure.zeta(3), ps).value <= mp.mpf(1) / 20


def test_pointset_merge_is_stable():
    m = Measure.from_atoms([0.25, 0.75], [F(1, 3), F(2, 3)])
    ps = quantile_construction(m, 9)
    assert ps == PointSet(((F(1, 4), 3), (F(3, 4), 6)))
    assert star_discrepancy_1d(m, ps).value == 0
