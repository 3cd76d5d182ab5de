from fractions import Fraction
from itertools import combinations

import pytest

from plutocodes import decode, sim
from plutocodes.pluto import pluto_222, pluto_333
from plutocodes.scheme import lift, named_strategy


def test_exact_small_code_matches_brute_force():
    ts = lift(pluto_222(1))
    dist = sim.exact_distribution(ts)
    # decodable subsets of each size, by direct oracle calls
    for k in range(10):
        ok = sum(decode.oracle_decodable(ts, list(S)) for S in combinations(range(9), k))
        assert dist.cdf[k] == Fraction(ok, len(list(combinations(range(9), k))))
    assert dist.cdf[7] == Fraction(1, 36)
    assert dist.cdf[8] == 1
    assert all(v == 0 for v in dist.cdf[:7])


def test_exact_three_groups():
    dist = sim.exact_distribution(lift(pluto_222(3)))
    assert dist.cdf[10] == 1 and dist.cdf[9] < 1


@pytest.mark.parametrize("checks,expected", [(1, 8), (2, 9), (3, 10)])
def test_guaranteed_threshold_2x2(checks, expected):
    assert sim.guaranteed_threshold(lift(pluto_222(checks))) == expected


def test_guaranteed_threshold_laderman():
    assert sim.guaranteed_threshold(lift(pluto_333(1))) == 25


def test_budget_guard():
    with pytest.raises(sim.BudgetExceeded):
        sim.exact_distribution(named_strategy("9x9"), budget=1000)


def test_threshold_formulas():
    r = sim.threshold_row((2, 2, 2), 7, 9, 1)
    assert (r.naive, r.epc, r.pdc, r.epc2, r.pluto) == (8, 9, 12, 13, 8)
    r = sim.threshold_row((3, 3, 3), 23, 26, 1)
    assert (r.epc, r.pdc, r.epc2) == (29, 45, 45)
    r = sim.threshold_row((2, 1, 2), 4)
    assert r.epc == r.pdc == 4


def test_trial_order_is_deterministic():
    a = sim.trial_order(50, 7, 3)
    assert (a == sim.trial_order(50, 7, 3)).all()
    assert not (a == sim.trial_order(50, 7, 4)).all()
    assert sorted(a.tolist()) == list(range(50))


def test_monte_carlo_reproducible_and_threaded():
    ts = named_strategy("9x9+53")
    a = sim.monte_carlo(ts, samples=40, seed=5)
    b = sim.monte_carlo(ts, samples=40, seed=5, threads=3)
    assert a.cdf == b.cdf and a.counts == b.counts
    assert a.cdf[-1] == 1.0


def test_peel_never_beats_oracle():
    ts = named_strategy("9x9+53")
    for t in range(30):
        order = sim.trial_order(ts.n, 1, t)
        peel = sim.recovery_count(ts, order, "peel")
        oracle = sim.recovery_count(ts, order, "oracle")
        assert peel >= oracle >= 49


def test_counts_below_rank_are_zero():
    ts = named_strategy("9x9")
    dist = sim.monte_carlo(ts, samples=30, seed=0)
    assert dist.cdf[48] == 0


def test_mc_close_to_exact():
    ts = lift(pluto_222(1))
    exact = sim.exact_distribution(ts)
    mc = sim.monte_carlo(ts, samples=2000, seed=0, decoder="oracle")
    assert max(abs(float(e) - m) for e, m in zip(exact.cdf, mc.cdf)) <= 0.03


def test_rows_and_quantile():
    dist = sim.exact_distribution(lift(pluto_222(1)))
    rows = dist.rows()
    assert rows[8] == {"k": 8, "cdf": 1.0, "mode": "exact", "scheme_label": dist.label, "decoder": "oracle"}
    assert dist.quantile(0.5) == 8
