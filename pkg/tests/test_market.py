"""Competitive exchange economy: demands, clearing price, run behavior."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from wealthsim import (
    ConfigError,
    ContractError,
    DegenerateMarketError,
    ExperimentConfig,
    MarketParams,
    RandomStream,
    draw_preferences,
    endowment_price,
    equilibrium_price,
    execute_demands,
    run_market,
    wealth_valuation,
)

holding_arrays = hnp.arrays(
    np.float64,
    st.integers(min_value=2, max_value=40),
    elements=st.floats(min_value=1e-3, max_value=1e3),
)


def population(draw_seed: int, n: int):
    stream = RandomStream(draw_seed, "preferences")
    x = stream.uniform(0.1, 5.0, n)
    y = stream.uniform(0.1, 5.0, n)
    f = stream.uniform(0.05, 0.95, n)
    return x, y, f


def make_config(**over):
    base = dict(
        model="market",
        agents=60,
        rounds=500,
        seed=910,
        params=MarketParams(),
        snapshots=(0, 250, 500),
    )
    base.update(over)
    return ExperimentConfig(**base)


class TestDemands:
    def test_worked_example(self):
        x, y = execute_demands(np.array([2.0]), np.array([0.0]), np.array([0.25]), 2.0)
        assert x.tolist() == [0.5]
        assert y.tolist() == [0.75]

    def test_budget_preserved_exactly_in_example(self):
        # 0.5 + 2 * 0.75 == 2 + 2 * 0
        x, y = execute_demands(np.array([2.0]), np.array([0.0]), np.array([0.25]), 2.0)
        assert x[0] + 2.0 * y[0] == 2.0

    @given(
        x=st.floats(min_value=0.0, max_value=1e3),
        y=st.floats(min_value=0.0, max_value=1e3),
        f=st.floats(min_value=1e-6, max_value=1.0 - 1e-6),
        price=st.floats(min_value=1e-3, max_value=1e3),
    )
    @settings(max_examples=300, deadline=None)
    def test_budget_identity_and_split(self, x, y, f, price):
        nx, ny = execute_demands(np.array([x]), np.array([y]), np.array([f]), price)
        budget = x + price * y
        assert nx[0] + price * ny[0] == pytest.approx(budget, rel=1e-12, abs=1e-12)
        assert nx[0] == pytest.approx(f * budget, rel=1e-12, abs=1e-12)
        assert nx[0] >= 0.0 and ny[0] >= 0.0

    def test_nonpositive_price_rejected(self):
        with pytest.raises(ContractError):
            execute_demands(np.array([1.0]), np.array([1.0]), np.array([0.5]), 0.0)


class TestEquilibriumPrice:
    def test_symmetric_unit_economy_prices_at_one(self):
        n = 4
        ones = np.ones(n)
        assert equilibrium_price(ones, ones, np.full(n, 0.5)) == 1.0

    def test_formula_on_small_case(self):
        x = np.array([2.0, 1.0])
        y = np.array([1.0, 2.0])
        f = np.array([0.25, 0.75])
        assert equilibrium_price(x, y, f) == (0.75 * 2 + 0.25 * 1) / (0.25 * 1 + 0.75 * 2)

    @given(seed=st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=200, deadline=None)
    def test_market_clears_at_equilibrium_price(self, seed):
        x, y, f = population(seed, 30)
        price = equilibrium_price(x, y, f)
        nx, ny = execute_demands(x, y, f, price)
        assert float(np.sum(nx)) == pytest.approx(float(np.sum(x)), rel=1e-12)
        assert float(np.sum(ny)) == pytest.approx(float(np.sum(y)), rel=1e-12)

    def test_empty_side_raises(self):
        n = 3
        with pytest.raises(DegenerateMarketError):
            equilibrium_price(np.zeros(n), np.ones(n), np.full(n, 0.5))
        with pytest.raises(DegenerateMarketError):
            equilibrium_price(np.ones(n), np.ones(n), np.zeros(n))


class TestPreferences:
    def test_plain_draws_cover_unit_interval(self):
        f = draw_preferences(RandomStream(4, "preferences"), 50_000, None, 0.25)
        assert np.all((f > 0.0) & (f < 1.0))
        assert f.min() < 0.01 and f.max() > 0.99

    def test_damped_agents_stay_in_band(self):
        damped = np.zeros(50_000, dtype=bool)
        damped[::2] = True
        f = draw_preferences(RandomStream(4, "preferences"), 50_000, damped, 0.1)
        assert np.all(f[damped] >= 0.4) and np.all(f[damped] < 0.6)
        assert f[~damped].min() < 0.01 and f[~damped].max() > 0.99

    def test_bad_halfwidth_rejected(self):
        with pytest.raises(ConfigError):
            draw_preferences(RandomStream(4, "preferences"), 10, None, 0.7)


class TestValuation:
    @given(x=holding_arrays, price=st.floats(min_value=1e-3, max_value=1e3))
    @settings(max_examples=100, deadline=None)
    def test_valuation_linear(self, x, price):
        w = wealth_valuation(x, x, price)
        assert np.allclose(w, x * (1.0 + price), rtol=1e-12)

    def test_endowment_price_is_goods_ratio(self):
        assert endowment_price(np.array([2.0, 4.0]), np.array([1.0, 2.0])) == 2.0

    def test_endowment_price_zero_total_raises(self):
        with pytest.raises(DegenerateMarketError):
            endowment_price(np.zeros(2), np.ones(2))


class TestRunMarket:
    def test_deterministic_repeat(self):
        a = run_market(make_config())
        b = run_market(make_config())
        for sa, sb in zip(a.snapshots, b.snapshots):
            assert sa.period == sb.period and sa.price == sb.price
            assert np.array_equal(sa.x, sb.x) and np.array_equal(sa.y, sb.y)

    def test_goods_totals_conserved(self):
        result = run_market(make_config(rounds=2000, snapshots=(0, 2000)))
        first, last = result.snapshots[0], result.snapshots[-1]
        assert float(last.x.sum()) == pytest.approx(float(first.x.sum()), rel=1e-12)
        assert float(last.y.sum()) == pytest.approx(float(first.y.sum()), rel=1e-12)

    def test_initial_snapshot_uses_endowment_price(self):
        result = run_market(make_config(params=MarketParams(init_x=3.0, init_y=1.5)))
        snap0 = result.snapshots[0]
        assert snap0.price == 2.0
        assert np.all(snap0.wealth == 3.0 + 2.0 * 1.5)

    def test_damped_flags_match_fraction_and_reduce_price_swings(self):
        noisy = run_market(
            make_config(rounds=300, agents=100, snapshots=tuple(range(1, 301)))
        )
        damped = run_market(
            make_config(
                rounds=300,
                agents=100,
                snapshots=tuple(range(1, 301)),
                params=MarketParams(damped_fraction=1.0, damped_halfwidth=0.05),
            )
        )
        assert damped.damped.sum() == 100 and noisy.damped.sum() == 0
        spread = lambda res: np.std([s.price for s in res.snapshots])
        assert spread(damped) < spread(noisy)

    def test_wealth_positive_throughout(self):
        result = run_market(make_config(rounds=3000, snapshots=(3000,)))
        assert np.all(result.snapshots[-1].wealth > 0.0)

    def test_model_mismatch_rejected(self):
        cfg = make_config()
        bad = ExperimentConfig(
            model="angle",
            agents=cfg.agents,
            rounds=cfg.rounds,
            seed=cfg.seed,
            params=cfg.params,
            snapshots=cfg.snapshots,
        )
        with pytest.raises(ConfigError):
            run_market(bad)

    def test_snapshot_schedule_does_not_alter_trajectory(self):
        sparse = run_market(make_config(snapshots=(500,)))
        dense = run_market(make_config(snapshots=(0, 17, 123, 499, 500)))
        assert np.array_equal(sparse.snapshots[-1].x, dense.snapshots[-1].x)
        assert np.array_equal(sparse.snapshots[-1].y, dense.snapshots[-1].y)
