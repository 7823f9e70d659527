"""Oracle routes: closed forms, grid argmax, seeded wealth simulation."""

import math

import numpy as np
import pytest

from conftest import random_game, random_two_point
from growthprice import (
    DomainError,
    Game,
    TwoPointGame,
    compute_stats,
    grid_argmax_growth,
    pre_optimal_proportion,
    simulate_wealth,
    translate,
    two_point_closed_form,
)


class TestTwoPointGame:
    def test_expectation_and_game_match(self):
        tp = TwoPointGame(high=19.0, low=1.0, p_high=0.5)
        assert tp.expectation == 10.0
        assert tp.to_game() == Game.from_pairs([(19.0, 0.5), (1.0, 0.5)])

    def test_bad_parameters_rejected(self):
        with pytest.raises(DomainError):
            TwoPointGame(high=1.0, low=2.0, p_high=0.5)
        with pytest.raises(DomainError):
            TwoPointGame(high=2.0, low=-1.0, p_high=0.5)
        with pytest.raises(DomainError):
            TwoPointGame(high=2.0, low=1.0, p_high=1.0)


class TestClosedForm:
    def test_quoted_values_at_u5(self):
        tp = TwoPointGame(high=19.0, low=1.0, p_high=0.5)
        proportion, growth = two_point_closed_form(tp, 5.0)
        assert math.isclose(proportion, 25.0 / 56.0, rel_tol=1e-12)
        assert math.isclose(growth, 9.0 / math.sqrt(56.0), rel_tol=1e-12)

    def test_proportion_is_one_at_fair_price(self):
        tp = TwoPointGame(high=19.0, low=1.0, p_high=0.5)
        proportion, _ = two_point_closed_form(tp, 1.9)
        assert abs(proportion - 1.0) <= 1e-12

    def test_growth_ignores_shift_exactly(self):
        tp = TwoPointGame(high=19.0, low=1.0, p_high=0.5)
        _, growth_zero = two_point_closed_form(tp, 5.0, 0.0)
        _, growth_fifty = two_point_closed_form(tp, 5.0, 50.0)
        assert growth_zero == growth_fifty

    def test_domain_errors(self):
        tp = TwoPointGame(high=19.0, low=1.0, p_high=0.5)
        with pytest.raises(DomainError):
            two_point_closed_form(tp, 0.5)
        with pytest.raises(DomainError):
            two_point_closed_form(tp, 12.0)
        with pytest.raises(DomainError):
            two_point_closed_form(tp, 5.0, -1.0)


class TestGridArgmax:
    def test_matches_closed_form_root(self, two_point):
        u = 7.2236
        expected = (10.0 - u) * u / ((19.0 - u) * (u - 1.0))
        got = grid_argmax_growth(two_point, u, 1_000_000)
        step = 1.0 / 1_000_001
        assert abs(got - expected) <= step + 1e-12

    def test_argmax_near_zero_close_to_expectation(self, two_point):
        u = 9.99
        expected = (10.0 - u) * u / ((19.0 - u) * (u - 1.0))
        got = grid_argmax_growth(two_point, u, 1_000_000)
        step = 1.0 / 1_000_001
        assert got < 0.01
        assert abs(got - expected) <= step + 1e-12

    def test_argmax_just_below_cap_near_fair_price(self, two_point):
        u = 1.91
        expected = (10.0 - u) * u / ((19.0 - u) * (u - 1.0))
        got = grid_argmax_growth(two_point, u, 1_000_000)
        step = 1.0 / 1_000_001
        assert expected < 1.0
        assert abs(got - expected) <= step + 1e-12

    def test_within_one_step_of_solver_root_on_random_games(self):
        rng = np.random.default_rng(808)
        grid_points = 100_000
        for _ in range(20):
            game = random_game(rng)
            stats = compute_stats(game)
            u = stats.fair_price + float(rng.uniform(0.05, 0.95)) * (
                stats.expectation - stats.fair_price
            )
            root = pre_optimal_proportion(game, u).proportion
            got = grid_argmax_growth(game, u, grid_points)
            cap = min(1.0, (1.0 - 1e-9) * u / (u - stats.ess_inf))
            step = cap / (grid_points + 1)
            assert abs(got - root) <= step + 1e-12

    def test_domain_errors(self, two_point):
        with pytest.raises(DomainError):
            grid_argmax_growth(two_point, 7.0, 0)
        with pytest.raises(DomainError):
            grid_argmax_growth(two_point, 1.5, 100)
        with pytest.raises(DomainError):
            grid_argmax_growth(two_point, 10.5, 100)


class TestSimulateWealth:
    def test_zero_proportion_exact(self, two_point):
        result = simulate_wealth(two_point, 7.0, 0.0, periods=100, paths=10, seed=5)
        assert result.mean_log_growth == 0.0
        assert result.std_error == 0.0

    def test_same_seed_bit_identical(self, two_point):
        a = simulate_wealth(two_point, 7.0, 0.25, periods=200, paths=20, seed=99)
        b = simulate_wealth(two_point, 7.0, 0.25, periods=200, paths=20, seed=99)
        assert a == b

    def test_different_seeds_differ(self, two_point):
        a = simulate_wealth(two_point, 7.0, 0.25, periods=200, paths=20, seed=1)
        b = simulate_wealth(two_point, 7.0, 0.25, periods=200, paths=20, seed=2)
        assert a.mean_log_growth != b.mean_log_growth

    def test_mean_tracks_analytic_growth_across_seeds(self, two_point):
        # the sample mean should land within 3 standard errors almost always
        u = 7.2236
        root = pre_optimal_proportion(two_point, u)
        target = math.log(root.growth)
        hits = 0
        trials = 40
        for seed in range(trials):
            sim = simulate_wealth(two_point, u, root.proportion, periods=50, paths=40, seed=seed)
            if abs(sim.mean_log_growth - target) <= 3.0 * sim.std_error:
                hits += 1
        assert hits >= math.ceil(0.95 * trials)

    def test_mean_matches_weighted_log_factors(self, two_point):
        # long-run mean must sit near the exact weighted mean of log factors
        u, t = 5.0, 0.25
        exact = math.fsum(
            o.weight * math.log1p(t * (o.payout - u) / u) for o in two_point.outcomes
        )
        sim = simulate_wealth(two_point, u, t, periods=500, paths=100, seed=31)
        assert abs(sim.mean_log_growth - exact) <= 4.0 * sim.std_error

    def test_domain_errors(self, two_point):
        with pytest.raises(DomainError):
            simulate_wealth(two_point, 0.0, 0.5, periods=10, paths=10, seed=0)
        with pytest.raises(DomainError):
            simulate_wealth(two_point, 7.0, 1.5, periods=10, paths=10, seed=0)
        with pytest.raises(DomainError):
            simulate_wealth(two_point, 7.0, -0.1, periods=10, paths=10, seed=0)
        with pytest.raises(DomainError):
            simulate_wealth(two_point, 7.0, 0.5, periods=0, paths=10, seed=0)

    def test_full_investment_above_all_payouts_is_admissible(self, two_point):
        # u above the largest payout still gives positive wealth factors
        result = simulate_wealth(two_point, 19.5, 1.0, periods=50, paths=10, seed=0)
        assert math.isfinite(result.mean_log_growth)
        assert result.mean_log_growth < 0.0


class TestOracleAgainstSolver:
    def test_closed_form_tracks_solver_everywhere(self):
        rng = np.random.default_rng(909)
        for _ in range(100):
            tp = random_two_point(rng)
            game = tp.to_game()
            u = tp.low + float(rng.uniform(0.05, 0.95)) * (tp.expectation - tp.low)
            n = float(rng.uniform(-tp.low + 1e-3, 50.0))
            shifted = pre_optimal_proportion(translate(game, n), u + n)
            t_cf, g_cf = two_point_closed_form(tp, u, n)
            assert abs(shifted.proportion - t_cf) <= 1e-9 * t_cf
            assert abs(shifted.growth - g_cf) <= 1e-9 * g_cf
