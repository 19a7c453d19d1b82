# Semigame - Core Simulation Tests
# Seeded game play, Monte Carlo summaries, depletion times, geometric tails and scaling fits

import math
import pytest
import logging
from fractions import Fraction

import numpy as np

from semigame.exceptions import InputError, InternalConsistencyError
from semigame.graph import cycle3
from semigame.simulate import (
    ExperimentConfig,
    PlayRecord,
    choose_vertex,
    depletion_game_scores,
    depletion_stats,
    exact_geometric_tail,
    geometric_tail,
    monte_carlo,
    play_game,
    scaling_fit,
    scaling_table,
    uniform_upper_bound_experiment,
)
from semigame.solver import best_response_value, greedy_rps_values
from semigame.strategies import StrategySpec
from semigame.utilities.seed_utils import derive_seed

logger = logging.getLogger(__name__)


class TestPlayGame:
    """Test suite for single seeded games"""

    def test_transcript_is_legal(self, c3):
        """
        Test a greedy game against best response

        Validates:
        1. total(r0) rounds with the restriction respected
        2. Deltas follow arc orientation
        3. Same seed gives the same transcript
        """
        record = play_game(c3, (2, 2, 2), StrategySpec.greedy(), StrategySpec.best_response(), seed=7, check=True)
        assert len(record.rounds) == 6
        record.validate(c3)

        again = play_game(c3, (2, 2, 2), StrategySpec.greedy(), StrategySpec.best_response(), seed=7)
        assert again.to_dict() == record.to_dict()

        logger.info("✅ Transcript test passed")

    def test_deterministic_strategies(self, c3):
        """
        Test fully deterministic play

        Validates:
        1. Priority Rei against best response loses every round
        2. Priority Rei against a fixed Norman: +2 on Rock, 0 on Paper, -2 on Scissors
        """
        rei = StrategySpec.priority([1, 0, 2])
        record = play_game(c3, (2, 2, 2), rei, StrategySpec.best_response(), seed=0)
        assert record.final_score == 6

        record = play_game(c3, (2, 2, 2), rei, StrategySpec.fixed_vertex(0), seed=0)
        assert [rnd[0] for rnd in record.rounds] == [1, 1, 0, 0, 2, 2]
        assert record.final_score == 0

    def test_tampered_transcript(self, c3):
        """validate rejects a transcript whose score or moves were altered"""
        record = play_game(c3, (1, 1, 1), StrategySpec.uniform(), StrategySpec.best_response(), seed=3)
        record.final_score += 1
        with pytest.raises(InternalConsistencyError):
            record.validate(c3)

        short = PlayRecord(r0=(1, 1, 1), seed=3, rounds=list(record.rounds[:2]))
        with pytest.raises(InternalConsistencyError):
            short.validate(c3)

    def test_state_mismatch(self, c3):
        """A restriction vector of the wrong length raises InputError"""
        with pytest.raises(InputError):
            play_game(c3, (1, 1), StrategySpec.greedy(), StrategySpec.best_response(), seed=0)

    def test_choose_vertex(self):
        """Inverse-CDF sampling skips zero-weight vertices"""
        cumulative = np.cumsum([0.5, 0.0, 0.5])
        assert choose_vertex(cumulative, 0.0) == 0
        assert choose_vertex(cumulative, 0.5) == 2
        assert choose_vertex(cumulative, 0.999) == 2


class TestMonteCarlo:
    """Test suite for repeated seeded games"""

    def test_reproducible(self, c3):
        """
        Test seed handling

        Validates:
        1. Same seed gives identical summaries
        2. One and two workers agree exactly
        """
        args = (c3, (2, 2, 2), StrategySpec.uniform(), StrategySpec.best_response())
        first = monte_carlo(*args, reps=40, seed=11)
        second = monte_carlo(*args, reps=40, seed=11)
        parallel = monte_carlo(*args, reps=40, seed=11, workers=2)

        assert first == second
        assert first == parallel

        logger.info("✅ Monte Carlo reproducibility test passed")

    def test_mean_matches_exact_value(self, c3):
        """Greedy against best response from (3,3,3) averages the exact value within 4 standard errors"""
        exact = float(greedy_rps_values((3, 3, 3))[(3, 3, 3)])
        summary = monte_carlo(c3, (3, 3, 3), StrategySpec.greedy(), StrategySpec.best_response(), reps=2000, seed=5)
        assert summary.reps == 2000
        assert summary.within(exact, 4)

    def test_uniform_mean_matches_best_response_value(self, path3):
        """Uniform play on the path: Monte Carlo agrees with the exact best-response value"""
        rei = StrategySpec.uniform()
        exact = float(best_response_value(path3, (2, 2, 2), rei))
        summary = monte_carlo(path3, (2, 2, 2), rei, StrategySpec.best_response(), reps=2000, seed=9)
        assert summary.within(exact, 4)

    def test_invalid_reps(self, c3):
        """reps must be positive"""
        with pytest.raises(InputError):
            monte_carlo(c3, (1, 1, 1), StrategySpec.greedy(), StrategySpec.best_response(), reps=0, seed=0)


class TestDepletionExperiments:
    """Test suite for the uniform-until-depletion experiments"""

    def test_fast_path_matches_play_game(self, c3, path3):
        """
        Test the vectorized depletion game

        Validates:
        1. Every rep reproduces play_game with the same derived seed
        """
        for D in (c3, path3):
            scores = depletion_game_scores(D, 3, reps=6, seed=21)
            for i, score in enumerate(scores):
                record = play_game(
                    D,
                    (3,) * D.k,
                    StrategySpec.uniform(),
                    StrategySpec.best_response(),
                    seed=derive_seed(21, "rep", i),
                )
                assert record.final_score == score

        logger.info("✅ Depletion fast path test passed")

    def test_upper_bound_experiment(self, c3):
        """
        Test the experiment table on the 3-cycle

        Validates:
        1. One row per n with the documented columns
        2. Lower bound 0 for an Eulerian digraph
        3. First ratio is undefined
        """
        frame = uniform_upper_bound_experiment(c3, [1, 2, 4], reps=50, seed=0)
        assert list(frame.columns) == [
            "n", "mean_score", "stderr", "lower_bound", "excess", "excess_over_sqrt_n", "ratio",
        ]
        assert list(frame["n"]) == [1, 2, 4]
        assert set(frame["lower_bound"]) == {0}
        assert math.isnan(frame["ratio"].iloc[0])

    def test_depletion_stats(self):
        """
        Test kn - T

        Validates:
        1. n = 1: the first draw depletes, so kn - T = k - 1 exactly
        2. Mean stays inside the pigeonhole range
        3. k = 1 is rejected
        """
        summary = depletion_stats(2, 1, reps=10, seed=0)
        assert summary.mean == 1.0
        assert summary.stderr == 0.0

        summary = depletion_stats(3, 5, reps=200, seed=1)
        # T lies in [n, k(n-1)+1]
        assert 3 * 5 - (3 * 4 + 1) <= summary.mean <= 3 * 5 - 5

        with pytest.raises(InputError):
            depletion_stats(1, 5, reps=10, seed=0)
        with pytest.raises(InputError):
            depletion_stats(3, 0, reps=10, seed=0)


class TestGeometricTail:
    """Test suite for the truncated geometric tail"""

    def test_exact_small_cases(self):
        """
        Test the exact summation

        Validates:
        1. N = 1, p = 1/2 gives 1/2
        2. p = 1 gives 0
        3. Result is an exact Fraction
        """
        assert exact_geometric_tail(Fraction(1, 2), 1) == Fraction(1, 2)
        assert exact_geometric_tail("1/2", 1) == Fraction(1, 2)
        assert exact_geometric_tail(1, 3) == 0
        assert isinstance(exact_geometric_tail(Fraction(1, 3), 4), Fraction)

    def test_estimate_matches_exact(self):
        """The Monte Carlo estimate agrees with exact summation within 4 standard errors"""
        exact = float(exact_geometric_tail(Fraction(1, 2), 4))
        estimate = geometric_tail(Fraction(1, 2), 4, reps=20000, seed=0)
        assert abs(estimate.estimate - exact) <= 4 * estimate.stderr + 1e-12
        assert estimate.normalized == pytest.approx(estimate.estimate / (math.sqrt(4) * 2))

        logger.info("✅ Geometric tail test passed")

    @pytest.mark.parametrize("p,N", [(0, 1), ("3/2", 1), ("1/2", 0)])
    def test_invalid_parameters(self, p, N):
        """p must lie in (0, 1] and N must be positive"""
        with pytest.raises(InputError):
            exact_geometric_tail(p, N)


class TestScalingFit:
    """Test suite for log-log scaling fits"""

    def test_square_root_data(self):
        """
        Test a fit on exact square-root data

        Validates:
        1. Slope 1/2
        2. Intercept log 2
        3. c_hat = 2
        """
        fit = scaling_fit([(n, 2 * math.sqrt(n)) for n in (4, 16, 64, 256)])
        assert fit.slope == pytest.approx(0.5)
        assert fit.intercept == pytest.approx(math.log(2))
        assert fit.c_hat == pytest.approx(2.0)
        assert fit.to_dict()["samples"][0] == [4, pytest.approx(4.0)]

    def test_greedy_diagonal_grows_like_sqrt(self):
        """Exact greedy values S(n,n,n) give a positive slope and constant"""
        values = greedy_rps_values((8, 8, 8))
        fit = scaling_fit([(n, values[(n, n, n)]) for n in range(2, 9)])
        assert fit.slope > 0
        assert fit.c_hat > 0

    def test_invalid_samples(self):
        """Fewer than three points or non-positive values raise InputError"""
        with pytest.raises(InputError):
            scaling_fit([(1, 1.0), (2, 1.4)])
        with pytest.raises(InputError):
            scaling_fit([(1, 1.0), (2, 0.0), (3, 1.7)])

    def test_scaling_table(self):
        """Exact values keep their num/den form, floats leave it empty"""
        frame = scaling_table({4: 2.5, 1: Fraction(4, 3)})
        assert list(frame["n"]) == [1, 4]
        assert list(frame["S_n"]) == ["4/3", ""]
        assert frame["S_n_over_sqrt_n"].iloc[1] == pytest.approx(1.25)


class TestExperimentConfig:
    """Test suite for experiment JSON"""

    def test_round_trip(self):
        """from_dict / to_dict preserve the run description and resolve the digraph"""
        payload = {
            "graph": "cycle3",
            "r0": [2, 2, 2],
            "rei": StrategySpec.greedy().to_dict(),
            "norman": StrategySpec.best_response().to_dict(),
            "reps": 10,
            "seed": 4,
        }
        config = ExperimentConfig.from_dict(payload)
        assert config.to_dict() == payload
        assert config.digraph() == cycle3()

    def test_missing_field(self):
        """A missing key raises InputError"""
        with pytest.raises(InputError):
            ExperimentConfig.from_dict({"graph": "cycle3", "r0": [1, 1, 1]})
