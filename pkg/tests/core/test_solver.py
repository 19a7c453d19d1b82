# Semigame - Core Solver Tests
# Exact backward induction, optimal faces, best responses, inequalities and the value cache

import pytest
import logging
from fractions import Fraction

from semigame.distribution import Distribution
from semigame.exceptions import InputError
from semigame.graph import circulant, cycle3, directed_path, empty, random_digraph
from semigame.solver import (
    EXACT,
    FLOAT,
    GREEDY_EXACT,
    RestrictionVector,
    ValueTable,
    alpha,
    best_response_value,
    best_response_values,
    build_state_lp,
    cache_path,
    check_switch_lemma,
    greedy_rps_diagonal,
    greedy_rps_values,
    load_or_solve,
    load_value_table,
    lower_bound,
    optimal_face,
    save_value_table,
    solve_box,
    solve_lp,
    state_witness,
    states_by_level,
    uniform_lower_bound,
    value,
)
from semigame.strategies import StrategySpec, greedy_rps

logger = logging.getLogger(__name__)

THIRD = Fraction(1, 3)


class TestRestrictionVector:
    """Test suite for restriction vectors and the level order"""

    def test_basic_operations(self):
        """
        Test support, total and unit steps

        Validates:
        1. Support lists positive entries
        2. minus / plus move one unit
        3. Depleted vertices cannot be decremented
        """
        r = RestrictionVector.parse("2,0,1")
        assert r.support() == (0, 2)
        assert r.total() == 3
        assert r.minus(0).counts == (1, 0, 1)
        assert r.plus(1).counts == (2, 1, 1)
        assert r.dominated_by((2, 1, 1))
        assert not r.dominated_by((1, 1, 1))
        assert str(r) == "2,0,1"

        with pytest.raises(InputError):
            r.minus(1)

        logger.info("✅ Restriction vector test passed")

    @pytest.mark.parametrize("text", ["1,-1", "a,b", "1.5,2"])
    def test_parse_errors(self, text):
        """Negative or non-integer counts raise InputError"""
        with pytest.raises(InputError):
            RestrictionVector.parse(text)

    def test_states_by_level(self):
        """Every state of the box appears once, grouped by total"""
        levels = states_by_level((1, 2))
        assert levels[0] == [(0, 0)]
        assert levels[1] == [(0, 1), (1, 0)]
        assert levels[3] == [(1, 2)]
        assert sum(len(level) for level in levels) == 6


class TestExactValues:
    """Test suite for exact game values"""

    def test_cycle3_values(self, c3, c3_table):
        """
        Test known values on the 3-cycle

        Validates:
        1. Zero state has value 0
        2. One-option states: every round is lost, value n
        3. (1,1,1) and (1,1,0) are worth 4/3
        4. (2,1,0) is worth 17/9 and (1,2,0) is worth 19/9
        """
        assert c3_table.get((0, 0, 0)) == 0
        for n in range(1, 5):
            assert c3_table.get((n, 0, 0)) == n
            assert c3_table.get((0, 0, n)) == n

        assert c3_table.get((1, 1, 1)) == Fraction(4, 3)
        assert c3_table.get((1, 1, 0)) == Fraction(4, 3)
        assert c3_table.get((2, 1, 0)) == Fraction(17, 9)
        assert c3_table.get((1, 2, 0)) == Fraction(19, 9)
        assert value(c3, (1, 1, 1)) == Fraction(4, 3)

        logger.info("✅ Cycle values test passed")

    def test_greedy_oracle_matches_lp(self, c3_table):
        """
        Test the greedy closed-form recursion against the LP sweep

        Validates:
        1. Exact equality at every state of the (4,4,4) box
        2. Scaled numerator N(1,1,1) = 36
        """
        oracle = greedy_rps_values((4, 4, 4))
        assert len(oracle) == 125
        for state, expected in oracle.items():
            assert c3_table.get(state) == expected, f"mismatch at {state}"

        assert oracle[(1, 1, 1)] * 27 == 36
        assert oracle[(2, 1, 0)] * 27 == 51

        logger.info("✅ Greedy oracle equivalence test passed")

    def test_greedy_diagonal(self):
        """The streaming diagonal sweep matches the full greedy table"""
        diagonal = greedy_rps_diagonal([0, 1, 2, 3])
        full = greedy_rps_values((3, 3, 3))
        assert diagonal[0] == 0
        assert diagonal[1] == Fraction(4, 3)
        for n in (2, 3):
            assert diagonal[n] == full[(n, n, n)]

        with pytest.raises(InputError):
            greedy_rps_diagonal([-1])

    def test_path_identities(self, path3, path3_table):
        """
        Test the directed path 0 -> 1 -> 2

        Validates:
        1. r_2 = 0 gives value r_1
        2. value(r) = value(r - delta_0 + delta_1) - 1 whenever r_0 > 0
        3. Source-only states are worth 0
        """
        for state in path3_table.values:
            r0, r1, r2 = state
            if r2 == 0:
                assert path3_table.get(state) == r1, f"r_2 = 0 identity fails at {state}"
            if r0 > 0 and r1 < 4:
                shifted = (r0 - 1, r1 + 1, r2)
                assert path3_table.get(state) == path3_table.get(shifted) - 1, f"shift identity fails at {state}"

        assert path3_table.get((1, 0, 0)) == 0
        assert path3_table.get((0, 1, 0)) == 1

        logger.info("✅ Path identity test passed")

    def test_bounds_on_solved_boxes(self, c3_table, path3_table, circulant5_table):
        """
        Test lower_bound <= value <= total on every solved state

        Validates:
        1. Bounds hold on C3, path and circulant tables
        2. Single-vertex states equal total when the vertex has an in-neighbor, else 0
        """
        for D, table in (
            (cycle3(), c3_table),
            (directed_path(3), path3_table),
            (circulant(5, [1, 2]), circulant5_table),
        ):
            for state, v in table.values.items():
                assert lower_bound(D, state) <= v <= sum(state)
                support = [u for u, c in enumerate(state) if c]
                if len(support) == 1:
                    expected = sum(state) if D.in_neighbors(support[0]) else 0
                    assert v == expected

        logger.info("✅ Value bounds test passed")

    def test_empty_digraph_is_worth_zero(self):
        """With no arcs nobody ever scores"""
        table = solve_box(empty(2), (2, 2))
        assert set(table.values.values()) == {0}

    def test_random_digraph_bounds(self):
        """Bounds hold on a handful of random 4-vertex digraphs"""
        for seed in range(5):
            D = random_digraph(4, seed)
            table = solve_box(D, (1, 1, 1, 1))
            for state, v in table.values.items():
                assert lower_bound(D, state) <= v <= sum(state)
            assert table.check_children() == []

    def test_sweep_is_deterministic(self, c3):
        """Two sweeps of the same box give identical tables and witnesses"""
        first = solve_box(c3, (2, 2, 1))
        second = solve_box(c3, (2, 2, 1))
        assert first.values == second.values
        assert first.witnesses == second.witnesses

    def test_box_must_match_digraph(self, c3):
        """A box of the wrong length raises InputError"""
        with pytest.raises(InputError):
            solve_box(c3, (1, 1))

    def test_table_rejects_other_digraph(self, c3_table):
        """Extending a table with a different digraph raises InputError"""
        with pytest.raises(InputError):
            solve_box(directed_path(3), (1, 1, 1), table=c3_table)

    def test_float_backend(self, c3, c3_table):
        """
        Test the float monitoring backend

        Validates:
        1. Values agree with the exact table to 1e-9
        2. No exact witnesses are kept
        """
        table = solve_box(c3, (3, 3, 3), backend=FLOAT)
        assert table.backend == FLOAT
        for state, v in table.values.items():
            assert v == pytest.approx(float(c3_table.get(state)), abs=1e-9)
        assert table.witnesses == {}

        with pytest.raises(InputError):
            state_witness(c3, (1, 1, 1), table)

        logger.info("✅ Float backend test passed")

    def test_greedy_exact_backend(self, c3):
        """The greedy-exact backend fills the box on C3 only"""
        table = solve_box(c3, (2, 2, 2), backend=GREEDY_EXACT)
        assert table.get((1, 1, 1)) == Fraction(4, 3)
        assert len(table) == 27

        with pytest.raises(InputError):
            solve_box(directed_path(3), (1, 1, 1), backend=GREEDY_EXACT)
        with pytest.raises(InputError):
            solve_box(c3, (1, 1, 1), backend="symbolic")


class TestStateLP:
    """Test suite for single-state linear programs"""

    def test_single_option_state(self, c3, c3_table):
        """
        Test a forced move

        Validates:
        1. Value is 1 + child value
        2. Witness is the point mass
        """
        lp = build_state_lp(c3, (2, 0, 0), c3_table)
        result, witness = solve_lp(lp)
        assert result == 1 + c3_table.get((1, 0, 0))
        assert witness == Distribution.point_mass(3, 0)

    def test_full_support_state(self, c3, c3_table):
        """At (1,1,1) the LP returns 4/3 with the uniform witness"""
        result, witness = solve_lp(build_state_lp(c3, (1, 1, 1), c3_table))
        assert result == Fraction(4, 3)
        assert witness == Distribution([THIRD, THIRD, THIRD])

    def test_zero_payoffs(self):
        """No arcs and zero children give value 0"""
        D = empty(2)
        table = solve_box(D, (1, 1))
        result, witness = solve_lp(build_state_lp(D, (1, 1), table))
        assert result == 0
        assert sum(witness.weights) == 1

    def test_zero_state_has_no_lp(self, c3, c3_table):
        """The zero state raises InputError"""
        with pytest.raises(InputError):
            build_state_lp(c3, (0, 0, 0), c3_table)

    def test_witness_attains_value(self, c3, c3_table):
        """
        Test stored witnesses by substitution

        Validates:
        1. Every stored witness is supported on supp(r)
        2. Substituting it gives exactly the stored value with one tight row
        """
        table = c3_table
        for state, witness in table.witnesses.items():
            lp = build_state_lp(c3, state, table)
            payoffs = [
                sum((witness[u] * c for u, c in zip(lp.support, row)), Fraction(0))
                for row in lp.coefficients
            ]
            assert max(payoffs) == table.get(state)
            assert set(witness.support()) <= set(lp.support)

        logger.info("✅ Witness substitution test passed")


class TestOptimalFace:
    """Test suite for optimal faces"""

    def test_cycle3_faces_are_greedy(self, c3, c3_table):
        """
        Test faces on the 3-cycle

        Validates:
        1. Every face up to (2,2,2) is a single point
        2. The point is the greedy mixture
        """
        for state in c3_table.values:
            if not any(state) or max(state) > 2:
                continue
            face = optimal_face(c3, state, c3_table)
            assert face.is_singleton(), f"face at {state} is not a point"
            greedy = greedy_rps(state)
            for u, (lo, hi) in face.bounds.items():
                assert lo == hi == greedy[u]

        logger.info("✅ Cycle face test passed")

    def test_two_option_face(self, c3, c3_table):
        """With Paper and Rock left, Paper is played with probability 2/3"""
        face = optimal_face(c3, (2, 1, 0), c3_table)
        assert face.value == Fraction(17, 9)
        assert face.bounds == {0: (Fraction(2, 3), Fraction(2, 3)), 1: (THIRD, THIRD)}
        assert face.to_dict()["singleton"] is True

    def test_path_face(self, path3, path3_table):
        """
        Test the face at (1,1,1) on the path

        Validates:
        1. p_2 is pinned to exactly 1/2
        2. p_1 ranges over a non-degenerate interval
        3. Witness lies inside every interval
        """
        face = optimal_face(path3, (1, 1, 1), path3_table)
        assert face.bounds[2] == (Fraction(1, 2), Fraction(1, 2))
        lo, hi = face.bounds[1]
        assert lo < hi
        assert not face.is_singleton()
        for u, (low, high) in face.bounds.items():
            assert low <= face.witness[u] <= high

        logger.info("✅ Path face test passed")

    def test_path_sink_probability_is_half(self, path3, path3_table):
        """Whenever the sink and another vertex remain, every optimal mixture puts 1/2 on the sink"""
        for state in path3_table.values:
            if max(state) > 3 or state[2] == 0 or sum(1 for c in state if c) < 2:
                continue
            face = optimal_face(path3, state, path3_table)
            assert face.bounds[2] == (Fraction(1, 2), Fraction(1, 2)), f"sink not pinned at {state}"

    def test_face_needs_exact_table(self, c3):
        """A float table raises InputError"""
        table = solve_box(c3, (1, 1, 1), backend=FLOAT)
        with pytest.raises(InputError):
            optimal_face(c3, (1, 1, 1), table)


class TestBestResponse:
    """Test suite for the value of a fixed Rei strategy against a best-responding Norman"""

    def test_greedy_is_optimal_on_cycle3(self, c3, c3_table):
        """
        Test greedy play against best response

        Validates:
        1. best_response_value(greedy) equals the game value at every state
        2. (1,1,1) gives 4/3
        """
        achieved = best_response_values(c3, (4, 4, 4), StrategySpec.greedy())
        for state, v in achieved.items():
            assert v == c3_table.get(state)
        assert best_response_value(c3, (1, 1, 1), StrategySpec.greedy()) == Fraction(4, 3)

        logger.info("✅ Greedy optimality test passed")

    def test_deterministic_rei_loses_every_round(self, c3):
        """A priority (pure) strategy on C3 loses all rounds against best response"""
        spec = StrategySpec.priority([1, 0, 2])
        assert best_response_value(c3, (2, 2, 2), spec) == 6

    def test_forced_moves_on_path(self, path3):
        """Uniform play with only vertex 1 left loses every round"""
        for m in range(4):
            assert best_response_value(path3, (0, m, 0), StrategySpec.uniform()) == m

    def test_optimal_table_strategy(self, c3, c3_table):
        """Playing the stored witnesses attains the value"""
        spec = StrategySpec.optimal(c3_table)
        assert best_response_value(c3, (3, 2, 1), spec) == c3_table.get((3, 2, 1))

    def test_support_violation(self, c3):
        """A strategy that plays a depleted vertex raises InputError naming the state"""

        class AlwaysPaper:
            def realize(self, D, r):
                return Distribution.point_mass(3, 0)

        with pytest.raises(InputError) as excinfo:
            best_response_value(c3, (0, 1, 0), AlwaysPaper())
        assert "[0, 1, 0]" in str(excinfo.value)


class TestSwitchInequality:
    """Test suite for the switch cost alpha and the switch inequality"""

    def test_alpha(self, c3, path3):
        """
        Test alpha on small digraphs

        Validates:
        1. C3: alpha(2, 1) = 2
        2. Empty digraph: alpha = 0
        3. Path: alpha(0, 2) = 2, alpha(2, 0) = 0, alpha(1, 0) = 1
        4. u = v is rejected
        """
        assert alpha(c3, 2, 1) == 2
        assert alpha(empty(3), 0, 1) == 0
        assert alpha(path3, 0, 2) == 2
        assert alpha(path3, 2, 0) == 0
        assert alpha(path3, 1, 0) == 1

        with pytest.raises(InputError):
            alpha(c3, 1, 1)

        logger.info("✅ Alpha test passed")

    def test_no_violations(self, c3, path3, c3_table, path3_table):
        """
        Test the switch inequality on solved boxes

        Validates:
        1. No violations on C3 and the path with box (3,3,3)
        2. Strict comparisons were exercised
        3. Report serializes
        """
        for D, table in ((c3, c3_table), (path3, path3_table)):
            report = check_switch_lemma(D, (3, 3, 3), table)
            assert report.ok, report.violations
            assert report.checked > 0
            assert report.strict_checked > 0
            assert report.to_dict()["ok"] is True

        logger.info("✅ Switch inequality test passed")

    def test_random_digraphs(self):
        """The switch inequality holds on random 4-vertex digraphs"""
        for seed in range(5):
            D = random_digraph(4, seed)
            assert check_switch_lemma(D, (2, 1, 1, 1)).ok


class TestLowerBound:
    """Test suite for the pure-vertex lower bound"""

    def test_path_lower_bound(self, path3):
        """lower_bound(path, (2,3,4)) = max(3, 4 - 2, -3) = 3"""
        assert lower_bound(path3, (2, 3, 4)) == 3

    def test_uniform_lower_bound(self, c3, path3):
        """Eulerian digraphs give 0; the path gives n"""
        assert uniform_lower_bound(c3, 10) == 0
        assert lower_bound(c3, (10, 10, 10)) == 0
        assert uniform_lower_bound(path3, 7) == 7
        assert lower_bound(path3, (7, 7, 7)) == 7

        with pytest.raises(InputError):
            lower_bound(c3, (1, 1))


class TestValueCache:
    """Test suite for the value-table cache file"""

    def test_save_and_load(self, c3, temp_cache_dir):
        """
        Test the cache format

        Validates:
        1. Header line carries the digraph fingerprint
        2. Loaded values are exactly the saved ones
        3. Completion level is restored
        """
        table = solve_box(c3, (2, 2, 2))
        target = save_value_table(table, cache_dir=str(temp_cache_dir))

        assert target == cache_path(c3, EXACT, str(temp_cache_dir))
        assert target.read_text(encoding="utf-8").splitlines()[0] == f"semigame-cache v1 {c3.fingerprint()}"

        loaded = load_value_table(c3, target)
        assert loaded.values == table.values
        assert loaded.backend == EXACT
        assert loaded.completion_level == 6

        logger.info("✅ Cache round trip test passed")

    def test_load_or_solve_reuses_cache(self, c3, temp_cache_dir):
        """A second call extends the cached table instead of starting over"""
        first = load_or_solve(c3, (1, 1, 1), cache_dir=str(temp_cache_dir))
        assert cache_path(c3, EXACT, str(temp_cache_dir)).exists()

        second = load_or_solve(c3, (2, 1, 1), cache_dir=str(temp_cache_dir))
        assert set(first.values) <= set(second.values)
        assert second.get((2, 1, 1)) == value(c3, (2, 1, 1))

    def test_wrong_digraph_rejected(self, c3, path3, temp_cache_dir):
        """A cache file written for another digraph raises InputError"""
        target = save_value_table(solve_box(c3, (1, 1, 1)), cache_dir=str(temp_cache_dir))
        with pytest.raises(InputError):
            load_value_table(path3, target)

    def test_missing_children_rejected(self, c3, temp_cache_dir):
        """
        Test the children invariant on load

        Validates:
        1. A file missing a child of a stored state raises InputError
        """
        table = ValueTable(fingerprint=c3.fingerprint(), k=3)
        table.values[(0, 0, 0)] = Fraction(0)
        table.values[(1, 1, 0)] = Fraction(4, 3)
        target = save_value_table(table, cache_dir=str(temp_cache_dir))

        with pytest.raises(InputError):
            load_value_table(c3, target)

    def test_malformed_row_rejected(self, c3, temp_cache_dir):
        """A non-rational value cell raises InputError"""
        target = temp_cache_dir / "broken.csv"
        target.write_text(
            f"semigame-cache v1 {c3.fingerprint()}\nr_0,r_1,r_2,value\n0,0,0,zero\n",
            encoding="utf-8",
        )
        with pytest.raises(InputError):
            load_value_table(c3, target)
