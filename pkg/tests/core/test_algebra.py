# Semigame - Core Algebra Tests
# Exact kernel dimension, determinant parity and the spectral report of A_D

import math
import pytest
import logging
from fractions import Fraction

from semigame.algebra import (
    SkewMatrix,
    SpectralReport,
    det_parity,
    determinant,
    gains,
    nullspace_dimension,
    punish_gap,
    rank,
    skew_adjacency,
    spectral_report,
)
from semigame.distribution import Distribution
from semigame.exceptions import InputError
from semigame.graph import cycle3, empty, enumerate_eulerian_tournaments, enumerate_tournaments
from tests.fixtures.sample_digraphs import expected_nullities

logger = logging.getLogger(__name__)


class TestSkewMatrix:
    """Test suite for the skew adjacency matrix"""

    def test_cycle3_matrix(self, c3):
        """
        Test A_D of the 3-cycle

        Validates:
        1. Entries follow arc orientation
        2. Rank 2, kernel dimension 1
        3. Determinant 0 (odd order skew matrix)
        """
        M = skew_adjacency(c3)
        assert M.to_list() == [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
        assert rank(M) == 2
        assert nullspace_dimension(M) == 1
        assert determinant(M) == 0
        assert det_parity(M) == "even"

        logger.info("✅ Cycle matrix test passed")

    def test_matvec_is_exact(self, c3):
        """A_D times the uniform vector is zero on an Eulerian digraph"""
        M = skew_adjacency(c3)
        third = Fraction(1, 3)
        assert M.matvec([third, third, third]) == [0, 0, 0]
        assert M.matvec([1, 0, 0]) == [0, -1, 1]

        with pytest.raises(InputError):
            M.matvec([1, 0])

    @pytest.mark.parametrize("rows", [
        [[1, 0], [0, 0]],
        [[0, 1], [1, 0]],
        [[0, 2], [-2, 0]],
        [[0, 1, 0], [-1, 0]],
    ])
    def test_invalid_matrices(self, rows):
        """Nonzero diagonal, asymmetric, out-of-range and ragged rows raise InputError"""
        with pytest.raises(InputError):
            SkewMatrix(rows)

    def test_determinant_of_even_tournament(self):
        """
        Test determinant on a 4-vertex tournament

        Validates:
        1. Determinant of a skew matrix of even order is a perfect square
        2. Odd parity for a tournament
        """
        D = next(iter(enumerate_tournaments(4)))
        value = determinant(skew_adjacency(D))
        root = math.isqrt(value)
        assert root * root == value
        assert value % 2 == 1

        logger.info("✅ Even order determinant test passed")


class TestKernelDimension:
    """Test suite for exact kernel dimensions"""

    @pytest.mark.parametrize("name", list(expected_nullities()))
    def test_known_nullities(self, name):
        """Known digraphs (twins, even cycles, small tournaments) have the expected kernel dimension"""
        D, expected = expected_nullities()[name]
        assert nullspace_dimension(skew_adjacency(D)) == expected
        assert spectral_report(D).nullspace_dimension == expected

    def test_eulerian_tournaments_have_one_dimensional_kernel(self):
        """
        Test kernels of every Eulerian tournament at k = 3 and k = 5

        Validates:
        1. Kernel dimension exactly 1 (spanned by the all-ones vector)
        2. Numeric zero count agrees inside spectral_report
        """
        count = 0
        for k in (3, 5):
            for D in enumerate_eulerian_tournaments(k):
                assert nullspace_dimension(skew_adjacency(D)) == 1
                assert spectral_report(D).nullspace_dimension == 1
                count += 1
        assert count == 26

        logger.info("✅ Eulerian kernel test passed")

    def test_four_vertex_tournaments_have_odd_determinant(self):
        """Every one of the 64 tournaments on 4 vertices has odd determinant"""
        parities = [det_parity(skew_adjacency(D)) for D in enumerate_tournaments(4)]
        assert len(parities) == 64
        assert set(parities) == {"odd"}

    def test_empty_digraph(self):
        """The empty digraph has a full kernel and zero spectral gap"""
        report = spectral_report(empty(3))
        assert report.nullspace_dimension == 3
        assert report.lambda2 == 0.0
        assert report.alpha == 0.0
        assert report.det_parity is None


class TestSpectralReport:
    """Test suite for lambda_2, alpha_D and the punishment gap"""

    def test_cycle3_report(self, c3):
        """
        Test the spectral report of the 3-cycle

        Validates:
        1. lambda_2 = sqrt(3)
        2. alpha_D = sqrt(3) / 9
        3. Parity reported for tournaments
        4. JSON form round trips
        """
        report = spectral_report(c3)
        assert report.k == 3
        assert report.nullspace_dimension == 1
        assert report.lambda2 == pytest.approx(math.sqrt(3))
        assert report.alpha == pytest.approx(math.sqrt(3) / 9)
        assert report.det_parity == "even"

        restored = SpectralReport.from_dict(report.to_dict())
        assert restored.nullspace_dimension == report.nullspace_dimension
        assert restored.lambda2 == pytest.approx(report.lambda2)

        logger.info("✅ Spectral report test passed")

    def test_gains(self, c3):
        """Norman's exact gains (A_D p)_v against a two-option mixture"""
        p = Distribution([Fraction(2, 3), Fraction(1, 3), 0])
        assert gains(c3, p) == [Fraction(1, 3), Fraction(-2, 3), Fraction(1, 3)]

        with pytest.raises(InputError):
            gains(c3, [Fraction(1, 2), Fraction(1, 2)])
        with pytest.raises(InputError):
            gains(c3, [1, 1, -1])

    def test_punish_gap(self, c3):
        """
        Test the punishment inequality on the 3-cycle

        Validates:
        1. Exact best gain 1/3 against (2/3, 1/3, 0)
        2. Spectral bound alpha_D * max |p_v - 1/k| stays below it
        3. Uniform play has zero gain and zero bound
        """
        lhs, rhs = punish_gap(c3, [Fraction(2, 3), Fraction(1, 3), 0])
        assert lhs == Fraction(1, 3)
        assert rhs == pytest.approx(math.sqrt(3) / 9 / 3)
        assert float(lhs) >= rhs

        third = Fraction(1, 3)
        lhs, rhs = punish_gap(c3, [third, third, third])
        assert lhs == 0
        assert rhs == pytest.approx(0.0)

        logger.info("✅ Punishment gap test passed")

    def test_punish_gap_on_five_vertices(self, circulant5):
        """The punishment inequality holds at every point mass of circulant(5, {1, 2})"""
        alpha = spectral_report(circulant5).alpha
        for v in circulant5.vertices:
            lhs, rhs = punish_gap(circulant5, Distribution.point_mass(5, v), alpha=alpha)
            assert lhs == 1
            assert float(lhs) >= rhs

    def test_cycle3_ignores_labels(self):
        """Relabeling the 3-cycle does not change the report"""
        assert spectral_report(cycle3()).lambda2 == pytest.approx(
            spectral_report(cycle3().with_reversed([(0, 1), (1, 2), (2, 0)])).lambda2
        )
