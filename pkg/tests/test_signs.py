"""
Tests for sign assignments on directed grid rectangles
"""
import pytest

from pinfloer.core.exceptions import DimensionMismatchException, InvalidInputException
from pinfloer.models.signs import DirectedRectangle, EquationKind, SignAssignment, annulus_kind
from pinfloer.services.grid import GridService
from pinfloer.services.signs import SignService


class TestDirectedRectangle:
    """Test rectangle geometry on the torus"""

    def test_wrapping_footprint(self):
        """Test columns and rows wrap around the torus"""
        r = DirectedRectangle(4, 3, 1, 2, 0, 0)
        assert r.columns == [3, 0]
        assert r.rows == [2, 3]
        assert r.contains_cell(0, 3)
        assert not r.contains_cell(1, 3)

    def test_corners_by_direction(self):
        """Test direction 1 swaps initial and terminal corners"""
        r = DirectedRectangle(3, 0, 2, 0, 1, 0)
        assert r.initial_points() == {0: 0, 2: 1}
        assert r.terminal_points() == {0: 1, 2: 0}
        assert r.reversed().initial_points() == r.terminal_points()

    @pytest.mark.parametrize("fields", [(3, 0, 0, 0, 1, 0), (3, 0, 1, 2, 2, 0), (3, 0, 3, 0, 1, 0), (3, 0, 1, 0, 1, 2)])
    def test_invalid_rectangles(self, fields):
        """Test degenerate corners and bad directions raise ValueError"""
        with pytest.raises(ValueError):
            DirectedRectangle(*fields)

    def test_annulus_kinds(self):
        """Test width-1 and height-1 returns are recognised"""
        first = DirectedRectangle(3, 0, 1, 0, 1, 0)
        assert annulus_kind(first, DirectedRectangle(3, 0, 1, 1, 0, 0)) == EquationKind.VERTICAL_ANNULUS
        assert annulus_kind(first, DirectedRectangle(3, 1, 0, 1, 0, 0)) == EquationKind.HORIZONTAL_ANNULUS
        wide = DirectedRectangle(3, 0, 2, 0, 2, 0)
        assert annulus_kind(wide, DirectedRectangle(3, 1, 2, 0, 1, 0)) is None


class TestEnumeration:
    """Test rectangle enumeration"""

    def test_two_by_two(self):
        """Test n = 2 has 8 directed rectangles"""
        assert len(SignService.enumerate_rectangles(2)) == 8

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_count(self, n):
        """Test 2 (n (n - 1))^2 rectangles"""
        assert len(SignService.enumerate_rectangles(n)) == 2 * (n * (n - 1)) ** 2

    def test_too_small(self):
        """Test n = 1 is rejected"""
        with pytest.raises(InvalidInputException):
            SignService.enumerate_rectangles(1)


class TestConstruction:
    """Test building and verifying sign assignments"""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_construct_and_verify(self, n):
        """Test the zeros rule satisfies every equation"""
        assignment = SignService.construct_sign_assignment(n)
        assert len(assignment) == 2 * (n * (n - 1)) ** 2
        report = SignService.verify_sign_assignment(assignment)
        assert report.passed
        assert report.violation_count == 0
        assert report.equation_counts[EquationKind.HORIZONTAL_ANNULUS.value] > 0
        assert report.equation_counts[EquationKind.VERTICAL_ANNULUS.value] > 0

    def test_regions_with_one_decomposition_are_skipped(self):
        """Test composite regions without a second decomposition add no square equation"""
        for n in (3, 4, 5):
            system = SignService.build_constraints(n, 0)
            squares = [e for e in system.equations if e.kind == EquationKind.SQUARE]
            assert squares
            assert all(len(e.rectangles) == 4 for e in squares)

    def test_signed_trefoil_over_z(self, trefoil_grid):
        """Test an explicit n=5 assignment gives the trefoil tilde homology of rank 48"""
        assignment = SignService.construct_sign_assignment(5)
        summary = GridService.tilde_homology(trefoil_grid, assignment)
        assert summary.total_rank == 48
        assert summary.torsion_free

    @pytest.mark.parametrize("seed", [1, 7, 42])
    def test_seeded_rule(self, seed):
        """Test seeded gauges differ from the zeros rule yet verify"""
        seeded = SignService.construct_sign_assignment(4, "seeded", seed)
        assert SignService.verify_sign_assignment(seeded).passed
        assert seeded.signs != SignService.construct_sign_assignment(4).signs

    def test_seed_is_reproducible(self):
        """Test the same seed gives the same assignment"""
        first = SignService.construct_sign_assignment(3, "seeded", 5)
        second = SignService.construct_sign_assignment(3, "seeded", 5)
        assert first.signs == second.signs

    def test_unknown_rule(self):
        """Test an unknown free-variable rule is rejected"""
        with pytest.raises(InvalidInputException):
            SignService.construct_sign_assignment(3, "random")

    def test_annuli_raise_the_rank(self):
        """Test the annulus equations are not implied by the square equations"""
        for n in (2, 3, 4):
            for direction in (0, 1):
                with_annuli = SignService.system_rank(SignService.build_constraints(n, direction))
                without = SignService.system_rank(SignService.build_constraints(n, direction, include_annuli=False))
                assert with_annuli > without

    def test_bad_direction(self):
        """Test only directions 0 and 1 exist"""
        with pytest.raises(InvalidInputException):
            SignService.build_constraints(3, 2)


class TestVerification:
    """Test violation reporting"""

    def test_flipped_sign_is_caught(self):
        """Test flipping one rectangle violates at least one equation"""
        assignment = SignService.construct_sign_assignment(3)
        rectangle = SignService.enumerate_rectangles(3)[5]
        report = SignService.verify_sign_assignment(assignment.flipped(rectangle))
        assert not report.passed
        assert report.violation_count == len(report.violations) > 0
        assert any(rectangle.describe() in v.rectangles for v in report.violations)

    def test_wrong_rectangle_count(self):
        """Test a partial assignment is a dimension mismatch"""
        assignment = SignService.construct_sign_assignment(2)
        partial = SignAssignment(2, dict(list(assignment.signs.items())[:-1]))
        with pytest.raises(DimensionMismatchException):
            SignService.verify_sign_assignment(partial)

    def test_effective_sign_is_unit(self):
        """Test S(r) times the lift cocycle is +-1"""
        assignment = SignService.default_assignment(3)
        for rectangle in SignService.enumerate_rectangles(3)[:20]:
            assert SignService.effective_sign(assignment, rectangle, (0, 1, 2)) in (1, -1)


class TestGaugeIndependence:
    """Test different gauges give isomorphic homology"""

    def test_ten_diagrams(self, rng):
        """Test seeded and zeros assignments agree on bigraded tilde homology"""
        for trial in range(10):
            n = 3 + trial % 2
            G = GridService.random_grid(n, rng)
            reference = GridService.tilde_homology(G)
            gauged = GridService.tilde_homology(G, SignService.construct_sign_assignment(n, "seeded", 100 + trial))
            assert gauged.nonzero() == reference.nonzero()
