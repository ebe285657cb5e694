"""
Tests for sparse integer matrices, Smith normal form and chain complex homology
"""
import math

import pytest
from sympy import Matrix
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import smith_normal_form

from pinfloer.core.exceptions import ChainComplexException, DimensionMismatchException
from pinfloer.models.homology import ChainComplex, HomologyGroup, SparseIntMatrix
from pinfloer.services.homology import HomologyService


def random_matrix(rng, rows, cols, density=0.4, bound=4):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def dense_invariant_factors(dense):
    """Nonzero invariant factors from sympy's dense Smith form"""
    if not dense or not dense[0]:
        return []
    snf = smith_normal_form(DM(dense, ZZ)).to_Matrix()
    return sorted(abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0)


def integer_kernel(dense):
    """Integral basis vectors of the rational kernel, denominators cleared"""
    columns = []
    for v in Matrix(dense).nullspace():
        scale = math.lcm(*[int(x.q) for x in v])
        columns.append([int(x * scale) for x in v])
    return columns


def simplicial_circle():
    """Triangle boundary: three vertices, three edges"""
    d1 = SparseIntMatrix.from_dense([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    return ChainComplex({0: 3, 1: 3}, {1: d1})


class TestSparseIntMatrix:
    """Test the sparse matrix container"""

    def test_zeros_are_not_stored(self):
        """Test cancelling entries disappear"""
        m = SparseIntMatrix(2, 2)
        m.add(0, 1, 3)
        m.add(0, 1, -3)
        assert m.is_zero()
        assert m.nnz == 0

    def test_out_of_range_entry(self):
        """Test adding outside the shape raises IndexError"""
        with pytest.raises(IndexError):
            SparseIntMatrix(2, 2).add(2, 0, 1)

    def test_matmul_matches_dense(self, rng):
        """Test sparse products against sympy"""
        for _ in range(20):
            a, b = random_matrix(rng, 4, 5), random_matrix(rng, 5, 3)
            product = SparseIntMatrix.from_dense(a).matmul(SparseIntMatrix.from_dense(b))
            assert Matrix(product.to_dense()) == Matrix(a) * Matrix(b)

    def test_mod2_rank(self):
        """Test rank over F2 ignores even entries"""
        m = SparseIntMatrix.from_dense([[2, 0], [0, 1], [1, 1]])
        assert m.mod2_rank() == 2
        assert SparseIntMatrix.from_dense([[2, 4], [6, 8]]).mod2_rank() == 0

    def test_transpose(self):
        """Test transposing swaps the shape and entries"""
        m = SparseIntMatrix.from_dense([[1, 2, 0]])
        assert m.transpose().to_dense() == [[1], [2], [0]]


class TestSmithNormalForm:
    """Test Smith normal form against the textbook and sympy"""

    def test_textbook_example(self):
        """Test diag(2, 3) becomes diag(1, 6)"""
        form = HomologyService.smith_normal_form(SparseIntMatrix.from_dense([[2, 0], [0, 3]]))
        assert form.invariant_factors == [1, 6]
        assert form.torsion == [6]

    def test_empty_and_zero_matrices(self):
        """Test degenerate shapes have no invariant factors"""
        assert HomologyService.smith_normal_form(SparseIntMatrix(0, 3)).invariant_factors == []
        assert HomologyService.smith_normal_form(SparseIntMatrix(3, 2)).invariant_factors == []

    def test_sign_is_dropped(self):
        """Test [[0, -2]] has invariant factor 2"""
        assert HomologyService.smith_normal_form(SparseIntMatrix.from_dense([[0, -2]])).invariant_factors == [2]

    def test_divisibility_chain(self, rng):
        """Test d_i divides d_(i+1)"""
        for _ in range(50):
            factors = HomologyService.smith_normal_form(
                SparseIntMatrix.from_dense(random_matrix(rng, 6, 6, bound=9))
            ).invariant_factors
            assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
            assert all(d > 0 for d in factors)

    def test_against_sympy(self, rng):
        """Test invariant factors against sympy's dense Smith form up to 30 x 30"""
        for size in (3, 8, 15, 30):
            for _ in range(3):
                dense = random_matrix(rng, size, size + 2, density=0.15)
                ours = HomologyService.smith_normal_form(SparseIntMatrix.from_dense(dense)).invariant_factors
                assert sorted(ours) == dense_invariant_factors(dense)

    def test_rank_against_rationals(self, rng):
        """Test the SNF rank equals the rational rank"""
        for _ in range(30):
            dense = random_matrix(rng, 7, 5)
            assert HomologyService.smith_normal_form(SparseIntMatrix.from_dense(dense)).rank == Matrix(dense).rank()

    def test_tracked_transforms(self, rng):
        """Test M = U D V with unimodular U and V"""
        for _ in range(20):
            dense = random_matrix(rng, 5, 4, bound=6)
            form = HomologyService.smith_normal_form(SparseIntMatrix.from_dense(dense), track_transforms=True)
            U, V = Matrix(form.U.to_dense()), Matrix(form.V.to_dense())
            assert U * Matrix(form.D.to_dense()) * V == Matrix(dense)
            assert abs(U.det()) == 1
            assert abs(V.det()) == 1

    def test_untracked_by_default(self):
        """Test U and V are omitted unless asked for"""
        form = HomologyService.smith_normal_form(SparseIntMatrix.from_dense([[1]]), track_transforms=False)
        assert form.U is None and form.V is None


class TestHomologyOfComplex:
    """Test homology of chain complexes"""

    def test_circle(self):
        """Test H_0 = H_1 = Z for the triangle boundary"""
        summary = HomologyService.homology_of_complex(simplicial_circle())
        assert summary.rank(0) == 1
        assert summary.rank(1) == 1
        assert summary.torsion_free

    def test_projective_plane_torsion(self):
        """Test multiplication by 2 gives Z/2 in degree 0"""
        complex_ = ChainComplex({0: 1, 1: 1}, {1: SparseIntMatrix.from_dense([[2]])})
        summary = HomologyService.homology_of_complex(complex_)
        assert summary.groups[0] == HomologyGroup(0, (2,))
        assert summary.groups[1].is_zero()
        assert summary.mod2_ranks() == {0: 1, 1: 1}

    def test_mod2_reduction_matches_direct_count(self, rng):
        """Test universal coefficients agree with the F2 ranks of the boundaries"""
        for _ in range(20):
            a = random_matrix(rng, 3, 4, bound=3)
            kernel = []
            for column in integer_kernel(a):
                scale = rng.choice([1, 2])
                kernel.append([scale * x for x in column])
            if not kernel:
                continue
            d2 = SparseIntMatrix.from_dense([[column[r] for column in kernel] for r in range(4)])
            complex_ = ChainComplex({0: 3, 1: 4, 2: len(kernel)}, {1: SparseIntMatrix.from_dense(a), 2: d2})
            summary = HomologyService.homology_of_complex(complex_)
            direct = HomologyService.mod2_homology(complex_)
            assert {k: v for k, v in summary.mod2_ranks().items() if v} == direct

    def test_nonzero_square_raises_with_witness(self):
        """Test d o d != 0 is reported"""
        complex_ = ChainComplex(
            {0: 1, 1: 1, 2: 1},
            {1: SparseIntMatrix.from_dense([[1]]), 2: SparseIntMatrix.from_dense([[1]])}
        )
        with pytest.raises(ChainComplexException) as excinfo:
            HomologyService.homology_of_complex(complex_)
        assert excinfo.value.details["witness"]["degree"] == 2

    def test_wrong_shape_raises(self):
        """Test a boundary of the wrong shape is rejected"""
        complex_ = ChainComplex({0: 2, 1: 1}, {1: SparseIntMatrix.from_dense([[1]])})
        with pytest.raises(DimensionMismatchException):
            HomologyService.check_boundary_squared(complex_)

    def test_bigraded_keys(self):
        """Test blocks are keyed by (degree, block)"""
        summary = HomologyService.bigraded_homology({"a": simplicial_circle(), "b": simplicial_circle()})
        assert summary.rank((0, "a")) == 1
        assert summary.rank((1, "b")) == 1
        assert summary.total_rank == 4


class TestHomologyGroup:
    """Test homology group validation"""

    def test_torsion_must_divide(self):
        """Test a non-chain of torsion coefficients is rejected"""
        with pytest.raises(ValueError):
            HomologyGroup(0, (2, 3))

    def test_torsion_at_least_two(self):
        """Test torsion coefficient 1 is rejected"""
        with pytest.raises(ValueError):
            HomologyGroup(1, (1,))
