"""
Tests for the Clifford algebra, Pin(n) and coupled Spin classes
"""
import itertools

import pytest

from pinfloer.core.exceptions import CliffordException, DimensionMismatchException, ErrorCode
from pinfloer.models.clifford import (
    ONE, ZERO, CliffordElement, CoupledSpinElement, OrthogonalMatrix, Scalar
)
from pinfloer.services.clifford import CliffordService


def e(n, i):
    return CliffordElement.basis(n, i)


def random_coupled(rng, n, m):
    p = CliffordService.random_pin_element(n, rng)
    count = rng.randint(0, 3)
    if count % 2 != p.parity:
        count += 1
    q = CliffordService.pin_from_vectors(
        [CliffordService.random_rational_unit_vector(m, rng) for _ in range(count)], dimension=m
    )
    return CoupledSpinElement.normalized(p, q)


class TestScalar:
    """Test exact arithmetic in Q(sqrt 2)"""

    def test_sqrt2_squares_to_two(self):
        """Test r2 * r2 == 2"""
        r2 = Scalar.sqrt2()
        assert r2 * r2 == Scalar.of(2)

    def test_parse_and_str(self):
        """Test literal parsing and printing agree"""
        assert Scalar.parse("1/2-r2") == Scalar(Scalar.of("1/2").a, -1)
        assert str(Scalar.parse("3+2*r2")) == "3+2*r2"
        assert str(Scalar.parse("-r2")) == "-r2"

    def test_parse_rejects_garbage(self):
        """Test unparseable literals raise ValueError"""
        with pytest.raises(ValueError):
            Scalar.parse("abc")

    def test_sign_of_mixed_value(self):
        """Test the sign of 1 - r2 is negative"""
        assert Scalar.parse("1-r2").sign() == -1
        assert Scalar.parse("-1+r2").sign() == 1


class TestCliffordMul:
    """Test the Clifford product"""

    def test_basis_vector_squares_to_one(self):
        """Test e1 * e1 = 1"""
        assert CliffordService.clifford_mul(e(2, 1), e(2, 1)) == CliffordElement.scalar(2)

    def test_distinct_basis_vectors_anticommute(self):
        """Test e1 * e2 = -(e2 * e1)"""
        assert CliffordService.clifford_mul(e(3, 1), e(3, 2)) == -CliffordService.clifford_mul(e(3, 2), e(3, 1))

    def test_unit_is_neutral(self, rng):
        """Test 1 * x = x for random x"""
        for _ in range(20):
            x = CliffordService.random_pin_element(3, rng).value
            assert CliffordService.clifford_mul(CliffordElement.scalar(3), x) == x

    def test_associative(self, rng):
        """Test (xy)z = x(yz) on random elements"""
        for _ in range(20):
            x, y, z = (CliffordService.random_pin_element(3, rng).value for _ in range(3))
            assert (x * y) * z == x * (y * z)

    def test_dimension_mismatch(self):
        """Test multiplying across algebras raises"""
        with pytest.raises(DimensionMismatchException):
            CliffordService.clifford_mul(e(2, 1), e(3, 1))


class TestPinFromVectors:
    """Test building Pin elements from unit vectors"""

    def test_empty_product_is_unit(self):
        """Test the empty product is 1 with even parity"""
        p = CliffordService.pin_from_vectors([], dimension=2)
        assert p.value == CliffordElement.scalar(2)
        assert p.parity == 0

    def test_single_vector(self):
        """Test [e1] gives e1 with odd parity"""
        p = CliffordService.pin_from_vectors([[1, 0]])
        assert p.value == e(2, 1)
        assert p.parity == 1

    def test_unit_vector_squares_to_one(self):
        """Test a diagonal unit vector squares to 1"""
        v = ["1/2*r2", "-1/2*r2"]
        p = CliffordService.pin_from_vectors([v, v])
        assert p.value == CliffordElement.scalar(2)
        assert p.is_even()

    def test_non_unit_vector_rejected_with_index(self):
        """Test the offending vector index is reported"""
        with pytest.raises(CliffordException) as excinfo:
            CliffordService.pin_from_vectors([[1, 0], [1, 1]])
        assert excinfo.value.details["index"] == 1

    def test_empty_product_needs_dimension(self):
        """Test an empty list without dimension is rejected"""
        with pytest.raises(Exception):
            CliffordService.pin_from_vectors([])


class TestPinToOrthogonal:
    """Test the covering map Pin(n) -> O(n)"""

    def test_reflection_of_e1(self):
        """Test e1 maps to diag(-1, 1)"""
        p = CliffordService.pin_from_vectors([[1, 0]])
        assert CliffordService.pin_to_orthogonal(p) == OrthogonalMatrix.from_rows([[-1, 0], [0, 1]])

    def test_transposition_lift_swaps(self):
        """Test (e1 - e2)/sqrt 2 maps to the swap matrix"""
        p = CliffordService.transposition_lift(2, 1, 2)
        assert CliffordService.pin_to_orthogonal(p) == OrthogonalMatrix.from_rows([[0, 1], [1, 0]])

    def test_product_of_basis_vectors(self):
        """Test e1 e2 maps to diag(-1, -1)"""
        p = CliffordService.pin_from_vectors([[1, 0], [0, 1]])
        assert CliffordService.pin_to_orthogonal(p) == OrthogonalMatrix.from_rows([[-1, 0], [0, -1]])

    def test_homomorphism(self, rng):
        """Test rho(pq) = rho(p) rho(q)"""
        for _ in range(50):
            n = rng.randint(1, 4)
            p, q = (CliffordService.random_pin_element(n, rng) for _ in range(2))
            assert CliffordService.pin_to_orthogonal(p * q) == \
                CliffordService.pin_to_orthogonal(p) @ CliffordService.pin_to_orthogonal(q)

    def test_double_cover_kernel(self, rng):
        """Test rho(p) = rho(q) exactly when p = +-q on 1000 random elements"""
        failures = 0
        for _ in range(1000):
            n = rng.randint(1, 4)
            p = CliffordService.random_pin_element(n, rng)
            image = CliffordService.pin_to_orthogonal(p)
            if not image.is_orthogonal() or CliffordService.pin_to_orthogonal(p.neg()) != image:
                failures += 1
            q = CliffordService.random_pin_element(n, rng)
            same_image = CliffordService.pin_to_orthogonal(q) == image
            same_up_to_sign = q.value == p.value or q.value == -p.value
            if same_image != same_up_to_sign:
                failures += 1
        assert failures == 0

    def test_kernel_on_signed_basis_group(self):
        """Test only +-1 in the signed basis group maps to the identity"""
        for n in range(1, 5):
            kernel = [
                p for p in CliffordService.signed_basis_group(n)
                if CliffordService.pin_to_orthogonal(p) == OrthogonalMatrix.identity(n)
            ]
            assert sorted(str(p.value) for p in kernel) == ["(-1)", "(1)"]


class TestSignedBasisGroup:
    """Test the finite subgroup generated by +-1 and the basis vectors"""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_order_and_closure(self, n):
        """Test 2^(n+1) elements closed under multiplication"""
        group = CliffordService.signed_basis_group(n)
        values = {p.value for p in group}
        assert len(values) == 2 ** (n + 1)
        assert all((p * q).value in values for p in group for q in group)

    def test_pin_one_table_is_klein_four(self):
        """Test the Pin(1) table is Z/2 x Z/2: every element squares to 1"""
        table = CliffordService.pin_one_table()
        assert len(table) == 16
        assert all(table[(a, a)] == "1" for a in ("1", "-1", "e1", "-e1"))
        assert table[("e1", "-1")] == "-e1"
        assert table[("-e1", "e1")] == "-1"
        assert all(table[(a, b)] == table[(b, a)] for a, b in table)

    def test_pin_one_splitting(self):
        """Test the splitting sends -1 to e1 and covers O(1)"""
        splitting = CliffordService.pin_one_splitting()
        assert splitting[1].value == CliffordElement.scalar(1)
        assert splitting[-1].value == e(1, 1)
        for sign, lift in splitting.items():
            assert CliffordService.pin_to_orthogonal(lift) == OrthogonalMatrix.from_rows([[sign]])


class TestHouseholderLift:
    """Test factoring orthogonal matrices into reflections"""

    @pytest.mark.parametrize("rows", [
        [[0, 1], [1, 0]],
        [[-1, 0], [0, 1]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        [[1, 0], [0, 1]],
    ])
    def test_lift_covers_matrix(self, rows):
        """Test rho(householder_lift(M)) = M"""
        matrix = OrthogonalMatrix.from_rows(rows)
        assert CliffordService.pin_to_orthogonal(CliffordService.householder_lift(matrix)) == matrix

    def test_non_orthogonal_rejected(self):
        """Test a non-orthogonal matrix raises NOT_ORTHOGONAL"""
        with pytest.raises(CliffordException) as excinfo:
            CliffordService.householder_lift(OrthogonalMatrix.from_rows([[1, 1], [0, 1]]))
        assert excinfo.value.error_code == ErrorCode.NOT_ORTHOGONAL


class TestCoupledSpin:
    """Test coupled Spin classes"""

    def test_units_multiply_to_unit(self):
        """Test [(1,1)] * [(1,1)] = [(1,1)]"""
        unit = CoupledSpinElement.unit(1, 1)
        assert CliffordService.coupled_mul(unit, unit) == CoupledSpinElement.unit(2, 2)

    def test_product_of_basis_classes(self):
        """Test [(e1, f1)] * [(e2, f2)] = [(e1 e2, f1 f2)]"""
        x = CoupledSpinElement.normalized(
            CliffordService.pin_from_vectors([[1]]), CliffordService.pin_from_vectors([[1]])
        )
        product = CliffordService.coupled_mul(x, x)
        e1e2 = CliffordService.pin_from_vectors([[1, 0], [0, 1]])
        assert product == CoupledSpinElement.normalized(e1e2, e1e2)

    def test_simultaneous_negation_is_same_class(self, rng):
        """Test (p, q) and (-p, -q) normalize identically"""
        for _ in range(100):
            x = random_coupled(rng, 3, 2)
            assert CoupledSpinElement.normalized(x.p.neg(), x.q.neg()) == x

    def test_odd_total_parity_rejected(self):
        """Test a pair of odd total parity is not a coupled class"""
        with pytest.raises(ValueError):
            CoupledSpinElement.normalized(
                CliffordService.pin_from_vectors([[1]]), CliffordService.pin_from_vectors([], dimension=1)
            )

    def test_commuted_product_is_same_class(self, rng):
        """Test reversing the factor order never changes the product class over 1000 trials"""
        for _ in range(1000):
            x = random_coupled(rng, rng.randint(1, 3), rng.randint(1, 3))
            y = random_coupled(rng, rng.randint(1, 3), rng.randint(1, 3))
            assert CliffordService.coupled_mul(x, y) == CliffordService.coupled_mul(x, y, commuted=True)

    def test_representative_swap_before_multiplying(self, rng):
        """Test negating both slots of a factor leaves the product unchanged"""
        for _ in range(200):
            x = random_coupled(rng, 2, 2)
            y = random_coupled(rng, 2, 3)
            swapped = CoupledSpinElement(x.n, x.m, x.p.neg(), x.q.neg())
            assert CliffordService.coupled_mul(swapped, y) == CliffordService.coupled_mul(x, y)

    def test_parity_identity(self):
        """Test (-1)^(k k') = (-1)^(l l') whenever k + l and k' + l' are even"""
        for k, l, k2, l2 in itertools.product(range(2), repeat=4):
            if (k + l) % 2 == 0 and (k2 + l2) % 2 == 0:
                assert (-1) ** (k * k2) == (-1) ** (l * l2)

    def test_associative(self, rng):
        """Test coupled_mul is associative"""
        for _ in range(50):
            x, y, z = (random_coupled(rng, 2, 2) for _ in range(3))
            left = CliffordService.coupled_mul(CliffordService.coupled_mul(x, y), z)
            right = CliffordService.coupled_mul(x, CliffordService.coupled_mul(y, z))
            assert left == right


class TestCoupledFromOrthogonal:
    """Test the canonical coupled class of an orthogonal matrix"""

    def test_identity_gives_unit(self):
        """Test the identity lifts to [(1, 1)]"""
        assert CliffordService.coupled_from_orthogonal(OrthogonalMatrix.identity(3)) == CoupledSpinElement.unit(3, 3)

    def test_reflection_gives_basis_class(self):
        """Test the reflection across e1^perp gives [(e1, e1)]"""
        e1 = CliffordService.pin_from_vectors([[1, 0]])
        matrix = CliffordService.pin_to_orthogonal(e1)
        assert CliffordService.coupled_from_orthogonal(matrix) == CoupledSpinElement.normalized(e1, e1)

    def test_independent_of_lift_sign(self):
        """Test lifting with -e1 instead of e1 gives the same class"""
        e1 = CliffordService.pin_from_vectors([[1, 0]])
        matrix = CliffordService.pin_to_orthogonal(e1)
        assert CliffordService.coupled_from_orthogonal(matrix, e1.neg()) == \
            CliffordService.coupled_from_orthogonal(matrix, e1)

    def test_wrong_lift_rejected(self):
        """Test a lift that does not cover the matrix raises"""
        e1 = CliffordService.pin_from_vectors([[1, 0]])
        with pytest.raises(CliffordException):
            CliffordService.coupled_from_orthogonal(OrthogonalMatrix.identity(2), e1)

    def test_projects_to_equal_matrices(self, rng):
        """Test the image lands in SO(n; n) as a pair of equal matrices"""
        for _ in range(50):
            p = CliffordService.random_pin_element(3, rng)
            matrix = CliffordService.pin_to_orthogonal(p)
            a, b = CliffordService.coupled_to_orthogonal(CliffordService.coupled_from_orthogonal(matrix, p))
            assert a == b == matrix
            assert a.determinant() == b.determinant()

    def test_homomorphism_on_lifts(self, rng):
        """Test [(pq, pq)] = [(p, p)] [(q, q)] under the diagonal embedding"""
        for _ in range(20):
            p, q = (CliffordService.random_pin_element(2, rng) for _ in range(2))
            product = CliffordService.coupled_from_orthogonal(
                CliffordService.pin_to_orthogonal(p * q), p * q
            )
            assert product == CoupledSpinElement.normalized(p * q, p * q)


class TestCoupledStabilize:
    """Test stabilization by unit classes"""

    def test_unit_stays_unit(self):
        """Test stabilizing the unit class gives the unit class"""
        assert CliffordService.coupled_stabilize(CoupledSpinElement.unit(2, 1), 1) == CoupledSpinElement.unit(3, 2)

    def test_stabilizations_compose(self, rng):
        """Test stabilizing by 1 then 2 equals stabilizing by 3"""
        x = random_coupled(rng, 2, 2)
        twice = CliffordService.coupled_stabilize(CliffordService.coupled_stabilize(x, 1), 2)
        assert twice == CliffordService.coupled_stabilize(x, 3)

    def test_block_diagonal_projection(self, rng):
        """Test the stabilized class projects to block sums with an identity block"""
        x = random_coupled(rng, 2, 2)
        a, b = CliffordService.coupled_to_orthogonal(x)
        sa, sb = CliffordService.coupled_to_orthogonal(CliffordService.coupled_stabilize(x, 2))
        assert sa == a.block_sum(OrthogonalMatrix.identity(2))
        assert sb == b.block_sum(OrthogonalMatrix.identity(2))

    def test_non_positive_size_rejected(self):
        """Test k = 0 is rejected"""
        with pytest.raises(Exception):
            CliffordService.coupled_stabilize(CoupledSpinElement.unit(1, 1), 0)


class TestPermutationLifts:
    """Test lifts of permutations and their cocycle"""

    def test_lift_covers_permutation_matrix(self):
        """Test every permutation of three letters is covered by its lift"""
        for sigma in itertools.permutations(range(3)):
            matrix = CliffordService.pin_to_orthogonal(CliffordService.permutation_lift(sigma))
            assert matrix.is_orthogonal()
            assert all(entry in (ZERO, ONE) for row in matrix.rows for entry in row)

    def test_cocycle_relation(self):
        """Test lift(sigma) u_ij = c lift(sigma o (i j)) with c = +-1"""
        n = 4
        for sigma in itertools.permutations(range(n)):
            for i, j in itertools.combinations(range(n), 2):
                c = CliffordService.lift_cocycle(sigma, i, j)
                swapped = list(sigma)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                left = CliffordService.permutation_lift(sigma).value * \
                    CliffordService.transposition_lift(n, i + 1, j + 1).value
                right = CliffordService.permutation_lift(swapped).value
                assert left == (right if c == 1 else -right)

    def test_cocycle_needs_distinct_positions(self):
        """Test i == j is rejected"""
        with pytest.raises(Exception):
            CliffordService.lift_cocycle((0, 1), 1, 1)

    def test_selection_sort_word_rebuilds_permutation(self):
        """Test applying the word to the identity gives sigma"""
        for sigma in itertools.permutations(range(4)):
            current = list(range(4))
            for i, j in CliffordService.selection_sort_word(sigma):
                current[i], current[j] = current[j], current[i]
            assert tuple(current) == sigma
