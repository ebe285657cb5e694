"""
Clifford algebra, Pin(n) and coupled Spin service
"""
import logging
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pinfloer.core.exceptions import (
    CliffordException, DimensionMismatchException, ErrorCode, InvalidInputException
)
from pinfloer.models.clifford import (
    ONE, ZERO, CliffordElement, CoupledSpinElement, Number, OrthogonalMatrix,
    PinElement, Scalar, Vector, as_vector, dot
)

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]
Transposition = Tuple[int, int]

INV_SQRT2 = Scalar(0, Fraction(1, 2))


def _unit(n: int, index: int) -> Vector:
    return tuple(ONE if i == index else ZERO for i in range(n))


def _reflection(v: Sequence[Scalar]) -> OrthogonalMatrix:
    """R_v = I - 2 v v^T for a unit vector v"""
    n = len(v)
    return OrthogonalMatrix(tuple(
        tuple((ONE if i == j else ZERO) - 2 * v[i] * v[j] for j in range(n)) for i in range(n)
    ))


class CliffordService:
    """Service class for Clifford algebra and Pin group operations"""

    @staticmethod
    def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
        """
        Multiply two Clifford elements

        Args:
            a: left factor
            b: right factor

        Returns:
            CliffordElement: the product a*b

        Raises:
            DimensionMismatchException: If the algebras differ
        """
        if a.dimension != b.dimension:
            raise DimensionMismatchException(a.dimension, b.dimension, "Clifford dimension")
        return a * b

    @staticmethod
    def pin_from_vectors(vectors: Sequence[Sequence[Union[Number, str]]],
                         dimension: Optional[int] = None) -> PinElement:
        """
        Build the Pin element v_1 v_2 ... v_k from unit vectors

        Args:
            vectors: unit vectors with entries in Q(sqrt 2)
            dimension: ambient dimension, required when vectors is empty

        Returns:
            PinElement: product with parity k mod 2 and the vectors as provenance

        Raises:
            CliffordException: If a vector does not have squared norm 1
            DimensionMismatchException: If vectors have different lengths
        """
        parsed = [as_vector(v) for v in vectors]
        if dimension is None:
            if not parsed:
                raise InvalidInputException("dimension is required for an empty product")
            dimension = len(parsed[0])
        value = CliffordElement.scalar(dimension)
        for index, v in enumerate(parsed):
            if len(v) != dimension:
                raise DimensionMismatchException(dimension, len(v), f"vector {index} length")
            norm = dot(v, v)
            if norm != ONE:
                logger.error(f"Vector {index} is not a unit vector", extra={"norm": str(norm)})
                raise CliffordException(
                    f"vector {index} has squared norm {norm}, expected 1",
                    details={"index": index, "norm": str(norm)}
                )
            value = value * CliffordElement.from_vector(v)
        return PinElement(value, len(parsed) % 2, tuple(parsed))

    @staticmethod
    def pin_to_orthogonal(p: PinElement) -> OrthogonalMatrix:
        """Compose the reflections across v_i^perp in provenance order."""
        matrix = OrthogonalMatrix.identity(p.dimension)
        for v in p.provenance:
            matrix = matrix @ _reflection(v)
        return matrix

    @staticmethod
    def householder_lift(matrix: OrthogonalMatrix) -> PinElement:
        """
        Factor an orthogonal matrix into reflections and return the Pin lift

        Args:
            matrix: orthogonal matrix with entries in Q(sqrt 2)

        Returns:
            PinElement: p with pin_to_orthogonal(p) == matrix

        Raises:
            CliffordException: If the matrix is not orthogonal or a reflection
                vector needs a square root outside Q(sqrt 2)
        """
        if not matrix.is_orthogonal():
            raise CliffordException("matrix is not orthogonal", error_code=ErrorCode.NOT_ORTHOGONAL)
        n = matrix.size
        work = matrix
        factors: List[Vector] = []
        for i in range(n):
            e_i = _unit(n, i)
            w = tuple(x - y for x, y in zip(work.column(i), e_i))
            if all(c.is_zero() for c in w):
                continue
            root = dot(w, w).sqrt()
            if root is None:
                raise CliffordException(
                    f"reflection vector for column {i} has no exact normalization",
                    error_code=ErrorCode.NO_EXACT_LIFT,
                    details={"column": i, "squared_norm": str(dot(w, w))}
                )
            u = tuple(c / root for c in w)
            work = _reflection(u) @ work
            factors.append(u)
        return CliffordService.pin_from_vectors(factors, dimension=n)

    @staticmethod
    def coupled_mul(x: CoupledSpinElement, y: CoupledSpinElement,
                    commuted: bool = False) -> CoupledSpinElement:
        """
        Multiply coupled Spin classes under the block embeddings

        Args:
            x: class in Spin(n; m)
            y: class in Spin(n'; m')
            commuted: multiply the embedded factors in the opposite order

        Returns:
            CoupledSpinElement: class in Spin(n + n'; m + m')
        """
        n, m = x.n + y.n, x.m + y.m
        xp, yp = x.p.embed(0, n), y.p.embed(x.n, n)
        xq, yq = x.q.embed(0, m), y.q.embed(x.m, m)
        if commuted:
            return CoupledSpinElement.normalized(yp * xp, yq * xq)
        return CoupledSpinElement.normalized(xp * yp, xq * yq)

    @staticmethod
    def coupled_from_orthogonal(matrix: OrthogonalMatrix,
                                lift: Optional[PinElement] = None) -> CoupledSpinElement:
        """
        Canonical coupled Spin class [(p, p)] of an orthogonal matrix

        Args:
            matrix: orthogonal matrix
            lift: optional Pin lift of matrix; computed by Householder factorization otherwise

        Returns:
            CoupledSpinElement: class in Spin(n; n)

        Raises:
            CliffordException: If the matrix is not orthogonal or the lift does not cover it
        """
        if not matrix.is_orthogonal():
            raise CliffordException("matrix is not orthogonal", error_code=ErrorCode.NOT_ORTHOGONAL)
        if lift is None:
            lift = CliffordService.householder_lift(matrix)
        elif CliffordService.pin_to_orthogonal(lift) != matrix:
            raise CliffordException(
                "supplied lift does not cover the matrix",
                error_code=ErrorCode.NOT_ORTHOGONAL,
                details={"dimension": matrix.size}
            )
        return CoupledSpinElement.normalized(lift, lift)

    @staticmethod
    def coupled_stabilize(x: CoupledSpinElement, k: int) -> CoupledSpinElement:
        """Stabilize by the unit class of Spin(k; k)."""
        if k < 1:
            raise InvalidInputException(f"stabilization size must be positive, got {k}")
        return CliffordService.coupled_mul(x, CoupledSpinElement.unit(k, k))

    @staticmethod
    def coupled_to_orthogonal(x: CoupledSpinElement) -> Tuple[OrthogonalMatrix, OrthogonalMatrix]:
        """Project to SO(n; m); both matrices have equal determinant."""
        a = CliffordService.pin_to_orthogonal(x.p)
        b = CliffordService.pin_to_orthogonal(x.q)
        if a.determinant() != b.determinant():
            raise CliffordException(
                "coupled pair projects to matrices of different determinant",
                error_code=ErrorCode.NOT_ORTHOGONAL
            )
        return a, b

    @staticmethod
    def signed_basis_group(n: int) -> List[PinElement]:
        """The 2^(n+1) elements +-e_A of Pin(n)"""
        elements: List[PinElement] = []
        for mask in range(1 << n):
            blade = [i for i in range(n) if mask >> i & 1]
            p = CliffordService.pin_from_vectors([_unit(n, i) for i in blade], dimension=n)
            elements.extend([p, p.neg()])
        elements.sort(key=lambda e: (len(e.value.terms[0][0]), e.value.terms[0][0],
                                     e.value.terms[0][1].sign()))
        return elements

    @staticmethod
    def pin_one_table() -> Dict[Tuple[str, str], str]:
        """Multiplication table of Pin(1) = {1, -1, e1, -e1}"""
        one = CliffordService.pin_from_vectors([], dimension=1)
        e1 = CliffordService.pin_from_vectors([[1]])
        named = {"1": one, "-1": one.neg(), "e1": e1, "-e1": e1.neg()}
        by_value = {p.value: name for name, p in named.items()}
        return {(a, b): by_value[(named[a] * named[b]).value] for a in named for b in named}

    @staticmethod
    def pin_one_splitting() -> Dict[int, PinElement]:
        """Splitting O(1) -> Pin(1) fixed as 1 -> 1, -1 -> e1"""
        return {
            1: CliffordService.pin_from_vectors([], dimension=1),
            -1: CliffordService.pin_from_vectors([[1]]),
        }

    @staticmethod
    def transposition_lift(n: int, i: int, j: int) -> PinElement:
        """(e_i - e_j)/sqrt 2 for 1 <= i < j <= n"""
        if not 1 <= i < j <= n:
            raise InvalidInputException(f"transposition ({i} {j}) is not ordered inside 1..{n}")
        v = tuple(INV_SQRT2 if k == i - 1 else (-INV_SQRT2 if k == j - 1 else ZERO) for k in range(n))
        return PinElement(CliffordElement.from_vector(v), 1, (v,))

    @staticmethod
    def selection_sort_word(sigma: Sequence[int]) -> List[Transposition]:
        """
        Transpositions t_1 ... t_k (0-indexed positions) with sigma = id o t_1 o ... o t_k

        Each t swaps two positions of the current arrangement, so applying the word
        left to right to the identity tuple produces sigma.
        """
        current = list(range(len(sigma)))
        where = {value: index for index, value in enumerate(current)}
        word: List[Transposition] = []
        for i, target in enumerate(sigma):
            j = where[target]
            if j == i:
                continue
            current[i], current[j] = current[j], current[i]
            where[current[i]], where[current[j]] = i, j
            word.append((i, j))
        return word

    @staticmethod
    def permutation_lift(sigma: Sequence[int]) -> PinElement:
        """Product of transposition lifts along the selection-sort word of sigma"""
        return _permutation_lift(tuple(sigma))

    @staticmethod
    def lift_cocycle(sigma: Sequence[int], i: int, j: int) -> int:
        """
        Sign c with lift(sigma) * u_ij = c * lift(sigma o (i j))

        Args:
            sigma: permutation of 0..n-1 as a tuple of images
            i, j: distinct 0-indexed positions

        Returns:
            int: +1 or -1
        """
        if i == j:
            raise InvalidInputException("lift_cocycle needs two distinct positions")
        return _lift_cocycle(tuple(sigma), min(i, j), max(i, j))

    @staticmethod
    def lift_commutation_sign(n: int, first: Sequence[Transposition],
                              second: Sequence[Transposition]) -> int:
        """Sign relating the Clifford products of two transposition words with equal permutation"""
        return _word_sign(n, tuple(tuple(sorted(t)) for t in first), tuple(tuple(sorted(t)) for t in second))

    @staticmethod
    def random_rational_unit_vector(n: int, rng: random.Random, height: int = 6) -> Vector:
        """Rational point on S^(n-1) by inverse stereographic projection"""
        if n < 1:
            raise InvalidInputException(f"dimension must be positive, got {n}")
        if n == 1:
            return (ONE if rng.random() < 0.5 else -ONE,)
        t = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n - 1)]
        s = sum(x * x for x in t)
        vector = [2 * x / (s + 1) for x in t] + [(s - 1) / (s + 1)]
        rng.shuffle(vector)
        return as_vector(vector)

    @staticmethod
    def random_pin_element(n: int, rng: random.Random, max_factors: int = 4) -> PinElement:
        """Product of a random number of random rational unit vectors"""
        k = rng.randint(0, max_factors)
        return CliffordService.pin_from_vectors(
            [CliffordService.random_rational_unit_vector(n, rng) for _ in range(k)], dimension=n
        )


def _word_value(n: int, word: Sequence[Transposition]) -> CliffordElement:
    value = CliffordElement.scalar(n)
    for i, j in word:
        value = value * _transposition_value(n, i, j)
    return value


@lru_cache(maxsize=None)
def _transposition_value(n: int, i: int, j: int) -> CliffordElement:
    return CliffordService.transposition_lift(n, i + 1, j + 1).value


@lru_cache(maxsize=65536)
def _permutation_lift(sigma: Permutation) -> PinElement:
    n = len(sigma)
    factors = []
    value = CliffordElement.scalar(n)
    for i, j in CliffordService.selection_sort_word(sigma):
        u = CliffordService.transposition_lift(n, i + 1, j + 1)
        factors.extend(u.provenance)
        value = value * u.value
    return PinElement(value, len(factors) % 2, tuple(factors))


def _relative_sign(left: CliffordElement, right: CliffordElement) -> int:
    if left == right:
        return 1
    if left == -right:
        return -1
    raise CliffordException(
        "Clifford products do not agree up to sign",
        error_code=ErrorCode.NO_EXACT_LIFT,
        details={"left": str(left), "right": str(right)}
    )


@lru_cache(maxsize=262144)
def _lift_cocycle(sigma: Permutation, i: int, j: int) -> int:
    n = len(sigma)
    swapped = list(sigma)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    left = _permutation_lift(sigma).value * _transposition_value(n, i, j)
    return _relative_sign(left, _permutation_lift(tuple(swapped)).value)


@lru_cache(maxsize=65536)
def _word_sign(n: int, first: Tuple[Transposition, ...], second: Tuple[Transposition, ...]) -> int:
    return _relative_sign(_word_value(n, first), _word_value(n, second))
