"""
Coupled orientations and the absolute Z/2 grading of Heegaard Floer generators
"""
import itertools
import logging
import random
from typing import List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, eye, sign, zeros

from pinfloer.core.exceptions import ErrorCode, GradingException, InvalidInputException
from pinfloer.models.grading import (
    CoupledOrientation, GeneratorLocalData, LagrangianSubspace, SurfaceHomologyData,
    SymplecticSpace, as_matrix
)

logger = logging.getLogger(__name__)


def _hstack(columns: Sequence[Matrix], rows: int) -> Matrix:
    return Matrix.hstack(*columns) if columns else zeros(rows, 0)


def _g_complement(space: SymplecticSpace, A: Matrix, K: Matrix) -> Matrix:
    """Columns spanning {v in span(A) : K^T G v = 0}"""
    if K.shape[1] == 0:
        return A
    coefficients = (K.T * space.inner_product * A).nullspace()
    return _hstack([A * c for c in coefficients], A.shape[0])


def _g_projection(space: SymplecticSpace, K: Matrix, v: Matrix) -> Matrix:
    if K.shape[1] == 0:
        return zeros(v.shape[0], 1)
    G = space.inner_product
    return K * (K.T * G * K).inv() * K.T * G * v


class GradingService:
    """Service class for coupled orientations and gr_HF"""

    @staticmethod
    def lagrangian(space: SymplecticSpace, vectors: Sequence[Sequence[int]]) -> LagrangianSubspace:
        """
        Validate and wrap a Lagrangian subspace

        Args:
            space: ambient symplectic space
            vectors: g vectors in the basis (a_1, b_1, ..., a_g, b_g)

        Raises:
            GradingException: If the vectors are dependent or not isotropic
        """
        g = space.genus
        if len(vectors) != g or any(len(v) != 2 * g for v in vectors):
            raise GradingException(
                f"a Lagrangian in genus {g} needs {g} vectors of length {2 * g}",
                details={"vectors": len(vectors)}
            )
        basis = as_matrix(vectors, 2 * g)
        if basis.rank() != g:
            raise GradingException("Lagrangian basis vectors are dependent", details={"rank": basis.rank()})
        if not (basis.T * space.form * basis).is_zero_matrix:
            raise GradingException("subspace is not isotropic for the intersection form")
        return LagrangianSubspace(space, basis)

    @staticmethod
    def surface_data(genus: int, alpha: Sequence[Sequence[int]], beta: Sequence[Sequence[int]],
                     inner_product: Optional[Sequence[Sequence[int]]] = None) -> SurfaceHomologyData:
        """Build SurfaceHomologyData from curve classes."""
        if genus < 1:
            raise InvalidInputException(f"genus must be positive, got {genus}")
        G = None
        if inner_product is not None:
            G = Matrix(inner_product)
            if G.shape != (2 * genus, 2 * genus) or G != G.T or not G.is_positive_definite:
                raise GradingException("inner product must be symmetric positive definite",
                                       error_code=ErrorCode.INVALID_INPUT)
        space = SymplecticSpace.standard(genus, G)
        return SurfaceHomologyData(
            genus,
            GradingService.lagrangian(space, alpha),
            GradingService.lagrangian(space, beta),
        )

    @staticmethod
    def intersection(L0: LagrangianSubspace, L1: LagrangianSubspace) -> Matrix:
        """Basis of L0 cap L1 as columns"""
        g0 = L0.rank
        pairs = Matrix.hstack(L0.basis, -L1.basis).nullspace()
        return _hstack([L0.basis * p[:g0, :] for p in pairs], L0.basis.shape[0])

    @staticmethod
    def tau_iso(space: SymplecticSpace, L0: LagrangianSubspace, L1: LagrangianSubspace) -> ImmutableMatrix:
        """
        Canonical isomorphism L0 -> L1 determined by the inner product

        On K = L0 cap L1 it is the identity. On the G-orthogonal complement L0' of K in L0 it
        sends u to the unique y in L1' with G(y, w) = omega(u, w) for every w in L1'.

        Args:
            space: symplectic space carrying the inner product G
            L0: source Lagrangian
            L1: target Lagrangian

        Returns:
            ImmutableMatrix: ambient matrix P with P v = tau(v) for v in L0, zero on the G-complement of L0

        Raises:
            GradingException: If an input is not Lagrangian
        """
        for name, L in (("L0", L0), ("L1", L1)):
            if L.rank != space.genus or not (L.basis.T * space.form * L.basis).is_zero_matrix:
                raise GradingException(f"{name} is not Lagrangian", details={"rank": L.rank})
        G, J = space.inner_product, space.form
        K = GradingService.intersection(L0, L1)
        Y = _g_complement(space, L1.basis, K)
        images = []
        for i in range(L0.rank):
            v = L0.vector(i)
            k = _g_projection(space, K, v)
            u = v - k
            if Y.shape[1]:
                c = (Y.T * G * Y).inv() * Y.T * J.T * u
                images.append(k + Y * c)
            else:
                images.append(k)
        T_img = Matrix.hstack(*images)
        A0 = L0.basis
        P = T_img * (A0.T * G * A0).inv() * A0.T * G
        if (P * A0).rank() != space.genus:
            raise GradingException("tau is not injective", details={"rank": (P * A0).rank()})
        return ImmutableMatrix(P)

    @staticmethod
    def tau_matrix(data: SurfaceHomologyData, a_basis: Optional[Matrix] = None) -> Tuple[Matrix, Matrix]:
        """(C, T) with v_i = sum_k C_ki alpha_k and tau(v_i) = sum_j T_ji beta_j"""
        g = data.genus
        C = eye(g) if a_basis is None else Matrix(a_basis)
        if C.shape != (g, g) or C.det() == 0:
            raise GradingException("A-basis change is not invertible", error_code=ErrorCode.NOT_A_BASIS)
        P = GradingService.tau_iso(data.space, data.alpha, data.beta)
        B = data.beta.basis
        T = (B.T * B).inv() * B.T * P * data.alpha.basis * C
        return C, T

    @staticmethod
    def canonical_coupled_orientation(data: SurfaceHomologyData,
                                      a_basis: Optional[Matrix] = None) -> CoupledOrientation:
        """
        Shuffled basis (v_1, tau v_1, ..., v_g, tau v_g) of A + B

        Args:
            data: surface homology data
            a_basis: optional g x g change of basis of A; the orientation class does not depend on it

        Returns:
            CoupledOrientation: columns in (alpha coordinates, beta coordinates)
        """
        g = data.genus
        C, T = GradingService.tau_matrix(data, a_basis)
        columns = []
        for i in range(g):
            columns.append(Matrix.vstack(C[:, i], zeros(g, 1)))
            columns.append(Matrix.vstack(zeros(g, 1), T[:, i]))
        return CoupledOrientation(ImmutableMatrix(Matrix.hstack(*columns)))

    @staticmethod
    def betti_numbers(data: SurfaceHomologyData) -> Tuple[int, int]:
        """
        (b_1, h_2) from the map H_1 -> H_1/A + H_1/B

        Returns:
            Tuple[int, int]: cokernel and kernel dimensions, which always agree
        """
        g = data.genus
        annihilators = [q.T for q in data.alpha.basis.T.nullspace()] + \
                       [q.T for q in data.beta.basis.T.nullspace()]
        rank = Matrix.vstack(*annihilators).rank()
        h2 = 2 * g - rank
        b1 = (g + g) - rank
        if b1 != h2:
            raise GradingException("Betti numbers disagree", details={"b1": b1, "h2": h2})
        return b1, h2

    @staticmethod
    def shuffled_generator_basis(data: SurfaceHomologyData, x: GeneratorLocalData) -> Matrix:
        """Columns ([alpha_1], [beta_sigma(1)], ..., [alpha_g], [beta_sigma(g)])"""
        g = data.genus
        columns = []
        for i, j in enumerate(x.permutation):
            columns.append(eye(2 * g)[:, i])
            columns.append(eye(2 * g)[:, g + j])
        return Matrix.hstack(*columns)

    @staticmethod
    def gr_hf(data: SurfaceHomologyData, x: GeneratorLocalData) -> int:
        """
        Absolute Z/2 grading of a generator

        Args:
            data: surface homology data
            x: permutation (0-indexed) and local intersection signs

        Returns:
            int: gr(x) + g + b_1 mod 2, where gr(x) = g exactly when s1 * s2 = +1

        Raises:
            InvalidInputException: If the permutation is not a bijection or a sign is not +-1
            GradingException: If a determinant vanishes
        """
        g = data.genus
        if sorted(x.permutation) != list(range(g)):
            raise InvalidInputException(f"generator permutation {x.permutation} is not a bijection of {g} curves")
        if len(x.signs) != g or any(s not in (1, -1) for s in x.signs):
            raise InvalidInputException(f"generator needs {g} local signs in {{+1, -1}}, got {x.signs}")
        b1, _ = GradingService.betti_numbers(data)
        s1 = 1
        for s in x.signs:
            s1 *= s
        det_x = GradingService.shuffled_generator_basis(data, x).det()
        det_can = GradingService.canonical_coupled_orientation(data).basis.det()
        if det_x == 0 or det_can == 0:
            raise GradingException("orientation comparison has zero determinant",
                                   error_code=ErrorCode.DEGENERATE_DETERMINANT)
        s2 = int(sign(det_x * det_can))
        gr = g if s1 * s2 == 1 else g + 1
        return (gr + g + b1) % 2

    @staticmethod
    def enumerate_generators(data: SurfaceHomologyData,
                             intersections: Sequence[Sequence[Sequence[int]]]) -> List[GeneratorLocalData]:
        """
        All generators from per-(i, j) lists of local intersection signs

        Args:
            data: surface homology data
            intersections: intersections[i][j] lists the signs of the points of alpha_i cap beta_j

        Returns:
            List[GeneratorLocalData]: in lexicographic (permutation, point) order
        """
        g = data.genus
        if len(intersections) != g or any(len(row) != g for row in intersections):
            raise InvalidInputException(f"intersection table must be {g} x {g}")
        generators = []
        for sigma in itertools.permutations(range(g)):
            choices = [list(enumerate(intersections[i][sigma[i]])) for i in range(g)]
            for picked in itertools.product(*choices):
                generators.append(GeneratorLocalData(
                    tuple(sigma), tuple(s for _, s in picked), tuple(p for p, _ in picked)
                ))
        return generators

    @staticmethod
    def euler_characteristic(data: SurfaceHomologyData,
                             intersections: Sequence[Sequence[Sequence[int]]]) -> int:
        """Sum of (-1)^gr_hf(x) over all generators"""
        generators = GradingService.enumerate_generators(data, intersections)
        total = sum(-1 if GradingService.gr_hf(data, x) else 1 for x in generators)
        logger.info(f"Euler characteristic over {len(generators)} generators: {total}")
        return total

    @staticmethod
    def induced_coupled_orientation(f: Matrix, o: Matrix) -> CoupledOrientation:
        """
        Orientation of F + E induced by f: E -> F and an orientation of coker f + ker f

        Args:
            f: dim F x dim E matrix
            o: columns in (F, E) coordinates forming a basis of im(f)^perp + ker(f)

        Returns:
            CoupledOrientation: o followed by the pairs (f(w_j), w_j) for a basis w of ker(f)^perp

        Raises:
            GradingException: If o is not a basis of coker f + ker f
        """
        f = Matrix(f)
        dim_f, dim_e = f.shape
        o = Matrix(o) if o is not None else zeros(dim_f + dim_e, 0)
        expected = len(f.T.nullspace()) + len(f.nullspace())
        if o.shape != (dim_f + dim_e, expected):
            raise GradingException(
                f"orientation data has shape {o.shape}, expected {(dim_f + dim_e, expected)}",
                error_code=ErrorCode.NOT_A_BASIS
            )
        if expected:
            o_f, o_e = o[:dim_f, :], o[dim_f:, :]
            if not (f.T * o_f).is_zero_matrix or not (f * o_e).is_zero_matrix or o.rank() != expected:
                raise GradingException("orientation data is not a basis of coker + ker",
                                       error_code=ErrorCode.NOT_A_BASIS)
        columns = [o[:, k] for k in range(expected)]
        for w in f.T.columnspace():
            columns.append(Matrix.vstack(f * w, zeros(dim_e, 1)))
            columns.append(Matrix.vstack(zeros(dim_f, 1), w))
        return CoupledOrientation(ImmutableMatrix(_hstack(columns, dim_f + dim_e)))

    @staticmethod
    def same_orientation(first: CoupledOrientation, second: CoupledOrientation) -> bool:
        """Whether two full-rank bases of the same space define the same orientation"""
        d1, d2 = first.basis.det(), second.basis.det()
        if d1 == 0 or d2 == 0:
            raise GradingException("orientation basis is degenerate", error_code=ErrorCode.NOT_A_BASIS)
        return sign(d1) == sign(d2)

    @staticmethod
    def random_lagrangian(space: SymplecticSpace, rng: random.Random, steps: int = 4) -> LagrangianSubspace:
        """Image of span(a_1, ..., a_g) under random integral symplectic transvections"""
        g = space.genus
        basis = Matrix.hstack(*[eye(2 * g)[:, 2 * i] for i in range(g)])
        J = space.form
        for _ in range(steps):
            v = Matrix([rng.randint(-1, 1) for _ in range(2 * g)])
            c = rng.choice([-1, 1])
            # x -> x + c * omega(v, x) * v
            basis = basis + c * v * (v.T * J * basis)
        return LagrangianSubspace(space, ImmutableMatrix(basis))
