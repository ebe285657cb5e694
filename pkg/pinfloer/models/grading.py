"""
Symplectic homology data of a Heegaard surface
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, Rational, eye, zeros


def standard_form(genus: int) -> ImmutableMatrix:
    """Intersection form in the basis (a_1, b_1, ..., a_g, b_g) with a_i . b_i = 1"""
    J = zeros(2 * genus, 2 * genus)
    for i in range(genus):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return ImmutableMatrix(J)


def as_matrix(columns: Sequence[Sequence[int]], rows: int) -> ImmutableMatrix:
    """Matrix whose columns are the given vectors"""
    if not columns:
        return ImmutableMatrix(zeros(rows, 0))
    return ImmutableMatrix(Matrix([[Rational(v) for v in col] for col in columns]).T)


@dataclass(frozen=True)
class SymplecticSpace:
    genus: int
    form: ImmutableMatrix
    inner_product: ImmutableMatrix

    @classmethod
    def standard(cls, genus: int, inner_product: Optional[Matrix] = None) -> "SymplecticSpace":
        G = eye(2 * genus) if inner_product is None else inner_product
        return cls(genus, standard_form(genus), ImmutableMatrix(G))

    @property
    def dimension(self) -> int:
        return 2 * self.genus

    def omega(self, u: Matrix, v: Matrix) -> Rational:
        return (u.T * self.form * v)[0, 0]


@dataclass(frozen=True)
class LagrangianSubspace:
    """Subspace spanned by the columns of basis"""
    ambient: SymplecticSpace
    basis: ImmutableMatrix

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    def vector(self, i: int) -> Matrix:
        return self.basis[:, i]


@dataclass(frozen=True)
class SurfaceHomologyData:
    """Ordered, oriented classes [alpha_i] and [beta_j] in H_1 of a genus g surface"""
    genus: int
    alpha: LagrangianSubspace
    beta: LagrangianSubspace

    @property
    def space(self) -> SymplecticSpace:
        return self.alpha.ambient

    def intersection_matrix(self) -> Matrix:
        """(alpha_i . beta_j)"""
        return self.alpha.basis.T * self.space.form * self.beta.basis


@dataclass(frozen=True)
class GeneratorLocalData:
    """
    Generator x = {x_i in alpha_i cap beta_sigma(i)} with local intersection signs.

    points optionally records which intersection point of alpha_i and beta_sigma(i) is used.
    """
    permutation: Tuple[int, ...]
    signs: Tuple[int, ...]
    points: Tuple[int, ...] = ()


@dataclass(frozen=True)
class CoupledOrientation:
    """Ordered basis of A + B, columns in shuffled order, in (alpha, beta) coordinates"""
    basis: ImmutableMatrix

    @property
    def size(self) -> int:
        return self.basis.shape[1]
