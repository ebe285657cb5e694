"""
Smith normal form and homology of finite chain complexes over the integers
"""
import logging
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Tuple

from pinfloer.core import config
from pinfloer.core.exceptions import ChainComplexException, DimensionMismatchException
from pinfloer.core.parallel import parallel_map
from pinfloer.models.homology import (
    ChainComplex, HomologyGroup, HomologySummary, SmithForm, SparseIntMatrix
)

logger = logging.getLogger(__name__)


class _Transforms:
    """Dense U, V kept so that M = U * W * V throughout the reduction"""

    def __init__(self, n_rows: int, n_cols: int):
        # columns of U are stored as rows of Ut
        self.Ut = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
        self.V = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def row_added(self, target: int, source: int, q: int) -> None:
        """W[target] += q * W[source]  =>  U[:, source] -= q * U[:, target]"""
        self.Ut[source] = [s - q * t for s, t in zip(self.Ut[source], self.Ut[target])]

    def col_added(self, target: int, source: int, q: int) -> None:
        """W[:, target] += q * W[:, source]  =>  V[source] -= q * V[target]"""
        self.V[source] = [s - q * t for s, t in zip(self.V[source], self.V[target])]

    def row_negated(self, r: int) -> None:
        self.Ut[r] = [-x for x in self.Ut[r]]

    def permute(self, row_order: List[int], col_order: List[int]) -> None:
        """Move row row_order[k] and column col_order[k] to position k"""
        self.Ut = [self.Ut[r] for r in row_order]
        self.V = [self.V[c] for c in col_order]

    def combine(self, i: int, j: int, a: int, b: int) -> None:
        """Replace diag(a, b) at positions i, j by diag(g, ab/g) via unimodular 2x2 factors"""
        g, s, t = _extended_gcd(a, b)
        # U <- U * L^-1 with L^-1 = [[a/g, -t], [b/g, s]]
        ui, uj = self.Ut[i], self.Ut[j]
        self.Ut[i] = [(a // g) * x + (b // g) * y for x, y in zip(ui, uj)]
        self.Ut[j] = [-t * x + s * y for x, y in zip(ui, uj)]
        # V <- R^-1 * V with R^-1 = [[s a/g, t b/g], [-1, 1]]
        vi, vj = self.V[i], self.V[j]
        self.V[i] = [s * (a // g) * x + t * (b // g) * y for x, y in zip(vi, vj)]
        self.V[j] = [-x + y for x, y in zip(vi, vj)]

    def matrices(self) -> Tuple[SparseIntMatrix, SparseIntMatrix]:
        U = SparseIntMatrix.from_dense([list(col) for col in zip(*self.Ut)], len(self.Ut)) \
            if self.Ut else SparseIntMatrix(0, 0)
        V = SparseIntMatrix.from_dense(self.V, len(self.V)) if self.V else SparseIntMatrix(0, 0)
        return U, V


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """g, s, t with g = gcd(a, b) = s*a + t*b for positive a, b"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


class _Reducer:
    """Sparse elimination with row and column indices kept in sync"""

    def __init__(self, matrix: SparseIntMatrix, transforms: Optional[_Transforms]):
        self.rows: Dict[int, Dict[int, int]] = {r: dict(row) for r, row in matrix.rows.items()}
        self.cols: Dict[int, Dict[int, int]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                self.cols.setdefault(c, {})[r] = v
        self.transforms = transforms

    def _set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, {})[r] = v
            return
        row, col = self.rows.get(r), self.cols.get(c)
        if row is not None and c in row:
            del row[c]
            if not row:
                del self.rows[r]
        if col is not None and r in col:
            del col[r]
            if not col:
                del self.cols[c]

    def add_row(self, target: int, source: int, q: int) -> None:
        for c, v in list(self.rows.get(source, {}).items()):
            self._set(target, c, self.rows.get(target, {}).get(c, 0) + q * v)
        if self.transforms:
            self.transforms.row_added(target, source, q)

    def add_col(self, target: int, source: int, q: int) -> None:
        for r, v in list(self.cols.get(source, {}).items()):
            self._set(r, target, self.cols.get(target, {}).get(r, 0) + q * v)
        if self.transforms:
            self.transforms.col_added(target, source, q)

    def choose_pivot(self) -> Tuple[int, int]:
        """Least absolute value, then fewest neighbours, then position"""
        best_key, best = None, None
        for r, row in self.rows.items():
            row_weight = len(row) - 1
            for c, v in row.items():
                key = (abs(v), row_weight * (len(self.cols[c]) - 1), r, c)
                if best_key is None or key < best_key:
                    best_key, best = key, (r, c)
        return best

    def eliminate(self, r: int, c: int) -> Tuple[int, int, int]:
        """Clear row r and column c around a pivot; the pivot may move to a smaller entry."""
        while True:
            p = self.rows[r][c]
            moved = False
            for r2, v in list(self.cols[c].items()):
                if r2 == r:
                    continue
                self.add_row(r2, r, -(v // p))
                rem = self.rows.get(r2, {}).get(c, 0)
                if rem:
                    r, moved = r2, True
                    break
            if moved:
                continue
            for c2, v in list(self.rows[r].items()):
                if c2 == c:
                    continue
                self.add_col(c2, c, -(v // p))
                rem = self.rows[r].get(c2, 0)
                if rem:
                    c, moved = c2, True
                    break
            if not moved:
                break
        value = self.rows[r][c]
        self._set(r, c, 0)
        return r, c, value


class HomologyService:
    """Service class for exact integer homology"""

    @staticmethod
    def smith_normal_form(matrix: SparseIntMatrix,
                          track_transforms: Optional[bool] = None) -> SmithForm:
        """
        Smith normal form of an integer matrix

        Args:
            matrix: sparse integer matrix M
            track_transforms: compute U and V with M = U*D*V; defaults to config.SNF_TRACK_TRANSFORMS

        Returns:
            SmithForm: positive invariant factors d_1 | d_2 | ... and optionally U, V
        """
        track = config.SNF_TRACK_TRANSFORMS if track_transforms is None else track_transforms
        transforms = _Transforms(matrix.n_rows, matrix.n_cols) if track else None
        reducer = _Reducer(matrix, transforms)

        pivots: List[Tuple[int, int, int]] = []
        while reducer.rows:
            r, c = reducer.choose_pivot()
            pivots.append(reducer.eliminate(r, c))

        diagonal = [v for _, _, v in pivots]
        if transforms:
            used_rows = [r for r, _, _ in pivots]
            used_cols = [c for _, c, _ in pivots]
            rest_rows = sorted(set(range(matrix.n_rows)) - set(used_rows))
            rest_cols = sorted(set(range(matrix.n_cols)) - set(used_cols))
            transforms.permute(used_rows + rest_rows, used_cols + rest_cols)
            for i, d in enumerate(diagonal):
                if d < 0:
                    transforms.row_negated(i)
        diagonal = [abs(d) for d in diagonal]

        for i in range(len(diagonal)):
            for j in range(i + 1, len(diagonal)):
                a, b = diagonal[i], diagonal[j]
                if b % a == 0:
                    continue
                g = gcd(a, b)
                if transforms:
                    transforms.combine(i, j, a, b)
                diagonal[i], diagonal[j] = g, a * b // g

        U, V = transforms.matrices() if transforms else (None, None)
        logger.debug(f"SNF of {matrix.n_rows}x{matrix.n_cols} matrix: rank {len(diagonal)}")
        return SmithForm(matrix.shape, diagonal, U, V)

    @staticmethod
    def check_boundary_squared(complex_: ChainComplex) -> None:
        """
        Verify composability and d_(k-1) o d_k = 0

        Raises:
            DimensionMismatchException: If a boundary matrix has the wrong shape
            ChainComplexException: If some composite is nonzero, with the first nonzero entry as witness
        """
        for k, d in complex_.boundaries.items():
            expected = (complex_.size(k - 1), complex_.size(k))
            if d.shape != expected:
                raise DimensionMismatchException(expected, d.shape, f"boundary d_{k} shape")
        for k in sorted(complex_.boundaries):
            if k - 1 not in complex_.boundaries:
                continue
            product = complex_.boundaries[k - 1].matmul(complex_.boundaries[k])
            if not product.is_zero():
                r, c, v = next(product.entries())
                witness = {"degree": k, "row": r, "column": c, "value": v}
                logger.error("Boundary does not square to zero", extra={"witness": witness})
                raise ChainComplexException(f"d_{k - 1} o d_{k} is nonzero", witness)

    @staticmethod
    def homology_of_complex(complex_: ChainComplex, check: bool = True) -> HomologySummary:
        """
        Homology of a chain complex, degree by degree

        Args:
            complex_: finite chain complex
            check: verify that the boundary squares to zero first

        Returns:
            HomologySummary: keyed by degree
        """
        if check:
            HomologyService.check_boundary_squared(complex_)
        degrees = sorted(k for k, d in complex_.boundaries.items() if not d.is_zero())
        forms = dict(zip(degrees, parallel_map(
            lambda k: HomologyService.smith_normal_form(complex_.boundaries[k], track_transforms=False),
            degrees
        )))
        summary = HomologySummary()
        for k in complex_.degrees:
            outgoing = forms[k].rank if k in forms else 0
            incoming = forms.get(k + 1)
            free = complex_.size(k) - outgoing - (incoming.rank if incoming else 0)
            torsion = tuple(incoming.torsion) if incoming else ()
            summary.groups[k] = HomologyGroup(free, torsion)
        return summary

    @staticmethod
    def bigraded_homology(blocks: Mapping[Any, ChainComplex]) -> HomologySummary:
        """
        Homology of a complex split into independent blocks

        Args:
            blocks: chain complexes keyed by a block label (e.g. Alexander grading)

        Returns:
            HomologySummary: keyed by (degree, block)
        """
        keys = sorted(blocks)
        results = parallel_map(lambda key: HomologyService.homology_of_complex(blocks[key]), keys)
        summary = HomologySummary()
        for key, partial in zip(keys, results):
            for degree, group in partial.groups.items():
                summary.groups[(degree, key)] = group
        logger.info(f"Bigraded homology over {len(keys)} blocks: total rank {summary.total_rank}")
        return summary

    @staticmethod
    def mod2_homology(complex_: ChainComplex) -> Dict[int, int]:
        """F2 Betti numbers computed directly from the boundary matrices reduced mod 2"""
        ranks = {k: d.mod2_rank() for k, d in complex_.boundaries.items()}
        betti = {}
        for k in complex_.degrees:
            dim = complex_.size(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
            if dim:
                betti[k] = dim
        return betti
