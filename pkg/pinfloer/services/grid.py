"""
Grid homology over the integers: states, gradings, differentials and grid moves
"""
import itertools
import logging
import random
import time
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import Rational, Symbol, cancel, expand, sqrt

from pinfloer.core import config
from pinfloer.core.exceptions import (
    ChainComplexException, DimensionMismatchException, GridSizeLimitException,
    InapplicableMoveException, InvalidGridException, InvalidInputException,
    SignVerificationException
)
from pinfloer.core.parallel import chunked, parallel_map, thread_count
from pinfloer.models.grid import (
    AnnulusCertificate, Axis, BigradedIntegerComplex, Corner, Differential, Flavor,
    GridDiagram, GridMove, GridState, MarkingKind, Monomial, MoveKind
)
from pinfloer.models.homology import ChainComplex, HomologyGroup, HomologySummary, SparseIntMatrix
from pinfloer.models.signs import DirectedRectangle, EquationKind, SignAssignment, annulus_kind
from pinfloer.schemas.reports import MoveComparison
from pinfloer.services.homology import HomologyService
from pinfloer.services.signs import SignService

logger = logging.getLogger(__name__)

Point = Tuple[int, int]
Bigrading = Tuple[int, Fraction]
Outgoing = List[Tuple[DirectedRectangle, GridState, Monomial]]


def _pairs_below(P: Sequence[Point], Q: Sequence[Point]) -> int:
    """#{(p, q) : p strictly south-west of q}"""
    return sum(1 for p in P for q in Q if p[0] < q[0] and p[1] < q[1])


def _maslov(points: Sequence[Point], markings: Sequence[Point]) -> int:
    """J(x, x) - 2 J(x, M) + J(M, M) + 1 in doubled coordinates"""
    return (_pairs_below(points, points) - _pairs_below(points, markings)
            - _pairs_below(markings, points) + _pairs_below(markings, markings) + 1)


def _components(O: Sequence[int], X: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Cycles of i -> column of the O in the row of the X of column i"""
    column_of_o = {row: column for column, row in enumerate(O)}
    seen, components = set(), []
    for start in range(len(O)):
        if start in seen:
            continue
        cycle, i = [], start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = column_of_o[X[i]]
        components.append(tuple(cycle))
    return tuple(components)


def _interleaved(first: Tuple[int, int], second: Tuple[int, int]) -> bool:
    (a1, b1), (a2, b2) = sorted(first), sorted(second)
    return a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1


def _add_term(target: Dict[Monomial, int], monomial: Monomial, coefficient: int) -> None:
    value = target.get(monomial, 0) + coefficient
    if value:
        target[monomial] = value
    else:
        target.pop(monomial, None)


def _monomial_product(first: Monomial, second: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(first, second))


@lru_cache(maxsize=16)
def _verified(assignment: SignAssignment) -> bool:
    return SignService.verify_sign_assignment(assignment).passed


class GridService:
    """Service class for grid diagrams and their chain complexes"""

    @staticmethod
    def grid_from_permutations(O: Sequence[int], X: Sequence[int]) -> GridDiagram:
        """
        Validate marking permutations and build a diagram

        Args:
            O: row of the O marking in each column, 0-indexed
            X: row of the X marking in each column, 0-indexed

        Returns:
            GridDiagram: with its link components

        Raises:
            InvalidGridException: On size mismatch, non-permutations or a doubly marked cell
        """
        n = len(O)
        if len(X) != n:
            raise InvalidGridException(f"O has {n} entries but X has {len(X)}")
        if n < 2:
            raise InvalidGridException(f"grid size must be at least 2, got {n}")
        for name, values in (("O", O), ("X", X)):
            if sorted(values) != list(range(n)):
                raise InvalidGridException(f"{name} is not a permutation of the {n} rows",
                                           details={name: [v + 1 for v in values]})
        clashes = [i for i in range(n) if O[i] == X[i]]
        if clashes:
            raise InvalidGridException(
                f"column {clashes[0] + 1} holds an O and an X in the same cell",
                details={"columns": [i + 1 for i in clashes]}
            )
        return GridDiagram(n, tuple(O), tuple(X), _components(O, X))

    @staticmethod
    def random_grid(n: int, rng: random.Random) -> GridDiagram:
        """Uniform O with X drawn until no cell is doubly marked"""
        O = list(range(n))
        rng.shuffle(O)
        while True:
            X = list(range(n))
            rng.shuffle(X)
            if all(o != x for o, x in zip(O, X)):
                return GridService.grid_from_permutations(O, X)

    @staticmethod
    def check_size(n: int, allow_large: bool = False) -> None:
        """Raise GridSizeLimitException above the configured caps"""
        if n > config.GRID_SIZE_HARD_CAP:
            raise GridSizeLimitException(n, config.GRID_SIZE_HARD_CAP)
        if n > config.GRID_SIZE_DEFAULT_CAP and not allow_large:
            raise GridSizeLimitException(n, config.GRID_SIZE_DEFAULT_CAP)

    @staticmethod
    def enumerate_states(G: GridDiagram) -> Iterator[GridState]:
        """Grid states in lexicographic order"""
        return itertools.permutations(range(G.n))

    @staticmethod
    def maslov_grading(G: GridDiagram, x: GridState, kind: MarkingKind = MarkingKind.O) -> int:
        points = [(2 * i, 2 * row) for i, row in enumerate(x)]
        markings = [(2 * i + 1, 2 * row + 1) for i, row in enumerate(G.markings(kind))]
        return _maslov(points, markings)

    @staticmethod
    def gradings(G: GridDiagram, x: GridState) -> Bigrading:
        """
        Maslov and Alexander gradings of a state

        Args:
            G: grid diagram
            x: state, x[i] is the row of the point on vertical circle i

        Returns:
            Tuple[int, Fraction]: M = M_O(x), A = (M_O(x) - M_X(x))/2 - (n - l)/2
        """
        if sorted(x) != list(range(G.n)):
            raise InvalidInputException(f"state {x} is not a permutation of {G.n} rows")
        m_o = GridService.maslov_grading(G, x, MarkingKind.O)
        m_x = GridService.maslov_grading(G, x, MarkingKind.X)
        return m_o, Fraction(m_o - m_x, 2) - Fraction(G.n - G.component_count, 2)

    @staticmethod
    def rectangles_from(G: GridDiagram, x: GridState, flavor: Flavor = Flavor.TILDE) -> Outgoing:
        """
        Empty rectangles leaving x that the flavor counts

        Tilde rectangles avoid every marking, minus rectangles avoid X and record one U_i per O
        column covered, unblocked rectangles ignore X.

        Returns:
            list of (rectangle, target state, U exponents)
        """
        n = G.n
        found: Outgoing = []
        for a in range(n):
            b = x[a]
            for c in range(n):
                if c == a:
                    continue
                d = x[c]
                rectangle = DirectedRectangle(n, a, c, b, d, 0)
                columns = rectangle.columns
                if any(rectangle.contains_point(i, x[i]) for i in columns):
                    continue
                height = rectangle.height
                exponents = [0] * n
                blocked = False
                for i in columns:
                    if flavor != Flavor.UNBLOCKED and (G.X[i] - b) % n < height:
                        blocked = True
                        break
                    if (G.O[i] - b) % n < height:
                        if flavor == Flavor.TILDE:
                            blocked = True
                            break
                        exponents[i] += 1
                if blocked:
                    continue
                y = list(x)
                y[a], y[c] = d, b
                found.append((rectangle, tuple(y), tuple(exponents)))
        return found

    @staticmethod
    def differential(G: GridDiagram, assignment: Optional[SignAssignment] = None,
                     flavor: Flavor = Flavor.TILDE, allow_large: bool = False,
                     verify: bool = True) -> BigradedIntegerComplex:
        """
        Signed grid chain complex

        Args:
            G: grid diagram
            assignment: sign assignment of size n; the default one for n when omitted
            flavor: tilde, minus or unblocked
            allow_large: accept grids above the default size cap
            verify: check the sign assignment first

        Returns:
            BigradedIntegerComplex: entries S(r) * lift_cocycle(x, r) * U^O(r) summed over rectangles

        Raises:
            DimensionMismatchException: If the assignment has the wrong size
            SignVerificationException: If the assignment fails verification
            ChainComplexException: If an entry breaks the grading rules
        """
        flavor = Flavor(flavor)
        GridService.check_size(G.n, allow_large)
        if assignment is None:
            assignment = SignService.default_assignment(G.n)
        if assignment.n != G.n:
            raise DimensionMismatchException(G.n, assignment.n, "sign assignment size")
        if verify and not _verified(assignment):
            violations = SignService.verify_sign_assignment(assignment).violation_count
            raise SignVerificationException(assignment.n, violations)

        started = time.perf_counter()
        generators = list(GridService.enumerate_states(G))
        gradings = parallel_map(lambda x: GridService.gradings(G, x), generators)
        complex_ = BigradedIntegerComplex(
            G, flavor, generators,
            [m for m, _ in gradings], [a for _, a in gradings]
        )

        def outgoing(indices: List[int]) -> List[Tuple[int, Dict[int, Dict[Monomial, int]]]]:
            rows = []
            for i in indices:
                x = generators[i]
                row: Dict[int, Dict[Monomial, int]] = {}
                for rectangle, y, monomial in GridService.rectangles_from(G, x, flavor):
                    sign = SignService.effective_sign(assignment, rectangle, x)
                    _add_term(row.setdefault(complex_.index[y], {}), monomial, sign)
                rows.append((i, {j: terms for j, terms in row.items() if terms}))
            return rows

        chunks = chunked(list(range(len(generators))), 4 * thread_count())
        for part in parallel_map(outgoing, chunks):
            for i, row in part:
                if row:
                    complex_.differential[i] = row
        GridService._check_gradings(complex_)
        logger.info(
            f"Built {flavor.value} complex for n={G.n}: {len(generators)} generators, "
            f"{complex_.entry_count()} entries in {time.perf_counter() - started:.2f}s"
        )
        return complex_

    @staticmethod
    def _check_gradings(complex_: BigradedIntegerComplex) -> None:
        for i, row in complex_.differential.items():
            for j, terms in row.items():
                for monomial in terms:
                    weight = sum(monomial)
                    maslov_ok = complex_.maslov[j] - 2 * weight == complex_.maslov[i] - 1
                    alexander_ok = complex_.flavor == Flavor.UNBLOCKED or \
                        complex_.alexander[j] - weight == complex_.alexander[i]
                    if not (maslov_ok and alexander_ok):
                        witness = {"source": list(complex_.generators[i]),
                                   "target": list(complex_.generators[j]), "monomial": list(monomial)}
                        raise ChainComplexException("differential entry breaks the bigrading", witness)

    @staticmethod
    def boundary_squared(complex_: BigradedIntegerComplex) -> Differential:
        """Nonzero entries of d o d, computed symbolically in the U variables"""
        result: Differential = {}
        for i, row in complex_.differential.items():
            acc: Dict[int, Dict[Monomial, int]] = {}
            for j, first in row.items():
                for k, second in complex_.differential.get(j, {}).items():
                    target = acc.setdefault(k, {})
                    for m1, c1 in first.items():
                        for m2, c2 in second.items():
                            _add_term(target, _monomial_product(m1, m2), c1 * c2)
            acc = {k: terms for k, terms in acc.items() if terms}
            if acc:
                result[i] = acc
        return result

    @staticmethod
    def check_boundary_squared(complex_: BigradedIntegerComplex) -> None:
        """
        Raises:
            ChainComplexException: With the first nonzero entry of d o d
        """
        squared = GridService.boundary_squared(complex_)
        if squared:
            i = min(squared)
            k = min(squared[i])
            monomial, value = sorted(squared[i][k].items())[0]
            witness = {"source": list(complex_.generators[i]), "target": list(complex_.generators[k]),
                       "monomial": list(monomial), "value": value}
            logger.error("Grid differential does not square to zero", extra={"witness": witness})
            raise ChainComplexException(f"{complex_.flavor.value} differential squares to a nonzero map", witness)

    @staticmethod
    def annulus_decomposition(G: GridDiagram, assignment: Optional[SignAssignment] = None,
                              allow_large: bool = False) -> List[AnnulusCertificate]:
        """
        Split d^2 of the unblocked complex into thin-annulus contributions

        Returns:
            List[AnnulusCertificate]: per generator, horizontal and vertical annulus sums and
            the remaining d^2 terms towards other generators
        """
        complex_ = GridService.differential(G, assignment, Flavor.UNBLOCKED, allow_large)
        if assignment is None:
            assignment = SignService.default_assignment(G.n)
        certificates = []
        squared = GridService.boundary_squared(complex_)
        for i, x in enumerate(complex_.generators):
            horizontal: Dict[Monomial, int] = {}
            vertical: Dict[Monomial, int] = {}
            for r1, y, m1 in GridService.rectangles_from(G, x, Flavor.UNBLOCKED):
                for r2, z, m2 in GridService.rectangles_from(G, y, Flavor.UNBLOCKED):
                    if z != x:
                        continue
                    kind = annulus_kind(r1, r2)
                    sign = SignService.effective_sign(assignment, r1, x) * \
                        SignService.effective_sign(assignment, r2, y)
                    target = vertical if kind == EquationKind.VERTICAL_ANNULUS else horizontal
                    _add_term(target, _monomial_product(m1, m2), sign)
            other = {complex_.generators[k]: terms for k, terms in squared.get(i, {}).items() if k != i}
            certificates.append(AnnulusCertificate(x, horizontal, vertical, other))
        return certificates

    @staticmethod
    def certify_annuli(G: GridDiagram, certificates: Sequence[AnnulusCertificate]) -> None:
        """
        Check horizontal = +sum U_i, vertical = -sum U_i and no other d^2 terms

        Raises:
            ChainComplexException: For the first generator that fails
        """
        n = G.n
        expected = {tuple(int(k == i) for k in range(n)): 1 for i in range(n)}
        for certificate in certificates:
            negated = {m: -c for m, c in certificate.vertical.items()}
            if certificate.horizontal != expected or negated != expected or certificate.other:
                witness = {
                    "state": list(certificate.state),
                    "horizontal": {str(m): c for m, c in certificate.horizontal.items()},
                    "vertical": {str(m): c for m, c in certificate.vertical.items()},
                }
                raise ChainComplexException("annulus contributions do not cancel as expected", witness)

    @staticmethod
    def to_chain_complexes(complex_: BigradedIntegerComplex) -> Dict[Fraction, ChainComplex]:
        """Split a tilde complex into Maslov-graded complexes, one per Alexander grading"""
        if complex_.flavor != Flavor.TILDE:
            raise InvalidInputException("only tilde complexes split into integer chain complexes")
        members: Dict[Fraction, Dict[int, List[int]]] = {}
        for i in range(len(complex_)):
            m, a = complex_.bigrading(i)
            members.setdefault(a, {}).setdefault(m, []).append(i)
        blocks: Dict[Fraction, ChainComplex] = {}
        for a, by_maslov in members.items():
            local = {i: k for indices in by_maslov.values() for k, i in enumerate(indices)}
            sizes = {m: len(indices) for m, indices in by_maslov.items()}
            boundaries = {m: SparseIntMatrix(sizes.get(m - 1, 0), size) for m, size in sizes.items()}
            for m, indices in by_maslov.items():
                for i in indices:
                    for j, terms in complex_.differential.get(i, {}).items():
                        boundaries[m].add(local[j], local[i], sum(terms.values()))
            labels = {m: [complex_.generators[i] for i in indices] for m, indices in by_maslov.items()}
            blocks[a] = ChainComplex(sizes, {m: d for m, d in boundaries.items() if m - 1 in sizes}, labels)
        return blocks

    @staticmethod
    def tilde_homology(G: GridDiagram, assignment: Optional[SignAssignment] = None,
                       allow_large: bool = False) -> HomologySummary:
        """
        Bigraded tilde homology

        Returns:
            HomologySummary: keyed by (Maslov, Alexander)
        """
        try:
            complex_ = GridService.differential(G, assignment, Flavor.TILDE, allow_large)
            GridService.check_boundary_squared(complex_)
            return HomologyService.bigraded_homology(GridService.to_chain_complexes(complex_))
        except Exception as e:
            logger.error(f"Error computing tilde homology for n={G.n}: {e}")
            raise

    @staticmethod
    def unsigned_mod2_homology(G: GridDiagram) -> Dict[Bigrading, int]:
        """
        F2 tilde homology from unsigned rectangle counts

        Rectangles are found from cell footprints: a lattice point is interior exactly when its
        four neighbouring cells are covered.

        Returns:
            Dict[Tuple[int, Fraction], int]: nonzero F2 dimensions by (Maslov, Alexander)
        """
        n = G.n
        marked = {(i, G.O[i]) for i in range(n)} | {(i, G.X[i]) for i in range(n)}
        generators = list(GridService.enumerate_states(G))
        index = {x: i for i, x in enumerate(generators)}
        gradings = [GridService.gradings(G, x) for x in generators]
        counts: Dict[Tuple[int, int], int] = {}
        for i, x in enumerate(generators):
            for a, c in itertools.permutations(range(n), 2):
                cells = {((a + s) % n, (x[a] + t) % n)
                         for s in range((c - a) % n) for t in range((x[c] - x[a]) % n)}
                if cells & marked:
                    continue
                interior = any(
                    {((k - 1) % n, (x[k] - 1) % n), (k, (x[k] - 1) % n), ((k - 1) % n, x[k]), (k, x[k])} <= cells
                    for k in range(n) if k not in (a, c)
                )
                if interior:
                    continue
                y = list(x)
                y[a], y[c] = x[c], x[a]
                key = (i, index[tuple(y)])
                counts[key] = counts.get(key, 0) ^ 1

        blocks: Dict[Bigrading, List[int]] = {}
        for i, grading in enumerate(gradings):
            blocks.setdefault(grading, []).append(i)
        local = {i: k for members in blocks.values() for k, i in enumerate(members)}
        maps: Dict[Bigrading, SparseIntMatrix] = {}
        for (i, j), bit in counts.items():
            if not bit:
                continue
            source = gradings[i]
            target = (source[0] - 1, source[1])
            matrix = maps.setdefault(source, SparseIntMatrix(len(blocks.get(target, [])), len(blocks[source])))
            matrix.add(local[j], local[i], 1)
        ranks = {key: d.mod2_rank() for key, d in maps.items()}
        dimensions = {}
        for (m, a), members in blocks.items():
            dim = len(members) - ranks.get((m, a), 0) - ranks.get((m + 1, a), 0)
            if dim:
                dimensions[(m, a)] = dim
        return dimensions

    @staticmethod
    def graded_euler_characteristic(G: GridDiagram, t: Optional[Symbol] = None):
        """sum over states of (-1)^M(x) t^A(x) as a sympy expression"""
        t = t or Symbol("t", positive=True)
        total = 0
        for x in GridService.enumerate_states(G):
            m, a = GridService.gradings(G, x)
            total += (-1) ** (m % 2) * t ** Rational(a.numerator, a.denominator)
        return total

    @staticmethod
    def normalized_alexander_polynomial(G: GridDiagram, t: Optional[Symbol] = None):
        """Graded Euler characteristic divided by (1 - t^-1)^(n - l)"""
        t = t or Symbol("t", positive=True)
        s = Symbol("s", positive=True)
        chi = GridService.graded_euler_characteristic(G, s).subs(s, s ** 2)
        quotient = cancel(chi / (1 - s ** -2) ** (G.n - G.component_count))
        return expand(expand(quotient).subs(s, sqrt(t)))

    @staticmethod
    def applicable_commutations(G: GridDiagram) -> List[GridMove]:
        """Column and row commutations whose marking intervals do not interleave"""
        n = G.n
        column_of_o = {row: column for column, row in enumerate(G.O)}
        column_of_x = {row: column for column, row in enumerate(G.X)}
        moves = []
        for j in range(n - 1):
            if not _interleaved((G.O[j], G.X[j]), (G.O[j + 1], G.X[j + 1])):
                moves.append(GridMove(MoveKind.COMMUTATION, Axis.COLUMN, j))
        for k in range(n - 1):
            if not _interleaved((column_of_o[k], column_of_x[k]), (column_of_o[k + 1], column_of_x[k + 1])):
                moves.append(GridMove(MoveKind.COMMUTATION, Axis.ROW, k))
        return moves

    @staticmethod
    def apply_move(G: GridDiagram, move: GridMove) -> GridDiagram:
        """
        Apply a grid move

        Args:
            G: grid diagram
            move: commutation, translation, stabilization or destabilization

        Returns:
            GridDiagram: of size n (commutation, translation), n + 1 or n - 1

        Raises:
            InapplicableMoveException: If the move's preconditions fail
        """
        try:
            if move.kind == MoveKind.COMMUTATION:
                return GridService._commute(G, move)
            if move.kind == MoveKind.TRANSLATION:
                return GridService._translate(G, move)
            if move.kind == MoveKind.STABILIZATION:
                return GridService._stabilize(G, move)
            return GridService._destabilize(G, move)
        except InapplicableMoveException as e:
            logger.warning(f"Rejected grid move: {e.message}")
            raise

    @staticmethod
    def _commute(G: GridDiagram, move: GridMove) -> GridDiagram:
        j, n = move.index, G.n
        if not 0 <= j < n - 1:
            raise InapplicableMoveException(move.describe(), f"index must lie in 1..{n - 1}")
        if move not in GridService.applicable_commutations(G):
            raise InapplicableMoveException(move.describe(), "marking intervals interleave")
        if move.axis == Axis.COLUMN:
            O, X = list(G.O), list(G.X)
            O[j], O[j + 1] = O[j + 1], O[j]
            X[j], X[j + 1] = X[j + 1], X[j]
            return GridService.grid_from_permutations(O, X)
        swap = {j: j + 1, j + 1: j}
        return GridService.grid_from_permutations([swap.get(r, r) for r in G.O], [swap.get(r, r) for r in G.X])

    @staticmethod
    def _translate(G: GridDiagram, move: GridMove) -> GridDiagram:
        n, s = G.n, move.index
        if move.axis == Axis.COLUMN:
            return GridService.grid_from_permutations(
                [G.O[(i - s) % n] for i in range(n)], [G.X[(i - s) % n] for i in range(n)]
            )
        return GridService.grid_from_permutations([(r + s) % n for r in G.O], [(r + s) % n for r in G.X])

    @staticmethod
    def _block(move: GridMove) -> Tuple[int, int, int, int]:
        """(empty column, other column, empty row, other row) of the 2 x 2 block"""
        c, r, corner = move.column, move.row, Corner(move.corner)
        empty_column, other_column = (c + 1, c) if corner.east else (c, c + 1)
        empty_row, other_row = (r + 1, r) if corner.north else (r, r + 1)
        return empty_column, other_column, empty_row, other_row

    @staticmethod
    def _stabilize(G: GridDiagram, move: GridMove) -> GridDiagram:
        n, c, r, kind = G.n, move.column, move.row, MarkingKind(move.marking)
        if not (0 <= c < n and 0 <= r < n) or G.markings(kind)[c] != r:
            raise InapplicableMoveException(move.describe(), f"no {kind.value} marking at that cell")
        if n + 1 > config.GRID_SIZE_HARD_CAP:
            raise GridSizeLimitException(n + 1, config.GRID_SIZE_HARD_CAP)
        same, other = G.markings(kind), G.markings(kind.other)
        ec, oc, er, orow = GridService._block(move)

        def shifted(row: int) -> int:
            return row if row < r else row + 1

        new_same: List[int] = [0] * (n + 1)
        new_other: List[int] = [0] * (n + 1)
        for i in range(n):
            if i == c:
                continue
            k = i if i < c else i + 1
            new_same[k] = shifted(same[i])
            new_other[k] = er if other[i] == r else shifted(other[i])
        new_same[ec], new_other[ec] = orow, shifted(other[c])
        new_same[oc], new_other[oc] = er, orow
        if kind == MarkingKind.O:
            return GridService.grid_from_permutations(new_same, new_other)
        return GridService.grid_from_permutations(new_other, new_same)

    @staticmethod
    def _destabilize(G: GridDiagram, move: GridMove) -> GridDiagram:
        n, c, r, kind = G.n, move.column, move.row, MarkingKind(move.marking)
        if n < 3:
            raise InapplicableMoveException(move.describe(), "a 2 x 2 grid cannot be destabilized")
        if not (0 <= c < n - 1 and 0 <= r < n - 1):
            raise InapplicableMoveException(move.describe(), "block must fit without wrapping")
        same, other = G.markings(kind), G.markings(kind.other)
        ec, oc, er, orow = GridService._block(move)
        if same[ec] != orow or same[oc] != er or other[oc] != orow or other[ec] == er:
            raise InapplicableMoveException(move.describe(), "block does not have the stabilized shape")

        def restored(row: int) -> int:
            return row if row < r else row - 1

        new_same: List[int] = [0] * (n - 1)
        new_other: List[int] = [0] * (n - 1)
        for k in range(n):
            if k in (c, c + 1):
                continue
            i = k if k < c else k - 1
            new_same[i] = restored(same[k])
            new_other[i] = r if other[k] == er else restored(other[k])
        new_same[c], new_other[c] = r, restored(other[ec])
        if kind == MarkingKind.O:
            return GridService.grid_from_permutations(new_same, new_other)
        return GridService.grid_from_permutations(new_other, new_same)

    @staticmethod
    def inverse_of(move: GridMove) -> GridMove:
        """Move undoing `move` on the diagram it produced"""
        if move.kind == MoveKind.COMMUTATION:
            return move
        if move.kind == MoveKind.TRANSLATION:
            return GridMove(MoveKind.TRANSLATION, move.axis, -move.index)
        kind = MoveKind.DESTABILIZATION if move.kind == MoveKind.STABILIZATION else MoveKind.STABILIZATION
        return GridMove(kind, move.axis, move.index, move.column, move.row, move.marking, move.corner)

    @staticmethod
    def predicted_after_move(before: HomologySummary, move: GridMove) -> Optional[Dict[Bigrading, HomologyGroup]]:
        """
        Bigraded groups expected after a move, from the groups before it

        Returns None for a destabilization when the groups before do not split off a
        copy of themselves shifted by (-1, -1).
        """
        groups = before.nonzero()
        if move.kind in (MoveKind.COMMUTATION, MoveKind.TRANSLATION):
            return groups
        zero = HomologyGroup(0)
        if move.kind == MoveKind.STABILIZATION:
            keys = set(groups) | {(m - 1, a - 1) for m, a in groups}
            predicted = {(m, a): groups.get((m, a), zero) + groups.get((m + 1, a + 1), zero) for m, a in keys}
            return {k: g for k, g in predicted.items() if not g.is_zero()}
        # destabilization: peel V off from the top Alexander grading down
        remaining = dict(groups)
        result: Dict[Bigrading, HomologyGroup] = {}
        for m, a in sorted(groups, key=lambda key: (-key[1], -key[0])):
            value = remaining.get((m, a), zero)
            if value.is_zero():
                continue
            result[(m, a)] = value
            below = (m - 1, a - 1)
            rest = remaining.get(below, zero).without(value)
            if rest is None:
                return None
            remaining[below] = rest
        return result

    @staticmethod
    def check_moves(G: GridDiagram, moves: Sequence[GridMove],
                    assignments: Optional[Dict[int, SignAssignment]] = None,
                    allow_large: bool = False) -> List[MoveComparison]:
        """
        Compare bigraded tilde homology before and after each move

        Commutations and translations must preserve it; a stabilization tensors it with a copy of
        Z in bigradings (0, 0) and (-1, -1). Free ranks and torsion are both compared.
        """
        assignments = assignments or {}
        before = GridService.tilde_homology(G, assignments.get(G.n), allow_large)
        comparisons = []
        for move in moves:
            after_grid = GridService.apply_move(G, move)
            after = GridService.tilde_homology(after_grid, assignments.get(after_grid.n), allow_large)
            predicted = GridService.predicted_after_move(before, move)
            passed = predicted is not None and predicted == after.nonzero()
            if not passed:
                logger.warning(f"Homology comparison failed for {move.describe()}")
            comparisons.append(MoveComparison(
                move=move.describe(),
                size_before=G.n,
                size_after=after_grid.n,
                rank_before=before.total_rank,
                rank_after=after.total_rank,
                torsion_before=sorted(t for g in before.groups.values() for t in g.torsion),
                torsion_after=sorted(t for g in after.groups.values() for t in g.torsion),
                passed=passed,
            ))
        return comparisons
