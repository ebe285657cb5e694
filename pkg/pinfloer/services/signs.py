"""
Sign assignments on directed grid rectangles
"""
import logging
import random
import time
from collections import Counter
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pinfloer.core import config
from pinfloer.core.exceptions import (
    DimensionMismatchException, InvalidInputException, SignAssignmentException
)
from pinfloer.core.parallel import chunked, parallel_map, thread_count
from pinfloer.models.signs import (
    ConstraintSystem, DirectedRectangle, Equation, EquationKind, SignAssignment, annulus_kind
)
from pinfloer.schemas.reports import SignViolation, SignVerificationReport
from pinfloer.services.clifford import CliffordService

logger = logging.getLogger(__name__)

FREE_VARIABLE_RULES = ("zeros", "seeded")

PartialState = Tuple[Tuple[int, int], ...]
GroupKey = Tuple[PartialState, PartialState, FrozenSet[Tuple[int, int]], FrozenSet[Tuple[int, int]]]
Decomposition = Tuple[DirectedRectangle, DirectedRectangle]


def _rectangles(n: int, direction: int) -> List[DirectedRectangle]:
    return [
        DirectedRectangle(n, a, c, b, d, direction)
        for a in range(n) for c in range(n) if c != a
        for b in range(n) for d in range(n) if d != b
    ]


def _compose(r1: DirectedRectangle, r2: DirectedRectangle) -> Optional[Tuple[PartialState, PartialState]]:
    """Partial states (x, z) for r1 followed by r2, or None when r2 cannot follow r1"""
    x = r1.initial_points()
    y = r1.terminal_points()
    used_rows = set(x.values())
    for column, row in r2.initial_points().items():
        if column in y:
            if y[column] != row:
                return None
        elif row in used_rows:
            return None
        else:
            x[column] = row
            y[column] = row
    y.update(r2.terminal_points())
    return tuple(sorted(x.items())), tuple(sorted(y.items()))


def _decompositions(rectangles: Sequence[DirectedRectangle],
                    candidates: Sequence[DirectedRectangle],
                    footprints: Dict[DirectedRectangle, FrozenSet[Tuple[int, int]]]
                    ) -> List[Tuple[GroupKey, Decomposition]]:
    found = []
    for r1 in rectangles:
        cells1 = footprints[r1]
        for r2 in candidates:
            states = _compose(r1, r2)
            if states is None:
                continue
            cells2 = footprints[r2]
            # cells covered once, then cells covered twice
            found.append(((states[0], states[1], cells1 ^ cells2, cells1 & cells2), (r1, r2)))
    return found


@lru_cache(maxsize=32)
def _constraint_system(n: int, direction: int, include_annuli: bool) -> ConstraintSystem:
    started = time.perf_counter()
    rectangles = _rectangles(n, direction)
    chunks = chunked(rectangles, 4 * thread_count())
    footprints = {r: frozenset(r.cells()) for r in rectangles}
    groups: Dict[GroupKey, List[Decomposition]] = {}
    for part in parallel_map(lambda chunk: _decompositions(chunk, rectangles, footprints), chunks):
        for key, decomposition in part:
            groups.setdefault(key, []).append(decomposition)

    system = ConstraintSystem(n, direction, rectangles)
    annuli = set()
    for (x, z, _, _), decompositions in groups.items():
        if x == z:
            if not include_annuli:
                continue
            for r1, r2 in decompositions:
                kind = annulus_kind(r1, r2)
                if kind is None:
                    continue
                rhs = 1 if kind == EquationKind.VERTICAL_ANNULUS else 0
                annuli.add(Equation(kind, tuple(sorted((r1, r2))), rhs))
            continue
        # the square rule only binds regions with exactly two decompositions
        if len(decompositions) != 2:
            continue
        (r1, r2), (s1, s2) = decompositions
        relation = CliffordService.lift_commutation_sign(
            n, [r1.transposition, r2.transposition], [s1.transposition, s2.transposition]
        )
        rhs = 0 if relation == -1 else 1
        rectangles_used = tuple(sorted((r1, r2, s1, s2)))
        if rhs == 0 and not any(count % 2 for count in Counter(rectangles_used).values()):
            continue
        system.equations.append(Equation(EquationKind.SQUARE, rectangles_used, rhs))
    system.equations.sort(key=lambda e: (e.kind.value, e.rectangles, e.rhs))
    system.equations.extend(sorted(annuli, key=lambda e: (e.kind.value, e.rectangles)))
    logger.info(
        f"Built sign constraints for n={n}, direction {direction}: {len(rectangles)} unknowns, "
        f"{len(system.equations)} equations in {time.perf_counter() - started:.2f}s"
    )
    return system


def _eliminate(system: ConstraintSystem) -> Dict[int, Tuple[int, int]]:
    """Row-reduce over GF(2); pivots keyed by their highest variable"""
    pivots: Dict[int, Tuple[int, int]] = {}
    for equation in system.equations:
        mask, rhs = system.mask(equation), equation.rhs
        while mask:
            top = mask.bit_length() - 1
            if top not in pivots:
                pivots[top] = (mask, rhs)
                break
            pivot_mask, pivot_rhs = pivots[top]
            mask ^= pivot_mask
            rhs ^= pivot_rhs
        if not mask and rhs:
            logger.error(
                f"Inconsistent sign constraints for n={system.n}",
                extra={"certificate": equation.describe()}
            )
            raise SignAssignmentException(system.n, equation.describe())
    return pivots


def _parity(bits: int) -> int:
    return bin(bits).count("1") & 1


class SignService:
    """Service class for sign assignment construction and verification"""

    @staticmethod
    def enumerate_rectangles(n: int) -> List[DirectedRectangle]:
        """
        All directed rectangles of the n x n grid torus

        Args:
            n: grid size, at least 2

        Returns:
            List[DirectedRectangle]: 2 * (n(n-1))^2 rectangles in sorted order
        """
        if n < 2:
            raise InvalidInputException(f"grid size must be at least 2, got {n}")
        return sorted(_rectangles(n, 0) + _rectangles(n, 1))

    @staticmethod
    def build_constraints(n: int, direction: int = 0, include_annuli: bool = True) -> ConstraintSystem:
        """
        Parity equations for the rectangles of one direction

        Square equations come from composite regions with two decompositions; thin
        annuli give s(r1) + s(r2) = 0 (horizontal) or 1 (vertical).
        """
        if n < 2:
            raise InvalidInputException(f"grid size must be at least 2, got {n}")
        if direction not in (0, 1):
            raise InvalidInputException(f"direction must be 0 or 1, got {direction}")
        return _constraint_system(n, direction, include_annuli)

    @staticmethod
    def system_rank(system: ConstraintSystem) -> int:
        return len(_eliminate(system))

    @staticmethod
    def solve(system: ConstraintSystem, rule: str = "zeros", seed: int = 0) -> Dict[DirectedRectangle, int]:
        """
        Solve a constraint system, fixing free variables by rule

        Args:
            system: parity equations
            rule: "zeros" sets every free variable to 0; "seeded" draws them from random.Random(seed)
            seed: seed for the seeded rule

        Returns:
            Dict[DirectedRectangle, int]: +1/-1 per rectangle

        Raises:
            SignAssignmentException: If the equations are inconsistent
        """
        if rule not in FREE_VARIABLE_RULES:
            raise InvalidInputException(f"unknown free-variable rule {rule!r}")
        pivots = _eliminate(system)
        rng = random.Random(seed)
        solution = 0
        for index in range(len(system.variables)):
            if index in pivots:
                continue
            if rule == "seeded" and rng.random() < 0.5:
                solution |= 1 << index
        for top in sorted(pivots):
            mask, rhs = pivots[top]
            if rhs ^ _parity(mask & ~(1 << top) & solution):
                solution |= 1 << top
        return {r: -1 if solution >> i & 1 else 1 for i, r in enumerate(system.variables)}

    @staticmethod
    def construct_sign_assignment(n: int, rule: str = "zeros", seed: int = 0) -> SignAssignment:
        """
        Build a sign assignment for the n x n grid

        Args:
            n: grid size, at least 2
            rule: free-variable rule, "zeros" or "seeded"
            seed: seed for the seeded rule

        Returns:
            SignAssignment: satisfies every square and annulus equation

        Raises:
            SignAssignmentException: If a constraint system is inconsistent
        """
        if n < 2:
            raise InvalidInputException(f"grid size must be at least 2, got {n}")
        try:
            signs: Dict[DirectedRectangle, int] = {}
            for direction in (0, 1):
                signs.update(SignService.solve(SignService.build_constraints(n, direction), rule, seed))
            logger.info(f"Constructed sign assignment for n={n} with rule {rule}")
            return SignAssignment(n, signs)
        except Exception as e:
            logger.error(f"Error constructing sign assignment for n={n}: {e}")
            raise

    @staticmethod
    def default_assignment(n: int) -> SignAssignment:
        """Deterministic assignment used when no signs file is given"""
        if n > config.SIGN_ASSIGNMENT_MAX_SIZE:
            logger.warning(f"Building a sign assignment for n={n} on demand; this is slow")
        return _default_assignment(n)

    @staticmethod
    def verify_sign_assignment(assignment: SignAssignment) -> SignVerificationReport:
        """
        Check every constraint against an assignment

        Args:
            assignment: signs for all directed rectangles of one grid size

        Returns:
            SignVerificationReport: equation counts per kind and all violated equations

        Raises:
            DimensionMismatchException: If the assignment does not cover exactly the rectangles of its size
        """
        n = assignment.n
        expected = 2 * (n * (n - 1)) ** 2
        if len(assignment) != expected:
            raise DimensionMismatchException(expected, len(assignment), "rectangle count")
        counts: Dict[str, int] = {kind.value: 0 for kind in EquationKind}
        violations: List[SignViolation] = []
        for direction in (0, 1):
            system = SignService.build_constraints(n, direction)
            for kind, total in system.counts().items():
                counts[kind] += total
            for equation in system.equations:
                value = sum(1 for r in equation.rectangles if assignment.sign(r) < 0) % 2
                if value != equation.rhs:
                    violations.append(SignViolation(**equation.describe()))
        report = SignVerificationReport(
            n=n,
            equation_counts=counts,
            violations=violations,
            violation_count=len(violations),
            passed=not violations,
        )
        if violations:
            logger.warning(f"Sign assignment for n={n} violates {len(violations)} equation(s)")
        return report

    @staticmethod
    def effective_sign(assignment: SignAssignment, rectangle: DirectedRectangle,
                       state: Sequence[int]) -> int:
        """S(r) times the lift cocycle of the state at the columns of r"""
        return assignment.sign(rectangle) * CliffordService.lift_cocycle(state, rectangle.a, rectangle.c)


@lru_cache(maxsize=16)
def _default_assignment(n: int) -> SignAssignment:
    return SignService.construct_sign_assignment(n)
