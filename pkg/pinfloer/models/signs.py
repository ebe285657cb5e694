"""
Directed grid rectangles, sign assignments and parity equations
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple


def cyclic_range(start: int, stop: int, n: int) -> List[int]:
    """start, start+1, ..., stop-1 modulo n; empty when start == stop"""
    length = (stop - start) % n
    return [(start + k) % n for k in range(length)]


def strictly_between(value: int, start: int, stop: int, n: int) -> bool:
    """value lies in the open cyclic interval (start, stop)"""
    return 0 < (value - start) % n < (stop - start) % n


@dataclass(frozen=True, order=True)
class DirectedRectangle:
    """
    Rectangle on the n x n grid torus.

    The footprint spans columns a, a+1, ..., c-1 and rows b, ..., d-1 (all mod n).
    Direction 0 has initial corners (a, b), (c, d) and terminal corners (a, d), (c, b);
    direction 1 swaps the two corner pairs.
    """
    n: int
    a: int
    c: int
    b: int
    d: int
    direction: int = 0

    def __post_init__(self):
        n = self.n
        if not all(0 <= v < n for v in (self.a, self.b, self.c, self.d)):
            raise ValueError(f"rectangle corner outside the {n}x{n} torus")
        if self.a == self.c or self.b == self.d:
            raise ValueError("rectangle needs two distinct columns and two distinct rows")
        if self.direction not in (0, 1):
            raise ValueError("direction must be 0 or 1")

    @property
    def width(self) -> int:
        return (self.c - self.a) % self.n

    @property
    def height(self) -> int:
        return (self.d - self.b) % self.n

    @property
    def columns(self) -> List[int]:
        return cyclic_range(self.a, self.c, self.n)

    @property
    def rows(self) -> List[int]:
        return cyclic_range(self.b, self.d, self.n)

    @property
    def transposition(self) -> Tuple[int, int]:
        return (min(self.a, self.c), max(self.a, self.c))

    def initial_points(self) -> Dict[int, int]:
        """column -> row of the initial corners"""
        if self.direction == 0:
            return {self.a: self.b, self.c: self.d}
        return {self.a: self.d, self.c: self.b}

    def terminal_points(self) -> Dict[int, int]:
        if self.direction == 0:
            return {self.a: self.d, self.c: self.b}
        return {self.a: self.b, self.c: self.d}

    def contains_cell(self, column: int, row: int) -> bool:
        """Whether the unit cell with lower-left corner (column, row) lies in the footprint"""
        return (column - self.a) % self.n < self.width and (row - self.b) % self.n < self.height

    def contains_point(self, column: int, row: int) -> bool:
        """Whether the lattice point (column, row) lies in the open interior"""
        return strictly_between(column, self.a, self.c, self.n) and strictly_between(row, self.b, self.d, self.n)

    def cells(self) -> Iterator[Tuple[int, int]]:
        for column in self.columns:
            for row in self.rows:
                yield column, row

    def reversed(self) -> "DirectedRectangle":
        return DirectedRectangle(self.n, self.a, self.c, self.b, self.d, 1 - self.direction)

    def to_line(self) -> str:
        """1-indexed `a c b d dir` fields"""
        return f"{self.a + 1} {self.c + 1} {self.b + 1} {self.d + 1} {self.direction}"

    def describe(self) -> List[int]:
        return [self.a + 1, self.c + 1, self.b + 1, self.d + 1, self.direction]


class EquationKind(str, Enum):
    SQUARE = "square"
    HORIZONTAL_ANNULUS = "horizontal_annulus"
    VERTICAL_ANNULUS = "vertical_annulus"


@dataclass(frozen=True)
class Equation:
    """sum of s(r) over the rectangles = rhs (mod 2), with S(r) = (-1)^s(r)"""
    kind: EquationKind
    rectangles: Tuple[DirectedRectangle, ...]
    rhs: int

    def describe(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "rectangles": [r.describe() for r in self.rectangles],
            "rhs": self.rhs,
        }


@dataclass
class ConstraintSystem:
    """Parity equations on the rectangles of one direction"""
    n: int
    direction: int
    variables: List[DirectedRectangle]
    equations: List[Equation] = field(default_factory=list)

    def __post_init__(self):
        self.index: Dict[DirectedRectangle, int] = {r: i for i, r in enumerate(self.variables)}

    def mask(self, equation: Equation) -> int:
        bits = 0
        for r in equation.rectangles:
            bits ^= 1 << self.index[r]
        return bits

    def counts(self) -> Dict[str, int]:
        totals = {kind.value: 0 for kind in EquationKind}
        for equation in self.equations:
            totals[equation.kind.value] += 1
        return totals


@dataclass(frozen=True)
class SignAssignment:
    """+-1 label for every directed rectangle of an n x n grid"""
    n: int
    signs: Dict[DirectedRectangle, int] = field(hash=False)

    def sign(self, rectangle: DirectedRectangle) -> int:
        return self.signs[rectangle]

    def __len__(self) -> int:
        return len(self.signs)

    def flipped(self, rectangle: DirectedRectangle) -> "SignAssignment":
        signs = dict(self.signs)
        signs[rectangle] = -signs[rectangle]
        return SignAssignment(self.n, signs)

    def lines(self) -> Iterator[str]:
        for rectangle in sorted(self.signs):
            yield f"{rectangle.to_line()} {self.signs[rectangle]}"


def annulus_kind(first: DirectedRectangle, second: DirectedRectangle) -> Optional[EquationKind]:
    """Thin annulus traced by first then second when they return to the initial state"""
    if (second.a, second.c) == (first.a, first.c) and first.width == 1:
        return EquationKind.VERTICAL_ANNULUS
    if (second.a, second.c) == (first.c, first.a) and first.height == 1:
        return EquationKind.HORIZONTAL_ANNULUS
    return None
