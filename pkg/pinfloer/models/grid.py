"""
Grid diagrams, grid states, grid moves and bigraded complexes
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

GridState = Tuple[int, ...]
Monomial = Tuple[int, ...]
Differential = Dict[int, Dict[int, Dict[Monomial, int]]]


class Flavor(str, Enum):
    TILDE = "tilde"
    MINUS = "minus"
    UNBLOCKED = "unblocked"


class MarkingKind(str, Enum):
    O = "O"
    X = "X"

    @property
    def other(self) -> "MarkingKind":
        return MarkingKind.X if self == MarkingKind.O else MarkingKind.O


class Corner(str, Enum):
    """Position of the unmarked cell inside a stabilization block"""
    SW = "SW"
    SE = "SE"
    NW = "NW"
    NE = "NE"

    @property
    def east(self) -> bool:
        return self in (Corner.SE, Corner.NE)

    @property
    def north(self) -> bool:
        return self in (Corner.NW, Corner.NE)


class MoveKind(str, Enum):
    COMMUTATION = "commutation"
    TRANSLATION = "translation"
    STABILIZATION = "stabilization"
    DESTABILIZATION = "destabilization"


class Axis(str, Enum):
    COLUMN = "column"
    ROW = "row"


@dataclass(frozen=True)
class GridDiagram:
    """
    n x n toroidal grid. Column i carries an O in row O[i] and an X in row X[i] (0-indexed).

    Markings sit at the cell centres (i + 1/2, O[i] + 1/2); state points sit on lattice points.
    """
    n: int
    O: Tuple[int, ...]
    X: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def component_count(self) -> int:
        return len(self.components)

    def markings(self, kind: MarkingKind) -> Tuple[int, ...]:
        return self.O if kind == MarkingKind.O else self.X

    def marking_at(self, column: int, row: int) -> Optional[MarkingKind]:
        if self.O[column] == row:
            return MarkingKind.O
        if self.X[column] == row:
            return MarkingKind.X
        return None

    def to_text(self) -> str:
        """Grid file contents, 1-indexed"""
        return "\n".join([
            f"n = {self.n}",
            "O: " + " ".join(str(v + 1) for v in self.O),
            "X: " + " ".join(str(v + 1) for v in self.X),
        ]) + "\n"


@dataclass(frozen=True)
class GridMove:
    """
    A move between grid diagrams.

    Commutation swaps `index` and `index + 1` along `axis`; translation shifts the axis cyclically
    by `index`. Stabilization replaces the `marking` at (column, row) by a 2 x 2 block whose
    unmarked cell sits at `corner`; destabilization removes the block with lower-left cell
    (column, row) of the same shape.
    """
    kind: MoveKind
    axis: Axis = Axis.COLUMN
    index: int = 0
    column: int = 0
    row: int = 0
    marking: MarkingKind = MarkingKind.X
    corner: Corner = Corner.SW

    def describe(self) -> str:
        if self.kind == MoveKind.COMMUTATION:
            return f"commute {self.axis.value}s {self.index + 1},{self.index + 2}"
        if self.kind == MoveKind.TRANSLATION:
            return f"translate {self.axis.value}s by {self.index}"
        return f"{self.kind.value} {self.marking.value}:{self.corner.value} at ({self.column + 1},{self.row + 1})"


@dataclass
class BigradedIntegerComplex:
    """
    Grid chain complex.

    differential[x][y] maps a monomial in U_1..U_n (exponent tuple) to its integer coefficient
    in d(x); tilde complexes only use the zero monomial.
    """
    grid: GridDiagram
    flavor: Flavor
    generators: List[GridState]
    maslov: List[int]
    alexander: List[Fraction]
    differential: Differential = field(default_factory=dict)

    def __post_init__(self):
        self.index: Dict[GridState, int] = {x: i for i, x in enumerate(self.generators)}

    def __len__(self) -> int:
        return len(self.generators)

    def bigrading(self, i: int) -> Tuple[int, Fraction]:
        return self.maslov[i], self.alexander[i]

    def entry_count(self) -> int:
        return sum(len(monomials) for row in self.differential.values() for monomials in row.values())


@dataclass(frozen=True)
class AnnulusCertificate:
    """Thin-annulus contributions to d^2 of one generator in the unblocked complex"""
    state: GridState
    horizontal: Dict[Monomial, int]
    vertical: Dict[Monomial, int]
    other: Dict[GridState, Dict[Monomial, int]]
