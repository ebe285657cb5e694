"""
Sparse integer matrices, chain complexes and homology summaries
"""
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import factorint


class SparseIntMatrix:
    """Integer matrix stored as a dict of rows; zeros are never stored."""

    def __init__(self, n_rows: int, n_cols: int, rows: Optional[Dict[int, Dict[int, int]]] = None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: Dict[int, Dict[int, int]] = {}
        for r, row in (rows or {}).items():
            for c, v in row.items():
                self.add(r, c, v)

    @classmethod
    def from_entries(cls, n_rows: int, n_cols: int,
                     entries: Iterable[Tuple[int, int, int]]) -> "SparseIntMatrix":
        """Build from (row, column, value) triples; repeated coordinates are summed."""
        matrix = cls(n_rows, n_cols)
        for r, c, v in entries:
            matrix.add(r, c, v)
        return matrix

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> "SparseIntMatrix":
        n_rows = len(dense)
        if n_cols is None:
            n_cols = len(dense[0]) if n_rows else 0
        matrix = cls(n_rows, n_cols)
        for r, row in enumerate(dense):
            if len(row) != n_cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    matrix.rows.setdefault(r, {})[c] = int(v)
        return matrix

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def _check(self, r: int, c: int) -> None:
        if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
            raise IndexError(f"entry ({r}, {c}) outside a {self.n_rows}x{self.n_cols} matrix")

    def get(self, r: int, c: int) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def add(self, r: int, c: int, v: int) -> None:
        self._check(r, c)
        if not v:
            return
        row = self.rows.setdefault(r, {})
        total = row.get(c, 0) + int(v)
        if total:
            row[c] = total
        else:
            del row[c]
            if not row:
                del self.rows[r]

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def copy(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.n_rows, self.n_cols, {r: dict(row) for r, row in self.rows.items()})

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.n_cols for _ in range(self.n_rows)]
        for r, c, v in self.entries():
            dense[r][c] = v
        return dense

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_entries(self.n_cols, self.n_rows, ((c, r, v) for r, c, v in self.entries()))

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        result = SparseIntMatrix(self.n_rows, other.n_cols)
        for r, row in self.rows.items():
            acc: Dict[int, int] = {}
            for k, v in row.items():
                for c, w in other.rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                result.rows[r] = acc
        return result

    __matmul__ = matmul

    def mod2_rank(self) -> int:
        """Rank over GF(2), using one int bitset per row"""
        pivots: Dict[int, int] = {}
        for row in self.rows.values():
            mask = 0
            for c, v in row.items():
                if v % 2:
                    mask |= 1 << c
            while mask:
                top = mask.bit_length() - 1
                if top not in pivots:
                    pivots[top] = mask
                    break
                mask ^= pivots[top]
        return len(pivots)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


@dataclass
class SmithForm:
    """M = U * D * V with D diagonal; U and V only when tracked"""
    shape: Tuple[int, int]
    invariant_factors: List[int]
    U: Optional[SparseIntMatrix] = None
    V: Optional[SparseIntMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.invariant_factors if d > 1]

    @property
    def D(self) -> SparseIntMatrix:
        n_rows, n_cols = self.shape
        return SparseIntMatrix(n_rows, n_cols, {i: {i: d} for i, d in enumerate(self.invariant_factors)})


@dataclass
class ChainComplex:
    """
    Finite chain complex of free abelian groups.

    sizes[k] is the rank of C_k and boundaries[k] is the matrix of d_k: C_k -> C_(k-1),
    with one row per generator of C_(k-1) and one column per generator of C_k.
    """
    sizes: Dict[int, int]
    boundaries: Dict[int, SparseIntMatrix] = field(default_factory=dict)
    labels: Dict[int, List[Hashable]] = field(default_factory=dict)

    @property
    def degrees(self) -> List[int]:
        return sorted(self.sizes)

    def size(self, k: int) -> int:
        return self.sizes.get(k, 0)

    def boundary(self, k: int) -> SparseIntMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return SparseIntMatrix(self.size(k - 1), self.size(k))


@dataclass(frozen=True)
class HomologyGroup:
    """Z^free_rank plus the listed cyclic torsion summands"""
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def primary_parts(self) -> Counter:
        """Prime-power orders of the cyclic torsion summands, with multiplicity"""
        parts: Counter = Counter()
        for t in self.torsion:
            for p, e in factorint(t).items():
                parts[p ** e] += 1
        return parts

    @classmethod
    def from_parts(cls, free_rank: int, parts: Counter) -> "HomologyGroup":
        """Group with the given free rank and prime-power torsion, in invariant factor form"""
        by_prime: Dict[int, List[int]] = {}
        for q, count in parts.items():
            by_prime.setdefault(min(factorint(q)), []).extend([q] * count)
        columns = [sorted(powers, reverse=True) for powers in by_prime.values()]
        length = max((len(c) for c in columns), default=0)
        factors = [math.prod(c[i] for c in columns if i < len(c)) for i in range(length)]
        return cls(free_rank, tuple(reversed(factors)))

    def __add__(self, other: "HomologyGroup") -> "HomologyGroup":
        if not isinstance(other, HomologyGroup):
            return NotImplemented
        return HomologyGroup.from_parts(self.free_rank + other.free_rank,
                                        self.primary_parts() + other.primary_parts())

    def without(self, summand: "HomologyGroup") -> Optional["HomologyGroup"]:
        """Complement of a direct summand, or None when `summand` is not one"""
        parts, removed = self.primary_parts(), summand.primary_parts()
        if summand.free_rank > self.free_rank or any(parts[q] < k for q, k in removed.items()):
            return None
        return HomologyGroup.from_parts(self.free_rank - summand.free_rank, parts - removed)

    def mod2_rank(self, tor_below: Tuple[int, ...] = ()) -> int:
        """Dimension of H_k(C; F2) given the torsion of H_(k-1)"""
        return self.free_rank + sum(1 for t in self.torsion if t % 2 == 0) \
            + sum(1 for t in tor_below if t % 2 == 0)


@dataclass
class HomologySummary:
    """Homology by grading key; keys are degrees or (degree, block) pairs"""
    groups: Dict[Any, HomologyGroup] = field(default_factory=dict)

    @property
    def total_rank(self) -> int:
        return sum(g.free_rank for g in self.groups.values())

    @property
    def torsion_free(self) -> bool:
        return all(not g.torsion for g in self.groups.values())

    def rank(self, key: Any) -> int:
        group = self.groups.get(key)
        return group.free_rank if group else 0

    def nonzero(self) -> Dict[Any, HomologyGroup]:
        return {k: g for k, g in self.groups.items() if not g.is_zero()}

    def mod2_ranks(self) -> Dict[Any, int]:
        """
        F2 Betti numbers by the universal coefficient theorem:
        dim H_k(F2) = rank H_k + #even torsion of H_k + #even torsion of H_(k-1).
        Keys of the form (degree, block) look one degree down inside the same block.
        """
        ranks: Dict[Any, int] = {}
        for key, group in self.groups.items():
            below_key = (key[0] - 1,) + tuple(key[1:]) if isinstance(key, tuple) else key - 1
            below = self.groups.get(below_key)
            ranks[key] = group.mod2_rank(below.torsion if below else ())
        for key, group in self.groups.items():
            above_key = (key[0] + 1,) + tuple(key[1:]) if isinstance(key, tuple) else key + 1
            if above_key not in ranks and any(t % 2 == 0 for t in group.torsion):
                ranks[above_key] = sum(1 for t in group.torsion if t % 2 == 0)
        return {k: v for k, v in ranks.items() if v}
