"""
Exact Clifford algebra value types over Q(sqrt 2)
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple, Union

Blade = Tuple[int, ...]
Number = Union[int, Fraction, "Scalar"]

def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None"""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Scalar:
    """The number a + b*sqrt(2) with rational a, b"""
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, value: Union[Number, str]) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(Fraction(value), Fraction(0))

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse "a", "b*r2", "a+b*r2" or "a-r2" style literals."""
        body = text.replace(" ", "")
        try:
            if not body.endswith("r2"):
                return cls(Fraction(body), Fraction(0))
            body = body[:-2].rstrip("*")
            split = max(body.rfind("+"), body.rfind("-"))
            a_part, b_part = (body[:split], body[split:]) if split > 0 else ("", body)
            a = Fraction(a_part) if a_part else Fraction(0)
            if b_part in ("", "+"):
                b = Fraction(1)
            elif b_part == "-":
                b = Fraction(-1)
            else:
                b = Fraction(b_part)
            return cls(a, b)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"cannot parse scalar {text!r}") from e

    @classmethod
    def sqrt2(cls) -> "Scalar":
        return cls(Fraction(0), Fraction(1))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: Number) -> "Scalar":
        other = Scalar.of(other)
        return Scalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b)

    def __sub__(self, other: Number) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.of(other) - self

    def __mul__(self, other: Number) -> "Scalar":
        other = Scalar.of(other)
        return Scalar(self.a * other.a + 2 * self.b * other.b,
                      self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 2 b^2"""
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "Scalar":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("Scalar division by zero")
        conj = self.conjugate()
        return Scalar(conj.a / norm, conj.b / norm)

    def __truediv__(self, other: Number) -> "Scalar":
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return Scalar.of(other) * self.inverse()

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(2)"""
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def sqrt(self) -> Optional["Scalar"]:
        """Non-negative square root inside Q(sqrt 2), or None if it does not exist there."""
        if self.sign() < 0:
            return None
        if self.is_zero():
            return Scalar()
        if self.b == 0:
            root = rational_sqrt(self.a)
            if root is not None:
                return Scalar(root, 0)
            # a = 2 d^2 gives d*sqrt(2)
            half = rational_sqrt(self.a / 2)
            return Scalar(0, half) if half is not None else None
        disc = rational_sqrt(self.norm())
        if disc is None:
            return None
        for x in ((self.a + disc) / 2, (self.a - disc) / 2):
            c = rational_sqrt(x)
            if c is None or c == 0:
                continue
            root = Scalar(c, self.b / (2 * c))
            if root.sign() < 0:
                root = -root
            if root * root == self:
                return root
        return None

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        b_part = "r2" if abs(self.b) == 1 else f"{abs(self.b)}*r2"
        if self.a == 0:
            return b_part if self.b > 0 else f"-{b_part}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{b_part}"


ZERO = Scalar()
ONE = Scalar(1, 0)

Vector = Tuple[Scalar, ...]


def as_vector(values: Iterable[Union[Number, str]]) -> Vector:
    return tuple(Scalar.of(v) for v in values)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = ZERO
    for x, y in zip(u, v):
        total = total + x * y
    return total


def blade_key(blade: Blade) -> Tuple[int, Blade]:
    return (len(blade), blade)


@lru_cache(maxsize=65536)
def blade_product(left: Blade, right: Blade) -> Tuple[int, Blade]:
    """e_left * e_right = sign * e_result, using e_i^2 = +1"""
    swaps = sum(1 for i in left for j in right if i > j)
    result = tuple(sorted(set(left).symmetric_difference(right)))
    return (-1 if swaps % 2 else 1), result


@dataclass(frozen=True)
class CliffordElement:
    """Element of the real Clifford algebra on n generators with e_i^2 = +1"""
    dimension: int
    terms: Tuple[Tuple[Blade, Scalar], ...] = ()

    @classmethod
    def from_dict(cls, dimension: int, coefficients: Dict[Blade, Scalar]) -> "CliffordElement":
        cleaned = []
        for blade, coefficient in coefficients.items():
            coefficient = Scalar.of(coefficient)
            if coefficient.is_zero():
                continue
            if any(i < 1 or i > dimension for i in blade) or list(blade) != sorted(set(blade)):
                raise ValueError(f"blade {blade} is not a sorted subset of 1..{dimension}")
            cleaned.append((tuple(blade), coefficient))
        cleaned.sort(key=lambda item: blade_key(item[0]))
        return cls(dimension, tuple(cleaned))

    @classmethod
    def scalar(cls, dimension: int, value: Number = 1) -> "CliffordElement":
        return cls.from_dict(dimension, {(): Scalar.of(value)})

    @classmethod
    def basis(cls, dimension: int, index: int) -> "CliffordElement":
        return cls.from_dict(dimension, {(index,): ONE})

    @classmethod
    def from_vector(cls, vector: Sequence[Scalar]) -> "CliffordElement":
        return cls.from_dict(len(vector), {(i + 1,): c for i, c in enumerate(vector)})

    @property
    def coefficients(self) -> Dict[Blade, Scalar]:
        return dict(self.terms)

    def coefficient(self, blade: Blade) -> Scalar:
        for key, value in self.terms:
            if key == blade:
                return value
        return ZERO

    def __iter__(self) -> Iterator[Tuple[Blade, Scalar]]:
        return iter(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(blade == () for blade, _ in self.terms)

    def leading(self) -> Optional[Tuple[Blade, Scalar]]:
        """First nonzero term in (grade, blade) order"""
        return self.terms[0] if self.terms else None

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        if other.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        acc = dict(self.terms)
        for blade, c in other.terms:
            acc[blade] = acc.get(blade, ZERO) + c
        return CliffordElement.from_dict(self.dimension, acc)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.dimension, tuple((b, -c) for b, c in self.terms))

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def scale(self, factor: Number) -> "CliffordElement":
        factor = Scalar.of(factor)
        return CliffordElement.from_dict(self.dimension, {b: c * factor for b, c in self.terms})

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        if other.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        acc: Dict[Blade, Scalar] = {}
        for left, x in self.terms:
            for right, y in other.terms:
                sign, blade = blade_product(left, right)
                product = x * y
                acc[blade] = acc.get(blade, ZERO) + (product if sign > 0 else -product)
        return CliffordElement.from_dict(self.dimension, acc)

    def reverse(self) -> "CliffordElement":
        """Reversion anti-automorphism: e_A -> (-1)^{k(k-1)/2} e_A"""
        return CliffordElement(self.dimension, tuple(
            (b, c if (len(b) * (len(b) - 1) // 2) % 2 == 0 else -c) for b, c in self.terms
        ))

    def grade_parts(self) -> Dict[int, "CliffordElement"]:
        parts: Dict[int, Dict[Blade, Scalar]] = {}
        for blade, c in self.terms:
            parts.setdefault(len(blade), {})[blade] = c
        return {k: CliffordElement.from_dict(self.dimension, v) for k, v in sorted(parts.items())}

    def embed(self, offset: int, total: int) -> "CliffordElement":
        """Shift generator indices by offset inside a Clifford algebra on `total` generators."""
        return CliffordElement.from_dict(total, {tuple(i + offset for i in b): c for b, c in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for blade, c in self.terms:
            name = "*".join(f"e{i}" for i in blade)
            parts.append(f"({c})" + (f"*{name}" if name else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class PinElement:
    """Product of unit vectors, remembered together with its factors"""
    value: CliffordElement
    parity: int
    provenance: Tuple[Vector, ...] = field(default=(), compare=False)

    @property
    def dimension(self) -> int:
        return self.value.dimension

    def __mul__(self, other: "PinElement") -> "PinElement":
        return PinElement(self.value * other.value, (self.parity + other.parity) % 2,
                          self.provenance + other.provenance)

    def neg(self) -> "PinElement":
        """-p, realized as e1 * (-e1) * p so the provenance stays a list of unit vectors"""
        n = self.dimension
        e1 = tuple(ONE if i == 0 else ZERO for i in range(n))
        minus_e1 = tuple(-c for c in e1)
        return PinElement(-self.value, self.parity, (e1, minus_e1) + self.provenance)

    def __neg__(self) -> "PinElement":
        return self.neg()

    def inverse(self) -> "PinElement":
        # unit vectors are their own inverses
        value = CliffordElement.scalar(self.dimension)
        for v in reversed(self.provenance):
            value = value * CliffordElement.from_vector(v)
        return PinElement(value, self.parity, tuple(reversed(self.provenance)))

    def embed(self, offset: int, total: int) -> "PinElement":
        pad_left = (ZERO,) * offset
        pad_right = (ZERO,) * (total - offset - self.dimension)
        return PinElement(
            self.value.embed(offset, total),
            self.parity,
            tuple(pad_left + v + pad_right for v in self.provenance),
        )

    def is_even(self) -> bool:
        return self.parity == 0


@dataclass(frozen=True)
class CoupledSpinElement:
    """Class [(p, q)] in Spin(n; m), stored by its normalized representative"""
    n: int
    m: int
    p: PinElement
    q: PinElement

    @classmethod
    def normalized(cls, p: PinElement, q: PinElement) -> "CoupledSpinElement":
        if (p.parity + q.parity) % 2:
            raise ValueError("coupled Spin representatives need even total parity")
        lead = p.value.leading()
        if lead is not None and lead[1].sign() < 0:
            p, q = p.neg(), q.neg()
        return cls(p.dimension, q.dimension, p, q)

    @classmethod
    def unit(cls, n: int, m: int) -> "CoupledSpinElement":
        return cls.normalized(
            PinElement(CliffordElement.scalar(n), 0),
            PinElement(CliffordElement.scalar(m), 0),
        )


@dataclass(frozen=True)
class OrthogonalMatrix:
    """Square matrix with Scalar entries"""
    rows: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Union[Number, str]]]) -> "OrthogonalMatrix":
        return cls(tuple(tuple(Scalar.of(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "OrthogonalMatrix":
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "OrthogonalMatrix":
        return OrthogonalMatrix(tuple(zip(*self.rows))) if self.rows else self

    def __matmul__(self, other: "OrthogonalMatrix") -> "OrthogonalMatrix":
        cols = [other.column(j) for j in range(other.size)]
        return OrthogonalMatrix(tuple(tuple(dot(row, col) for col in cols) for row in self.rows))

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        return tuple(dot(row, vector) for row in self.rows)

    def is_square(self) -> bool:
        return all(len(row) == len(self.rows) for row in self.rows)

    def is_orthogonal(self) -> bool:
        if not self.is_square():
            return False
        return self.transpose() @ self == OrthogonalMatrix.identity(self.size)

    def block_sum(self, other: "OrthogonalMatrix") -> "OrthogonalMatrix":
        n, m = self.size, other.size
        rows = [tuple(row) + (ZERO,) * m for row in self.rows]
        rows += [(ZERO,) * n + tuple(row) for row in other.rows]
        return OrthogonalMatrix(tuple(rows))

    def determinant(self) -> Scalar:
        """Determinant by Gaussian elimination over Q(sqrt 2)"""
        work = [list(row) for row in self.rows]
        n = len(work)
        det = ONE
        for col in range(n):
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
            if pivot is None:
                return ZERO
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            inv = work[col][col].inverse()
            det = det * work[col][col]
            for r in range(col + 1, n):
                factor = work[r][col] * inv
                if factor.is_zero():
                    continue
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return det
