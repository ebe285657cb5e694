"""
Input file formats: grid files, sign files and diagram JSON
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, Field, ValidationError, validator

from pinfloer.core import config
from pinfloer.core.exceptions import MalformedFileException
from pinfloer.models.signs import DirectedRectangle, SignAssignment

SIGNS_HEADER = "# pinfloer-signs v1"
DIAGRAM_FORMAT = "pinfloer-diagram"


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


class GridFile(BaseModel):
    """`n = <size>`, `O: o_1 ... o_n`, `X: x_1 ... x_n`, rows 1-indexed"""
    n: int = Field(..., ge=2)
    O: List[int]
    X: List[int]

    @validator('O', 'X')
    def validate_length(cls, v, values):
        n = values.get('n')
        if n is not None and len(v) != n:
            raise ValueError(f'expected {n} entries, got {len(v)}')
        if any(not 1 <= r <= (n or len(v)) for r in v):
            raise ValueError('rows must lie in 1..n')
        return v

    @classmethod
    def parse(cls, text: str, path: str = "<grid>") -> "GridFile":
        fields: Dict[str, object] = {}
        for number, line in _content_lines(text):
            key, sep, value = line.partition("=") if line.startswith("n") else line.partition(":")
            key = key.strip()
            if not sep or key not in ("n", "O", "X") or key in fields:
                raise MalformedFileException(path, f"unexpected line {line!r}", number)
            try:
                fields[key] = int(value) if key == "n" else [int(v) for v in value.split()]
            except ValueError:
                raise MalformedFileException(path, f"non-integer entry in {line!r}", number)
        missing = [k for k in ("n", "O", "X") if k not in fields]
        if missing:
            raise MalformedFileException(path, f"missing field(s) {', '.join(missing)}")
        try:
            return cls(**fields)
        except ValidationError as e:
            raise MalformedFileException(path, str(e.errors()[0]["msg"]))

    @property
    def zero_indexed(self):
        return [r - 1 for r in self.O], [r - 1 for r in self.X]


class SignsFile(BaseModel):
    """Optional header, `n=<size>`, then `a c b d dir sign` per directed rectangle"""
    n: int = Field(..., ge=2)
    entries: Dict[DirectedRectangle, int]

    @classmethod
    def parse(cls, text: str, path: str = "<signs>") -> "SignsFile":
        n: Optional[int] = None
        entries: Dict[DirectedRectangle, int] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if number == 1 and line != SIGNS_HEADER:
                    raise MalformedFileException(path, f"unsupported header {line!r}", number)
                continue
            if n is None:
                key, sep, value = line.partition("=")
                if key.strip() != "n" or not sep or not value.strip().isdigit():
                    raise MalformedFileException(path, "expected n=<size> before the rectangles", number)
                n = int(value)
                continue
            parts = line.split()
            try:
                a, c, b, d, direction, sign = (int(p) for p in parts)
            except ValueError:
                raise MalformedFileException(path, f"expected six integers, got {line!r}", number)
            if sign not in (1, -1):
                raise MalformedFileException(path, f"sign must be 1 or -1, got {sign}", number)
            try:
                rectangle = DirectedRectangle(n, a - 1, c - 1, b - 1, d - 1, direction)
            except ValueError as e:
                raise MalformedFileException(path, f"unknown rectangle: {e}", number)
            if rectangle in entries:
                raise MalformedFileException(path, f"duplicate rectangle {line!r}", number)
            entries[rectangle] = sign
        if n is None:
            raise MalformedFileException(path, "missing n=<size>")
        expected = 2 * (n * (n - 1)) ** 2
        if len(entries) != expected:
            raise MalformedFileException(
                path, f"{expected - len(entries)} rectangle(s) missing",
                details={"expected": expected, "found": len(entries)}
            )
        return cls(n=n, entries=entries)

    def to_assignment(self) -> SignAssignment:
        return SignAssignment(self.n, dict(self.entries))

    @staticmethod
    def render(assignment: SignAssignment) -> str:
        return "\n".join([SIGNS_HEADER, f"n={assignment.n}", *assignment.lines()]) + "\n"


class GeneratorSpec(BaseModel):
    permutation: List[int] = Field(..., description="1-indexed sigma")
    signs: List[int]

    @validator('signs')
    def validate_signs(cls, v):
        if any(s not in (1, -1) for s in v):
            raise ValueError('local signs must be 1 or -1')
        return v


class DiagramFile(BaseModel):
    """Genus, curve classes and generators of a Heegaard diagram"""
    format: str = DIAGRAM_FORMAT
    version: int = config.FORMAT_VERSION
    genus: int = Field(..., ge=1)
    alpha: List[List[int]]
    beta: List[List[int]]
    inner_product: Optional[List[List[int]]] = None
    generators: Optional[List[GeneratorSpec]] = None
    intersections: Optional[List[List[List[int]]]] = None

    @validator('format')
    def validate_format(cls, v):
        if v != DIAGRAM_FORMAT:
            raise ValueError(f'format must be {DIAGRAM_FORMAT}')
        return v

    @validator('version')
    def validate_version(cls, v):
        if v != config.FORMAT_VERSION:
            raise ValueError(f'unsupported version {v}')
        return v

    @classmethod
    def parse(cls, text: str, path: str = "<diagram>") -> "DiagramFile":
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            error = e.errors()[0]
            location = ".".join(str(p) for p in error["loc"])
            raise MalformedFileException(path, f"{location}: {error['msg']}" if location else error["msg"])
