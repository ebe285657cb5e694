"""
Report schemas emitted by the command line tool
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, Field, validator

from .base import BaseReport


class SignViolation(BaseModel):
    """One violated parity equation"""
    kind: str = Field(..., description="square, horizontal_annulus or vertical_annulus")
    rectangles: List[List[int]] = Field(..., description="1-indexed a c b d dir of each rectangle")
    rhs: int = Field(..., ge=0, le=1)


class SignVerificationReport(BaseReport):
    """Result of checking a sign assignment against all constraints"""
    n: int = Field(..., ge=2)
    equation_counts: Dict[str, int]
    violations: List[SignViolation] = Field(default_factory=list)
    violation_count: int = 0
    passed: bool = True

    @validator('violation_count')
    def validate_violation_count(cls, v, values):
        if v != len(values.get('violations', [])):
            raise ValueError('violation_count must match the number of violations')
        return v


class SignBuildReport(BaseReport):
    """Summary of a constructed sign assignment"""
    n: int = Field(..., ge=2)
    rule: str
    seed: int = 0
    rectangle_count: int
    equation_counts: Dict[str, int]
    ranks: Dict[str, int] = Field(..., description="rank of the constraint system per direction")
    free_variables: int
    output: Optional[str] = None


class PinDemoReport(BaseReport):
    """Pin(1) structure and a double-cover sample"""
    n: int
    pin_one_table: Dict[str, str]
    pin_one_splitting: Dict[str, str]
    signed_basis_group_size: int
    samples: int
    kernel: List[str]
    double_cover_failures: int


class GeneratorGrading(BaseModel):
    permutation: List[int] = Field(..., description="1-indexed sigma")
    signs: List[int]
    gr_hf: int = Field(..., ge=0, le=1)


class GradingReport(BaseReport):
    """Betti numbers, canonical orientation and generator gradings of a diagram"""
    genus: int = Field(..., ge=1)
    b1: int
    h2: int
    canonical_orientation: List[List[str]]
    generators: List[GeneratorGrading] = Field(default_factory=list)
    euler_characteristic: int


class HomologyEntry(BaseModel):
    maslov: int
    alexander: str
    free_rank: int = Field(..., ge=0)
    torsion: List[int] = Field(default_factory=list)


class HomologyReport(BaseReport):
    """Bigraded tilde homology of a grid diagram"""
    n: int
    flavor: str = "tilde"
    components: int
    generator_count: int
    total_rank: int
    torsion_free: bool
    groups: List[HomologyEntry] = Field(default_factory=list)
    mod2_consistent: bool
    euler_characteristic: str
    normalized_alexander: str


class MinusReport(BaseReport):
    """d^2 = 0 certificate for the minus and unblocked complexes"""
    n: int
    flavor: str = "minus"
    generator_count: int
    entry_count: int
    boundary_squared_zero: bool
    annuli_certified: bool
    horizontal_terms: int
    vertical_terms: int


class MoveComparison(BaseModel):
    move: str
    size_before: int
    size_after: int
    rank_before: int
    rank_after: int
    torsion_before: List[int] = Field(default_factory=list)
    torsion_after: List[int] = Field(default_factory=list)
    passed: bool


class MoveCheckReport(BaseReport):
    """Tilde homology before and after grid moves"""
    n: int
    comparisons: List[MoveComparison] = Field(default_factory=list)
    passed: bool


class TriangleRow(BaseModel):
    k: int = Field(..., ge=1)
    n_z: List[int]
    parities: List[int]
    untwisted_sum: int
    twisted_sum: int
    rotation_ok: bool


class TriangleReport(BaseReport):
    """Per-k triangle counts, generating functions and the bigon check"""
    max_k: int = Field(..., ge=1)
    twisted: bool
    rows: List[TriangleRow] = Field(default_factory=list)
    untwisted_series: str
    twisted_series: str
    complete: bool
    bigon_signs: List[int]
    bigon_rank: int
    passed: bool
