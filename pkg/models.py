"""Data models for the cohomology engine's reports and configuration."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from config import (
    COEFFICIENT_LABELS,
    DEFAULT_COEFF,
    DEFAULT_FORMAT,
    DEFAULT_K,
    DEFAULT_M,
    DEFAULT_N,
    DEFAULT_S,
    DEFAULT_SEED,
    OUTPUT_FORMATS,
    TENSOR_BUDGET,
)


class CliConfig(BaseModel):
    """Validated command-line configuration."""
    command: str
    n: int = Field(DEFAULT_N, ge=2)
    m: int = Field(DEFAULT_M, ge=0)
    k: int = Field(DEFAULT_K, ge=1)
    s: int = Field(DEFAULT_S, ge=1)
    coeff: str = DEFAULT_COEFF
    format: str = DEFAULT_FORMAT
    seed: int = DEFAULT_SEED
    budget: int = Field(TENSOR_BUDGET, ge=1)

    @field_validator("coeff")
    @classmethod
    def known_coeff(cls, value: str) -> str:
        if value.lower() not in COEFFICIENT_LABELS:
            raise ValueError(f"unknown coefficient mode '{value}'")
        return value.lower()

    @field_validator("format")
    @classmethod
    def known_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format '{value}'")
        return value


class GroupEntry(BaseModel):
    """Cohomology group in one degree: free rank plus torsion summands."""
    degree: int
    rank: int = Field(ge=0)
    torsion: List[str] = []


class GradedGroupTable(BaseModel):
    """Additive cohomology of a space, degree by degree."""
    space: str
    n: int
    k: int
    coeff: str
    groups: List[GroupEntry] = []

    def rank(self, degree: int) -> int:
        for entry in self.groups:
            if entry.degree == degree:
                return entry.rank
        return 0

    def torsion(self, degree: int) -> List[str]:
        for entry in self.groups:
            if entry.degree == degree:
                return entry.torsion
        return []

    def ranks(self) -> Dict[int, int]:
        return {entry.degree: entry.rank for entry in self.groups if entry.rank}


class DegreeReport(BaseModel):
    """Computed against predicted invariants in one degree."""
    degree: int
    computed_dim: int
    predicted_dim: int
    match: bool
    witnesses: List[str] = []


class InvariantReport(BaseModel):
    """Degreewise comparison of computed and predicted invariants."""
    kind: str
    n: int
    m: int
    subgroup: List[int]
    degrees: List[DegreeReport]
    poincare: List[int]
    passed: bool


class IdentityResult(BaseModel):
    """Outcome of one identity checked over all admissible index tuples."""
    table: str
    label: str
    identity: str
    instances: int
    passed: bool
    failures: List[Dict[str, int]] = []


class VerificationReport(BaseModel):
    """Outcome of a relation-table verification."""
    table: str
    n: int
    m: int
    coeff: str
    identities: List[IdentityResult]
    passed: bool


class CheckResult(BaseModel):
    """Outcome of a named property check."""
    name: str
    passed: bool
    detail: str = ""


class ActionReport(BaseModel):
    """Outcome of the group action property suite."""
    n: int
    m: int
    coeff: str
    checks: List[CheckResult]
    passed: bool


class AssociativityReport(BaseModel):
    """Outcome of the random associativity and commutativity harness."""
    family: str
    n: int
    m: int
    trials: int
    commutativity_pairs: int
    passed: bool
    counterexample: Optional[List[str]] = None


class PresentationCheckReport(BaseModel):
    """Outcome of checking an invariant ring against its presentation."""
    kind: str
    n: int
    m: int
    relations: List[IdentityResult]
    checks: List[CheckResult] = []
    graded_dims: List[int]
    isomorphism: Optional[bool] = None
    passed: bool


class EmbeddingReport(BaseModel):
    """Outcome of checking the Arnold ring embedding into the orbit ring."""
    n: int
    k: int
    relations_preserved: bool
    injective: bool
    image_ranks: List[int]
    passed: bool


class SphereComparison(BaseModel):
    """Projective table against the closed-form sphere configuration table."""
    skipped: bool
    reason: Optional[str] = None
    reference: List[GroupEntry] = []
    computed: List[GroupEntry] = []
    equal: Optional[bool] = None


class WitnessComparison(BaseModel):
    """Ranks in degree n-1 of the projective and punctured spaces."""
    degree: int
    projective_rank: int
    punctured_rank: int
    differs: bool


class FieldRankComparison(BaseModel):
    """Ranks over Q against ranks over odd prime fields."""
    coeffs: List[str]
    equal: bool
    mismatches: List[str] = []


class ComparisonReport(BaseModel):
    """Cross-space comparison reports."""
    n: int
    k: int
    sphere: SphereComparison
    witness: WitnessComparison
    field_ranks: FieldRankComparison


class TcReport(BaseModel):
    """Bounds on sequential topological complexity or category."""
    space: str
    n: int
    k: int
    s: int
    lower: int
    upper: int
    exact: Optional[int] = None
    witness: List[str] = []
    mode: str = "witness-search"
    partial: bool = False
    notes: List[str] = []


class SpectralRow(BaseModel):
    """The differential d_n in one fiber degree."""
    q: int
    degree: int
    source_dim: int
    rank: int
    kernel_dim: int
    predicted_kernel_dim: int


class SpectralReport(BaseModel):
    """Permanent cycles of the even-n sphere orbit fibration and its table."""
    n: int
    k: int
    rows: List[SpectralRow]
    table: GradedGroupTable
    passed: bool


class EvalResult(BaseModel):
    """Normal form produced by the eval command."""
    expression: str
    op: str
    result: str


class SuiteReport(BaseModel):
    """Combined outcome of a verify run."""
    suite: str
    n: int
    m: int
    passed: bool
    failures: List[str] = []
    relations: List[VerificationReport] = []
    associativity: Optional[AssociativityReport] = None
    embedding: Optional[EmbeddingReport] = None
    action: Optional[ActionReport] = None
    invariants: List[InvariantReport] = []
    presentations: List[PresentationCheckReport] = []
    comparison: Optional[ComparisonReport] = None
