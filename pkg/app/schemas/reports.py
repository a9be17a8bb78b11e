from typing import Any, Optional

from pydantic import BaseModel, Field


class IdealReport(BaseModel):
    ring: list[str]
    order: str
    generators: list[str]
    provenance: list[str] = Field(default_factory=list)


class ComponentOut(BaseModel):
    index: int
    generators: list[str]
    dimension: int
    hilbert: Optional[int] = Field(None, description="Standard monomials of multidegree (1, …, 1)")
    kind: Optional[str] = None
    label: Optional[str] = None
    confidence: str
    evidence: list[str] = Field(default_factory=list)


class DecompositionReport(BaseModel):
    summary: str
    validated: bool
    radical: bool
    components: list[ComponentOut]
    dual_graph: list[tuple[int, int]]
    notes: list[str] = Field(default_factory=list)


class HullReport(BaseModel):
    min_hull: list[str]
    max_hull: list[str]
    candidates: list[str]
    sketch: list[dict[str, Any]] = Field(default_factory=list)


class BoundsReport(BaseModel):
    lower: int
    upper: Optional[int] = None
    schubert_cells: int
    flag_dimension: int
    multiplicity_free: bool


class CheckOut(BaseModel):
    name: str
    passed: bool
    witness: str = ""


class ChecksReport(BaseModel):
    passed: bool
    checks: list[CheckOut]


class ExperimentRowOut(BaseModel):
    trial: int
    exponents: list[int]
    components: int
    bound: int
    attained: bool


class VerifyReport(BaseModel):
    case: str
    passed: bool
    expected: str
    actual: str


class RunReport(BaseModel):
    """Structured result of one command; exactly the sections the command produces are set."""

    command: str
    flag: str
    d: int
    configuration: list[str]
    seed: int
    passed: bool = True
    ideal: Optional[IdealReport] = None
    decomposition: Optional[DecompositionReport] = None
    hull: Optional[HullReport] = None
    bounds: Optional[BoundsReport] = None
    checks: Optional[ChecksReport] = None
    experiment: Optional[list[ExperimentRowOut]] = None
    verify: Optional[VerifyReport] = None
