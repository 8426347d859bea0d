"""
Pydantic models for machine-readable records

Field order is the serialization order; `model_dump_json()` emits compact
JSON, so every record is bit-exact across runs.
"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


# Laurent polynomial machine form: [[k, c], ...], ascending k, no zero c
LaurentPairs = List[Tuple[int, int]]


class WindowRecord(BaseModel):
    """An element of Sigma_d"""
    d: int = Field(..., ge=3, description="Rank")
    w: List[int] = Field(..., description="Window w(1), ..., w(2d)")


class TermRecord(BaseModel):
    """One basis term of a Hecke algebra element"""
    w: List[int]
    coeff: LaurentPairs


class HeckeEltRecord(BaseModel):
    """Hecke algebra element, terms sorted by window"""
    d: int = Field(..., ge=3)
    terms: List[TermRecord] = Field(default_factory=list)


class KLRecord(BaseModel):
    """One cache line: P_{y,w}"""
    d: int = Field(..., ge=3)
    y: List[int]
    w: List[int]
    p: LaurentPairs


class KLTableRecord(BaseModel):
    d: int = Field(..., ge=3)
    entries: List[KLRecord] = Field(default_factory=list)


class FactorRecord(BaseModel):
    """Reduced word of an element, letters in product order"""
    d: int = Field(..., ge=3)
    w: List[int]
    rho_prefix: bool
    word: List[str] = Field(..., description="Generator letters, e.g. ['T1', 'T2']")
    monomial: str = Field(..., description="Rendered product, e.g. 'T1 * T2 * Trho'")
    replayed: Optional[bool] = Field(None, description="Set when --replay was requested")


class LengthRecord(BaseModel):
    d: int = Field(..., ge=3)
    w: List[int]
    length: int = Field(..., ge=0)


class BruhatRecord(BaseModel):
    d: int = Field(..., ge=3)
    y: List[int]
    w: List[int]
    y_leq_w: bool
    w_leq_y: bool
    y_dominated_by_w: bool = Field(..., description="Column-count criterion y <= w")


class CompositionsRecord(BaseModel):
    n: int = Field(..., ge=2)
    d: int = Field(..., ge=3)
    compositions: List[List[int]]


class MatrixRecord(BaseModel):
    d: int = Field(..., ge=3)
    w: List[int]
    rows: List[int]
    cols: List[int]
    block: List[List[int]]


class RelationResult(BaseModel):
    """Outcome of one defining relation"""
    name: str
    passed: bool
    detail: Optional[str] = None


class RelationReport(BaseModel):
    d: int = Field(..., ge=3)
    results: List[RelationResult] = Field(default_factory=list)
    passed: bool


class PositivityViolation(BaseModel):
    """Witness of a structure constant outside N[v, v^-1]"""
    x: List[int]
    y: List[int]
    z: List[int]
    coefficient: LaurentPairs


class PositivityReport(BaseModel):
    d: int = Field(..., ge=3)
    max_length: int = Field(..., ge=0)
    pairs_checked: int = Field(..., ge=0)
    violations: List[PositivityViolation] = Field(default_factory=list)
    passed: bool


class SuiteReport(BaseModel):
    """Result of one verification suite"""
    name: str
    passed: bool
    checked: int = Field(0, ge=0, description="Number of individual assertions evaluated")
    failures: List[str] = Field(default_factory=list)


class CheckReport(BaseModel):
    d: int = Field(..., ge=3)
    max_length: int = Field(..., ge=0)
    suites: List[SuiteReport] = Field(default_factory=list)
    passed: bool


class ErrorRecord(BaseModel):
    """Error response model"""
    error: str
    detail: Optional[str] = None
    exit_code: int
