from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class _Record(BaseModel):
    model_config = ConfigDict(populate_by_name=True)


class ResidualRecord(_Record):
    check_id: str = Field(alias="check-id")
    label: str
    index: list[int]
    residual_is_zero: bool = Field(alias="residual-is-zero")
    residual_norm0: int = Field(alias="residual-norm0")
    counterexample: list[int] | None = None


class RankRecord(_Record):
    check_id: str = Field(alias="check-id")
    label: str
    i: int
    j: int
    observed: int
    expected: int
    ok: bool


class CheckResult(_Record):
    check_id: str = Field(alias="check-id")
    applicable: bool
    passed: bool
    error: str | None = None
    residuals: list[ResidualRecord] = []
    ranks: list[RankRecord] = []
    elapsed: float | None = None


class LeonardRow(_Record):
    i: int
    theta: str
    thetastar: str
    a: str
    x: str | None = None
    b: str | None = None
    c: str | None = None
    phi: str | None = None


class LeonardTable(_Record):
    schema_version: int = Field(1, alias="schema")
    field: str
    d: int
    rows: list[LeonardRow]


class SystemReport(_Record):
    index: int
    d: int
    theta: list[str]
    thetastar: list[str]
    shape: list[int]
    parameters: dict[str, str]
    split_bases: list[list[list[str]]] = Field(alias="split-bases")
    passed: bool
    checks: list[CheckResult]
    leonard: LeonardTable | None = None
    timings: dict[str, float] | None = None


class VerificationReport(_Record):
    schema_version: int = Field(1, alias="schema")
    source: str
    field: str
    verdict: str
    detail: str = ""
    systems_found: int = Field(alias="systems-found")
    passed: bool
    systems: list[SystemReport] = []
    timings: dict[str, float] | None = None
