"""JSON documents for pairs and systems."""

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy.polys.matrices import DomainMatrix

from exact import fields
from exact.matrices import matrix, to_text
from tdpair.errors import InadmissibleParametersError
from tdpair.models import TridiagonalSystem
from tdpair.system import verify_pair

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _as_text(value):
    if isinstance(value, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(value, int):
        return str(value)
    return value


class PairDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    field: str = "rational"
    A: list[list[str]]
    Astar: list[list[str]]

    @field_validator("field", mode="before")
    @classmethod
    def check_field(cls, value) -> str:
        # {"kind": "rational"} or {"kind": "prime", "p": 101}
        if isinstance(value, dict):
            kind = value.get("kind")
            if kind == "rational" and set(value) == {"kind"}:
                return fields.Field.rational().descriptor
            if kind == "prime" and set(value) == {"kind", "p"} and isinstance(value["p"], int):
                return fields.Field.prime(value["p"]).descriptor
            raise ValueError(f"bad field object {value!r}")
        if not isinstance(value, str):
            raise ValueError("field must be a descriptor string or a kind object")
        return fields.Field.parse(value).descriptor

    @field_validator("A", "Astar", mode="before")
    @classmethod
    def stringify(cls, rows):
        if not isinstance(rows, list):
            return rows
        return [[_as_text(x) for x in row] if isinstance(row, list) else row for row in rows]

    @model_validator(mode="after")
    def check_shapes(self):
        n = len(self.A)
        for name, rows in (("A", self.A), ("Astar", self.Astar)):
            if len(rows) != n or any(len(row) != n for row in rows):
                raise ValueError(f"{name} must be {n}x{n}")
        if n == 0:
            raise ValueError("matrices must be nonempty")
        return self

    @property
    def scalar_field(self) -> fields.Field:
        return fields.Field.parse(self.field)

    def matrices(self) -> tuple[DomainMatrix, DomainMatrix]:
        f = self.scalar_field
        return matrix(self.A, f), matrix(self.Astar, f)


class SystemDocument(PairDocument):
    d: int
    theta: list[str]
    thetastar: list[str]
    shape: list[int]

    @field_validator("theta", "thetastar", mode="before")
    @classmethod
    def stringify_sequence(cls, values):
        if not isinstance(values, list):
            return values
        return [_as_text(x) for x in values]


def system_to_document(system: TridiagonalSystem) -> SystemDocument:
    f = system.field
    return SystemDocument(
        field=f.descriptor,
        A=to_text(system.A),
        Astar=to_text(system.Astar),
        d=system.d,
        theta=[f.format_scalar(t) for t in system.theta],
        thetastar=[f.format_scalar(t) for t in system.thetastar],
        shape=list(system.shape),
    )


def load_system(doc: SystemDocument) -> TridiagonalSystem:
    """Rebuild a stored system, revalidating it from scratch."""
    f = doc.scalar_field
    A, Astar = doc.matrices()
    verdict = verify_pair(A, Astar)
    if not verdict.accepted:
        raise InadmissibleParametersError(f"stored pair is not a tridiagonal pair: {verdict.detail}")
    theta = tuple(f.scalar(t) for t in doc.theta)
    thetastar = tuple(f.scalar(t) for t in doc.thetastar)
    for system in verdict.systems:
        if system.theta == theta and system.thetastar == thetastar:
            if list(system.shape) != doc.shape or system.d != doc.d:
                raise InadmissibleParametersError("stored shape or diameter disagrees with the pair")
            return system
    raise InadmissibleParametersError("stored eigenvalue orderings are not standard")


def read_document(path: str | Path) -> PairDocument | SystemDocument:
    """Load a pair or system document; systems are recognised by their eigenvalues."""
    raw = json.loads(Path(path).read_text())
    if isinstance(raw, dict) and "theta" in raw:
        return SystemDocument.model_validate(raw)
    return PairDocument.model_validate(raw)


def dump_document(doc: BaseModel) -> str:
    return json.dumps(doc.model_dump(by_alias=True), sort_keys=True, indent=2) + "\n"
