from dataclasses import dataclass, field
from enum import Enum

from sympy.polys.matrices import DomainMatrix

from exact.fields import Field, Scalar
from exact.matrices import first_nonzero, nonzero_count
from exact.subspaces import Subspace


class RejectReason(str, Enum):
    NOT_DIAGONALIZABLE = "not_diagonalizable"
    DIAMETER_MISMATCH = "diameter_mismatch"
    NO_STANDARD_ORDERING = "no_standard_ordering"
    REDUCIBLE = "reducible"
    IRREDUCIBILITY_UNDETERMINED = "irreducibility_undetermined"


class Relative(str, Enum):
    STAR = "star"
    DOWN = "down"
    DOUBLE_DOWN = "double_down"
    TIMES = "times"


class CheckId(str, Enum):
    TRIDIAGONAL_RELATIONS = "tridiagonal_relations"
    RFL_RELATIONS = "rfl_relations"
    SPLIT_RELATIONS = "split_relations"
    SPLIT_RANKS = "split_ranks"
    DESCENT = "descent"
    MASTER = "master"
    DIAGRAMS = "diagrams"
    SPLIT_SUMS = "split_sums"
    RFL_RANKS = "rfl_ranks"
    LEONARD = "leonard"
    KRAWTCHOUK = "krawtchouk"


@dataclass(frozen=True, eq=False)
class TridiagonalSystem:
    """(A; E_0..E_d; A*; E*_0..E*_d) with both orderings standard."""

    A: DomainMatrix
    Astar: DomainMatrix
    E: tuple[DomainMatrix, ...]
    Estar: tuple[DomainMatrix, ...]
    theta: tuple[Scalar, ...]
    thetastar: tuple[Scalar, ...]
    shape: tuple[int, ...]
    field: Field

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def is_leonard(self) -> bool:
        return all(rho == 1 for rho in self.shape)


@dataclass(frozen=True)
class PairVerdict:
    systems: tuple[TridiagonalSystem, ...] = ()
    reason: RejectReason | None = None
    detail: str = ""
    witness: Subspace | None = None

    @property
    def accepted(self) -> bool:
        return self.reason is None


@dataclass(frozen=True)
class RelationParameters:
    """beta, gamma, gamma*, rho, rho* plus eigenvalues extended to -1 and d+1."""

    beta: Scalar
    gamma: Scalar
    gammastar: Scalar
    rho: Scalar
    rhostar: Scalar
    theta_ext: tuple[Scalar, ...]
    thetastar_ext: tuple[Scalar, ...]

    def th(self, i: int) -> Scalar:
        return self.theta_ext[i + 1]

    def ths(self, i: int) -> Scalar:
        return self.thetastar_ext[i + 1]


@dataclass(frozen=True, eq=False)
class Residual:
    """One evaluated identity: LHS - RHS, either a matrix or a scalar."""

    check: CheckId
    label: str
    index: tuple[int, ...]
    value: DomainMatrix | Scalar
    field: Field

    @property
    def is_matrix(self) -> bool:
        return isinstance(self.value, DomainMatrix)

    @property
    def is_zero(self) -> bool:
        if self.is_matrix:
            return self.value.is_zero_matrix
        return self.field.is_zero(self.value)

    @property
    def norm0(self) -> int:
        if self.is_matrix:
            return nonzero_count(self.value)
        return 0 if self.is_zero else 1

    @property
    def witness(self) -> tuple[int, int] | None:
        """Coordinates of a nonzero entry, if any."""
        if self.is_matrix:
            return first_nonzero(self.value)
        return None if self.is_zero else (0, 0)


@dataclass(frozen=True)
class RankEntry:
    check: CheckId
    label: str
    i: int
    j: int
    observed: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.observed == self.expected


@dataclass
class CheckOutcome:
    check: CheckId
    applicable: bool = True
    residuals: list[Residual] = field(default_factory=list)
    ranks: list[RankEntry] = field(default_factory=list)
    elapsed: float = 0.0
    error: str = ""

    @property
    def passed(self) -> bool:
        if self.error:
            return False
        return all(r.is_zero for r in self.residuals) and all(r.ok for r in self.ranks)
