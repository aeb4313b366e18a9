import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from sympy.polys.matrices import DomainMatrix

from exact.fields import Field, Scalar
from exact.matrices import commutator, identity, kron, matrix, scale
from exact.spectral import nilpotent_exp_scaled
from tdpair.bridge import cubic_coefficient
from tdpair.errors import InadmissibleParametersError, InternalInconsistencyError, NotKrawtchoukError
from tdpair.leonard import LeonardData, leonard_data
from tdpair.models import CheckId, PairVerdict, Residual, TridiagonalSystem
from tdpair.rfl import RFL, compute_rfl
from tdpair.split import SplitDecomposition, compute_split
from tdpair.system import verify_pair

if TYPE_CHECKING:
    from tdpair.suite import SuiteResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KrawtchoukParams:
    d: int
    p: Scalar
    field: Field

    def __post_init__(self):
        if self.d < 1:
            raise InadmissibleParametersError("d must be at least 1")
        char = self.field.characteristic
        if char and char <= self.d:
            raise InadmissibleParametersError(f"GF({char}) needs a prime above d={self.d}")
        if self.field.is_zero(self.p) or self.field.is_zero(self.p - self.field.one):
            raise InadmissibleParametersError("p must differ from 0 and 1")

    @classmethod
    def of(cls, d: int, p, field: Field) -> "KrawtchoukParams":
        return cls(d, field.scalar(p), field)

    def closed_forms(self) -> dict[str, tuple[Scalar, ...]]:
        """a, b, c, x, phi and the eigenvalues in closed form."""
        K, d, p = self.field.domain, self.d, self.p
        one, two = K.one, K(2)
        return {
            "theta": tuple(K(d - 2 * i) for i in range(d + 1)),
            "a": tuple((one - two * p) * K(d - 2 * i) for i in range(d + 1)),
            "b": tuple(two * p * K(d - i) for i in range(d)),
            "c": tuple(two * (one - p) * K(i) for i in range(1, d + 1)),
            "x": tuple(K(4) * p * (one - p) * K(i) * K(d - i + 1) for i in range(1, d + 1)),
            "phi": tuple(K(4) * p * K(i) * K(i - d - 1) for i in range(1, d + 1)),
        }


def construct_krawtchouk(params: KrawtchoukParams) -> tuple[TridiagonalSystem, LeonardData]:
    """The Krawtchouk Leonard system in the E*_i xi basis, checked against its closed forms."""
    d, field = params.d, params.field
    forms = params.closed_forms()
    a, b, c, theta = forms["a"], forms["b"], forms["c"], forms["theta"]
    n = d + 1
    A = matrix(
        [
            [a[i] if i == j else b[i] if j == i + 1 else c[j] if i == j + 1 else 0 for j in range(n)]
            for i in range(n)
        ],
        field,
    )
    Astar = matrix([[theta[i] if i == j else 0 for j in range(n)] for i in range(n)], field)
    verdict = verify_pair(A, Astar)
    if not verdict.accepted:
        raise InternalInconsistencyError(f"Krawtchouk pair rejected: {verdict.detail}")
    system = next(s for s in verdict.systems if s.theta == theta and s.thetastar == theta)
    data = leonard_data(system)
    for name in ("a", "b", "c", "x", "phi"):
        if getattr(data, name) != forms[name]:
            raise InternalInconsistencyError(f"{name} differs from its closed form")
    logger.info("constructed Krawtchouk system d=%d p=%s over %s", d, field.format_scalar(params.p), field)
    return system, data


def is_krawtchouk(system: TridiagonalSystem) -> bool:
    K, d = system.field.domain, system.d
    expected = tuple(K(d - 2 * i) for i in range(d + 1))
    return system.theta == expected and system.thetastar == expected


def _ad(X: DomainMatrix, Y: DomainMatrix, times: int) -> DomainMatrix:
    for _ in range(times):
        Y = commutator(X, Y)
    return Y


def check_krawtchouk_identities(
    system: TridiagonalSystem, rfl: RFL | None = None, split: SplitDecomposition | None = None
) -> list[Residual]:
    """Commutator identities that hold when theta_i = theta*_i = d - 2i."""
    if not is_krawtchouk(system):
        raise NotKrawtchoukError("eigenvalues are not d - 2i in both orderings")
    rfl = rfl or compute_rfl(system)
    split = split or compute_split(system)
    field, K, d, n = system.field, system.field.domain, system.d, system.n
    A, As, R, F, L = system.A, system.Astar, rfl.R, rfl.F, rfl.L
    Rs, Ls = split.raising, split.lowering
    I = identity(n, field)
    half, two, four, eighth = K.one / K(2), K(2), K(4), K.one / K(8)
    check = CheckId.KRAWTCHOUK
    out = []

    def add(label: str, value: DomainMatrix, index: tuple = ()) -> None:
        out.append(Residual(check, label, index, value, field))

    # 1. Dolan-Grady relations
    AAs = commutator(A, As)
    add("[A,[A,[A,A*]]] - 4[A,A*]", _ad(A, AAs, 2) - scale(AAs, four))
    AsA = commutator(As, A)
    add("[A*,[A*,[A*,A]]] - 4[A*,A]", _ad(As, AsA, 2) - scale(AsA, four))

    # 2. A* grades R, F, L
    add("[A*,L] - 2L", commutator(As, L) - scale(L, two))
    add("[A*,F]", commutator(As, F))
    add("[A*,R] + 2R", commutator(As, R) + scale(R, two))
    AsAsA = commutator(As, AsA)
    add("R from commutators", R - scale(AsAsA - scale(AsA, two), eighth))
    add("F from commutators", F - (A - scale(AsAsA, K.one / four)))
    add("L from commutators", L - scale(AsAsA + scale(AsA, two), eighth))

    # 3. Brackets among R, F, L
    add("[L,[L,F]]", _ad(L, F, 2))
    add("[R,[R,F]]", _ad(R, F, 2))
    add("[F,[F,L]] - 2[L,[L,R]] - 4L", _ad(F, L, 2) - scale(_ad(L, R, 2), two) - scale(L, four))
    add("[F,[F,R]] - 2[R,[R,L]] - 4R", _ad(F, R, 2) - scale(_ad(R, L, 2), two) - scale(R, four))
    add("[F,[L,R]]", commutator(F, commutator(L, R)))

    # 4. psi as an exponential of the lowering map
    up, down = nilpotent_exp_scaled(Ls, half), nilpotent_exp_scaled(Ls, -half)
    add("psi - exp(Ls/2)", split.psi - up)
    add("psi^-1 - exp(-Ls/2)", split.psi_inv - down)
    add("exp(Ls/2) exp(-Ls/2) - I", up * down - I)
    add("exp(Ls/2) R - Rs exp(Ls/2)", up * R - Rs * up)
    add("exp(Ls/2) F - (A - Rs + [Ls,Rs]/2) exp(Ls/2)", up * F - (A - Rs + scale(commutator(Ls, Rs), half)) * up)
    add("exp(Ls/2) L - (-Ls + [Ls,[Ls,Rs]]/8) exp(Ls/2)", up * L - (scale(_ad(Ls, Rs, 2), eighth) - Ls) * up)

    # 5. Nilpotent adjoint actions
    add("[Ls,[Ls,[Ls,Rs]]]", _ad(Ls, Rs, 3))
    add("[Rs,[Rs,[Rs,Ls]]]", _ad(Rs, Ls, 3))
    for ell in range(2, d + 2):
        add("ad(Ls)^(l+1) Rs", _ad(Ls, Rs, ell + 1), (ell,))
        add("ad(Rs)^(l+1) Ls", _ad(Rs, Ls, ell + 1), (ell,))
    for j in range(2, d + 1):
        out.append(Residual(check, "e_j", (j,), cubic_coefficient(system, j), field))
    return out


@dataclass(frozen=True)
class KroneckerOutcome:
    verdict: PairVerdict
    checks: "SuiteResult | None" = None

    @property
    def shape(self) -> tuple[int, ...] | None:
        return self.verdict.systems[0].shape if self.verdict.accepted else None


def kronecker_sum_candidate(first: TridiagonalSystem, second: TridiagonalSystem) -> KroneckerOutcome:
    """Try (A1 (x) I + I (x) A2, A1* (x) I + I (x) A2*) as a tridiagonal pair.

    An accepted pair is also run through the full check suite.
    """
    from tdpair.suite import run_checks

    if first.field != second.field:
        raise InadmissibleParametersError("factors live over different fields")
    I1, I2 = identity(first.n, first.field), identity(second.n, second.field)
    A = kron(first.A, I2) + kron(I1, second.A)
    Astar = kron(first.Astar, I2) + kron(I1, second.Astar)
    verdict = verify_pair(A, Astar)
    if not verdict.accepted:
        logger.info("Kronecker sum rejected: %s", verdict.reason.value)
        return KroneckerOutcome(verdict)
    return KroneckerOutcome(verdict, run_checks(verdict.systems[0]))


def trivial_system(theta: Scalar, thetastar: Scalar, field: Field) -> TridiagonalSystem:
    """The one-dimensional system with A = theta, A* = theta*."""
    verdict = verify_pair(matrix([[theta]], field), matrix([[thetastar]], field))
    return verdict.systems[0]
