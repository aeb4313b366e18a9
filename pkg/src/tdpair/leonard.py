import logging
from collections.abc import Sequence
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from exact.fields import Field, Scalar
from exact.matrices import matrix, power, same, scale, trace
from exact.subspaces import Subspace
from tdpair.bridge import lower_product, upper_product
from tdpair.errors import InadmissibleParametersError, InternalInconsistencyError, NotLeonardError
from tdpair.models import CheckId, RelationParameters, Residual, TridiagonalSystem
from tdpair.rfl import compute_rfl, rfl_coefficients
from tdpair.split import SplitDecomposition, compute_split
from tdpair.system import compute_relation_parameters, verify_pair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeonardData:
    """Scalars of a Leonard system.

    a = (a_0..a_d), x = (x_1..x_d), b = (b_0..b_{d-1}), c = (c_1..c_d),
    phi = (phi_1..phi_d).
    """

    theta: tuple[Scalar, ...]
    thetastar: tuple[Scalar, ...]
    phi: tuple[Scalar, ...]
    a: tuple[Scalar, ...]
    x: tuple[Scalar, ...]
    b: tuple[Scalar, ...]
    c: tuple[Scalar, ...]
    field: Field

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    def phi_at(self, i: int) -> Scalar:
        return self.phi[i - 1] if 1 <= i <= self.d else self.field.zero

    def x_at(self, i: int) -> Scalar:
        return self.x[i - 1] if 1 <= i <= self.d else self.field.zero

    def b_at(self, i: int) -> Scalar:
        return self.b[i] if 0 <= i < self.d else self.field.zero

    def c_at(self, i: int) -> Scalar:
        return self.c[i - 1] if 1 <= i <= self.d else self.field.zero


@dataclass(frozen=True, eq=False)
class BasisRepresentation:
    name: str
    basis: DomainMatrix
    A: DomainMatrix
    Astar: DomainMatrix


@dataclass(frozen=True, eq=False)
class ThreeBases:
    raising: BasisRepresentation
    split: BasisRepresentation
    dual: BasisRepresentation


def tau_star(thetastar: Sequence[Scalar], i: int, value: Scalar, K) -> Scalar:
    """prod_{k < i} (value - theta*_k)."""
    out = K.one
    for k in range(i):
        out *= value - thetastar[k]
    return out


def _represent(name: str, columns: list[DomainMatrix], system: TridiagonalSystem) -> BasisRepresentation:
    B = columns[0].hstack(*columns[1:]) if len(columns) > 1 else columns[0]
    if B.rank() != system.n:
        raise InternalInconsistencyError(f"{name} vectors are not a basis")
    Binv = B.inv()
    return BasisRepresentation(name, B, Binv * system.A * B, Binv * system.Astar * B)


def _first_vector(M: DomainMatrix) -> DomainMatrix:
    space = Subspace.column_space(M)
    if space.dim == 0:
        raise InternalInconsistencyError("empty eigenspace")
    return DomainMatrix([[x] for x in space.rows[0]], (space.ambient, 1), M.domain).to_dense()


def _split_rep(system: TridiagonalSystem, split: SplitDecomposition) -> BasisRepresentation:
    zeta = _first_vector(system.Estar[0])
    return _represent("split", [power(split.raising, i) * zeta for i in range(system.d + 1)], system)


def leonard_data(system: TridiagonalSystem, split: SplitDecomposition | None = None) -> LeonardData:
    """Read a, x, b, c, phi off a Leonard system."""
    if not system.is_leonard:
        raise NotLeonardError(f"shape {system.shape} is not all ones")
    split = split or compute_split(system)
    field, K, d = system.field, system.field.domain, system.d
    A, Es, ts = system.A, system.Estar, system.thetastar
    rows = _split_rep(system, split).Astar.to_list()
    phi = tuple(rows[i - 1][i] for i in range(1, d + 1))
    a = tuple(trace(Es[i] * A * Es[i]) for i in range(d + 1))
    x = tuple(trace(Es[i] * A * Es[i - 1] * A * Es[i]) for i in range(1, d + 1))
    taus = [tau_star(ts, i, ts[i], K) for i in range(d + 1)]
    b = tuple(phi[i] * taus[i] / taus[i + 1] for i in range(d))
    c = tuple(x[i - 1] / phi[i - 1] * taus[i] / taus[i - 1] for i in range(1, d + 1))
    return LeonardData(system.theta, system.thetastar, phi, a, x, b, c, field)


def _expect(rep: DomainMatrix, expected: DomainMatrix, label: str) -> None:
    if not same(rep, expected):
        raise InternalInconsistencyError(f"{label} does not have the expected form")


def change_of_basis_reps(
    system: TridiagonalSystem, data: LeonardData, split: SplitDecomposition | None = None
) -> ThreeBases:
    """A and A* in the bases R^i zeta, (raising map)^i zeta and E*_i xi."""
    split = split or compute_split(system)
    d, field = system.d, system.field
    zeta = _first_vector(system.Estar[0])
    xi = _first_vector(system.E[0])
    R = compute_rfl(system).R
    raising = _represent("raising", [power(R, i) * zeta for i in range(d + 1)], system)
    split_rep = _split_rep(system, split)
    dual = _represent("dual", [Es * xi for Es in system.Estar], system)

    def tri(lower, diag, upper):
        return matrix(
            [
                [diag(i) if i == j else lower(j) if i == j + 1 else upper(j) if j == i + 1 else 0 for j in range(d + 1)]
                for i in range(d + 1)
            ],
            field,
        )

    def zero(_):
        return field.zero

    def one(_):
        return field.one

    diag_star = tri(zero, lambda i: data.thetastar[i], zero)
    _expect(raising.A, tri(one, lambda i: data.a[i], lambda j: data.x_at(j)), "A in the raising basis")
    _expect(raising.Astar, diag_star, "A* in the raising basis")
    _expect(split_rep.A, tri(one, lambda i: data.theta[i], zero), "A in the split basis")
    _expect(split_rep.Astar, tri(zero, lambda i: data.thetastar[i], lambda j: data.phi_at(j)), "A* in the split basis")
    _expect(
        dual.A,
        tri(lambda j: data.c_at(j + 1), lambda i: data.a[i], lambda j: data.b_at(j - 1)),
        "A in the E* xi basis",
    )
    _expect(dual.Astar, diag_star, "A* in the E* xi basis")
    return ThreeBases(raising, split_rep, dual)


def construct_leonard(
    d: int,
    theta: Sequence,
    thetastar: Sequence,
    phi: Sequence,
    field: Field,
) -> tuple[TridiagonalSystem, LeonardData]:
    """Build A lower bidiagonal and A* upper bidiagonal from (theta, theta*, phi)."""
    theta = [field.scalar(t) for t in theta]
    thetastar = [field.scalar(t) for t in thetastar]
    phi = [field.scalar(f) for f in phi]
    if d < 1 or len(theta) != d + 1 or len(thetastar) != d + 1 or len(phi) != d:
        raise InadmissibleParametersError(f"need d+1 eigenvalues each and d values of phi for d={d}")
    if len(set(theta)) != d + 1 or len(set(thetastar)) != d + 1:
        raise InadmissibleParametersError("eigenvalues must be mutually distinct")
    if any(field.is_zero(f) for f in phi):
        raise InadmissibleParametersError("phi_i must be nonzero")
    if field.characteristic and field.characteristic <= d:
        raise InadmissibleParametersError(f"GF({field.p}) is too small for d={d}")

    n = d + 1
    A = matrix([[theta[i] if i == j else 1 if i == j + 1 else 0 for j in range(n)] for i in range(n)], field)
    Astar = matrix(
        [[thetastar[i] if i == j else phi[j - 1] if j == i + 1 else 0 for j in range(n)] for i in range(n)], field
    )
    verdict = verify_pair(A, Astar)
    if not verdict.accepted:
        raise NotLeonardError(f"not a tridiagonal pair: {verdict.detail}", verdict.reason)
    system = next(
        (s for s in verdict.systems if list(s.theta) == theta and list(s.thetastar) == thetastar),
        None,
    )
    if system is None:
        raise NotLeonardError("the given eigenvalue orderings are not standard")
    data = leonard_data(system)
    if list(data.phi) != phi:
        raise InternalInconsistencyError("split sequence read back differs from the input")
    logger.info("constructed Leonard system of diameter %d over %s", d, field)
    return system, data


def _x_right_side(data: LeonardData, i: int, K) -> Scalar:
    d, th, ts = data.d, data.theta, data.thetastar
    out = -data.phi_at(i) - (th[i - 1] - th[i]) * (ts[i - 1] - ts[i])
    if i >= 2:
        out += data.phi_at(i - 1) * (ts[i] - ts[i - 1]) / (ts[i] - ts[i - 2])
    if i <= d - 1:
        out += data.phi_at(i + 1) * (ts[i - 1] - ts[i]) / (ts[i - 1] - ts[i + 1])
    return out


def check_leonard_identities(
    system: TridiagonalSystem,
    data: LeonardData | None = None,
    params: RelationParameters | None = None,
    split: SplitDecomposition | None = None,
) -> list[Residual]:
    """Scalar recurrences and closed formulas of a Leonard system."""
    split = split or compute_split(system)
    data = data or leonard_data(system, split)
    params = params or compute_relation_parameters(system)
    coeffs = rfl_coefficients(system, params)
    field, K, d = system.field, system.field.domain, system.d
    th, ts, a = data.theta, data.thetastar, data.a
    A, Es, F = system.A, system.Estar, split.F
    Rs, Ls = split.raising, split.lowering
    check = CheckId.LEONARD
    out = []

    def scalar(label: str, index: tuple, value: Scalar) -> None:
        out.append(Residual(check, label, index, value, field))

    def operator(label: str, index: tuple, value: DomainMatrix) -> None:
        out.append(Residual(check, label, index, value, field))

    # 1. Diagonal and off-diagonal entries along E*
    for i in range(d + 1):
        operator("E*AE* - a E*", (i,), Es[i] * A * Es[i] - scale(Es[i], a[i]))
        if i >= 1:
            operator("E*AE*AE* - x E*", (i,), Es[i] * A * Es[i - 1] * A * Es[i] - scale(Es[i], data.x_at(i)))

    # 2. Recurrences from the R, F, L relations
    for i in range(2, d + 1):
        scalar("a recurrence", (i,), coeffs.gminus[i] * a[i - 2] + a[i - 1] + coeffs.gplus[i] * a[i] - params.gamma)
    b2 = params.beta + K(2)
    for i in range(1, d + 1):
        em = coeffs.eminus[i] if coeffs.eminus[i] is not None else K.zero
        ep = coeffs.eplus[i] if coeffs.eplus[i] is not None else K.zero
        value = (
            em * data.x_at(i - 1)
            + b2 * data.x_at(i)
            + ep * data.x_at(i + 1)
            + a[i] ** 2
            - params.beta * a[i - 1] * a[i]
            + a[i - 1] ** 2
            - params.gamma * (a[i] + a[i - 1])
            - params.rho
        )
        scalar("x recurrence", (i,), value)

    # 3. a_i, x_i and c_i through theta, theta*, phi
    for i in range(d + 1):
        value = th[i]
        if i >= 1:
            value += data.phi_at(i) / (ts[i] - ts[i - 1])
        if i <= d - 1:
            value += data.phi_at(i + 1) / (ts[i] - ts[i + 1])
        scalar("a from phi", (i,), a[i] - value)
    for i in range(1, d + 1):
        rhs = _x_right_side(data, i, K)
        scalar("x from phi", (i,), (ts[i - 1] - ts[i]) ** 2 * data.x_at(i) / data.phi_at(i) - rhs)
        ratio = tau_star(ts, i - 1, ts[i - 1], K) / tau_star(ts, i, ts[i], K)
        scalar("c from phi", (i,), data.c_at(i) * (ts[i - 1] - ts[i]) ** 2 * ratio - rhs)
        scalar("x = c b", (i,), data.x_at(i) - data.c_at(i) * data.b_at(i - 1))
    for i in range(d + 1):
        scalar("c + a + b", (i,), data.c_at(i) + a[i] + data.b_at(i) - th[0])
    scalar("trace", (), sum(a, K.zero) - sum(th, K.zero))

    # 4. Scalar forms of the vanishing double sums
    for i in range(d + 1):
        for j in range(i + 2, d + 1):
            first = sum(
                (th[s] / (upper_product(ts, i, s, K) * lower_product(ts, s, j, K)) for s in range(i, j + 1)), K.zero
            )
            first_star = sum(
                (ts[s] / (lower_product(th, s, j, K) * upper_product(th, i, s, K)) for s in range(i, j + 1)), K.zero
            )
            second, second_star = K.zero, K.zero
            for s in range(max(i - 1, 0), min(j, d - 1) + 1):
                r = s + 1
                second += data.phi_at(r) / (upper_product(ts, i, r, K) * lower_product(ts, s, j, K))
                second_star += data.phi_at(r) / (lower_product(th, s, j, K) * upper_product(th, i, r, K))
            scalar("double sum", (i, j), first + second)
            scalar("double sum dual", (i, j), first_star + second_star)

    # 5. Second differences of phi
    b1 = params.beta + K.one
    for j in range(2, d + 1):
        e = (th[j - 1] - th[j - 2]) * (ts[j - 1] - ts[j - 2]) - (th[j - 1] - th[j]) * (ts[j - 1] - ts[j])
        value = data.phi_at(j - 2) - b1 * data.phi_at(j - 1) + b1 * data.phi_at(j) - data.phi_at(j + 1) - b1 * e
        scalar("phi recurrence", (j,), value)

    # 6. Products of the split maps
    RL, LR = Rs * Ls, Ls * Rs
    for i in range(d + 1):
        if i >= 1:
            target = scale(F[i], data.phi_at(i))
            operator("F Rs Ls", (i,), F[i] * RL - target)
            operator("Rs F Ls", (i,), Rs * F[i - 1] * Ls - target)
            operator("Rs Ls F", (i,), RL * F[i] - target)
        if i <= d - 1:
            target = scale(F[i], data.phi_at(i + 1))
            operator("F Ls Rs", (i,), F[i] * LR - target)
            operator("Ls F Rs", (i,), Ls * F[i + 1] * Rs - target)
            operator("Ls Rs F", (i,), LR * F[i] - target)

    # 7. b and c from the E* xi basis
    dual = change_of_basis_reps(system, data, split).dual.A.to_list()
    for i in range(d):
        scalar("b entry", (i,), dual[i][i + 1] - data.b_at(i))
        scalar("c entry", (i + 1,), dual[i + 1][i] - data.c_at(i + 1))
    return out
