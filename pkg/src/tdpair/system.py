import logging
from collections.abc import Sequence

from sympy.polys.matrices import DomainMatrix

from configs import settings
from exact.fields import Field, Scalar
from exact.matrices import (
    column,
    field_of,
    identity,
    is_zero,
    require_compatible,
    scale,
)
from exact.spectral import eigenvalues_in_field, lagrange_idempotents
from exact.subspaces import EchelonBasis, Subspace, kernel_vectors
from tdpair.errors import ContradictionError, InadmissibleParametersError, InternalInconsistencyError
from tdpair.models import (
    CheckId,
    PairVerdict,
    RejectReason,
    Relative,
    RelationParameters,
    Residual,
    TridiagonalSystem,
)

logger = logging.getLogger(__name__)


def _flat(M: DomainMatrix) -> list[Scalar]:
    return [x for row in M.to_list() for x in row]


def generated_algebra(A: DomainMatrix, Astar: DomainMatrix) -> list[DomainMatrix]:
    """Words in A, A* spanning the algebra they generate, closed breadth first."""
    field = field_of(A)
    n = A.shape[0]
    basis = EchelonBasis(n * n, field)
    I = identity(n, field)
    basis.add(_flat(I))
    words, frontier = [I], [I]
    cap = settings.WORD_CAP_FACTOR * n * n
    depth = 0
    while frontier and depth < cap and basis.rank < n * n:
        grown = []
        for W in frontier:
            for X in (A, Astar):
                P = X * W
                if basis.add(_flat(P)):
                    grown.append(P)
        words.extend(grown)
        frontier = grown
        depth += 1
    logger.debug("generated algebra has dimension %d of %d after %d steps", basis.rank, n * n, depth)
    return words


def _cyclic_span(words: Sequence[DomainMatrix], v: Sequence[Scalar], field: Field) -> Subspace:
    vec = column(v, field)
    return Subspace.span([_flat(W * vec) for W in words], len(v), field)


def _invariant_subspace(words: list[DomainMatrix], candidates: list[list[Scalar]], field: Field) -> Subspace | None:
    n = len(candidates[0])
    for v in candidates:
        W = _cyclic_span(words, v, field)
        if 0 < W.dim < n:
            return W
    transposed = [W.transpose() for W in words]
    for v in candidates:
        W = _cyclic_span(transposed, v, field)
        if 0 < W.dim < n:
            # the annihilator of an invariant subspace for the transposes
            return Subspace.span(kernel_vectors(W.basis().transpose()), n, field)
    return None


def _adjacency(idempotents: Sequence[DomainMatrix], other: DomainMatrix) -> list[set[int]]:
    k = len(idempotents)
    adj = [set() for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if not is_zero(idempotents[i] * other * idempotents[j]):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _path_ordering(adj: list[set[int]]) -> list[int] | None:
    """The vertices along the graph if it is a simple path, else None."""
    k = len(adj)
    if k == 1:
        return [0]
    ends = [v for v in range(k) if len(adj[v]) == 1]
    if len(ends) != 2 or any(len(a) > 2 for a in adj):
        return None
    order, prev = [ends[0]], None
    while len(order) < k:
        nxt = [w for w in adj[order[-1]] if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order if len(set(order)) == k else None


def _shape_of(E: Sequence[DomainMatrix], Estar: Sequence[DomainMatrix]) -> tuple[int, ...]:
    d = len(E) - 1
    ranks = [M.rank() for M in E]
    ranks_star = [M.rank() for M in Estar]
    for i in range(d + 1):
        if not ranks[i] == ranks[d - i] == ranks_star[i] == ranks_star[d - i]:
            raise InternalInconsistencyError(
                f"eigenspace dimensions disagree at {i}: {ranks} vs {ranks_star}"
            )
    for i in range(1, d // 2 + 1):
        if ranks[i - 1] > ranks[i]:
            raise InternalInconsistencyError(f"shape {ranks} is not unimodal")
    return tuple(ranks)


def _require_tridiagonal(E: Sequence[DomainMatrix], other: DomainMatrix, label: str) -> None:
    d = len(E) - 1
    for i in range(d + 1):
        for j in range(d + 1):
            vanishes = is_zero(E[i] * other * E[j])
            if abs(i - j) > 1 and not vanishes:
                raise InternalInconsistencyError(f"{label}: E_{i} X E_{j} is nonzero")
            if abs(i - j) == 1 and vanishes:
                raise InternalInconsistencyError(f"{label}: E_{i} X E_{j} vanishes")


def build_system(
    A: DomainMatrix,
    Astar: DomainMatrix,
    E: Sequence[DomainMatrix],
    Estar: Sequence[DomainMatrix],
    theta: Sequence[Scalar],
    thetastar: Sequence[Scalar],
) -> TridiagonalSystem:
    """Assemble a system after checking both orderings are standard."""
    if len(E) != len(Estar):
        raise InternalInconsistencyError("diameters of A and A* differ")
    _require_tridiagonal(E, Astar, "A* on the E-decomposition")
    _require_tridiagonal(Estar, A, "A on the E*-decomposition")
    return TridiagonalSystem(
        A=A,
        Astar=Astar,
        E=tuple(E),
        Estar=tuple(Estar),
        theta=tuple(theta),
        thetastar=tuple(thetastar),
        shape=_shape_of(E, Estar),
        field=field_of(A),
    )


def verify_pair(A: DomainMatrix, Astar: DomainMatrix) -> PairVerdict:
    """Decide whether (A, A*) is a tridiagonal pair and list its systems.

    Four systems come back for diameter d >= 1 (each standard ordering and
    its inversion, for A and for A*), one for d = 0, none on rejection.
    """
    require_compatible(A, Astar)
    A, Astar = A.to_dense(), Astar.to_dense()
    field = field_of(A)
    n = A.shape[0]
    if n == 0:
        raise InadmissibleParametersError("the zero space carries no tridiagonal pair")

    # 1. Both operators must diagonalize over the field
    spec, spec_star = eigenvalues_in_field(A), eigenvalues_in_field(Astar)
    if not spec.diagonalizable or not spec_star.diagonalizable:
        which = "A" if not spec.diagonalizable else "A*"
        logger.info("rejected: %s is not diagonalizable over %s", which, field)
        return PairVerdict(reason=RejectReason.NOT_DIAGONALIZABLE, detail=f"{which} is not diagonalizable over {field}")

    # 2. Irreducibility through the generated algebra
    words = generated_algebra(A, Astar)
    if len(words) < n * n:
        candidates = [v for _, space in (*spec.eigenpairs, *spec_star.eigenpairs) for v in space.vectors()]
        candidates += [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
        witness = _invariant_subspace(words, candidates, field)
        if witness is not None:
            logger.info("rejected: invariant subspace of dimension %d", witness.dim)
            return PairVerdict(
                reason=RejectReason.REDUCIBLE,
                detail=f"invariant subspace of dimension {witness.dim}",
                witness=witness,
            )
        logger.warning("generated algebra is proper but no invariant subspace was found")
        return PairVerdict(
            reason=RejectReason.IRREDUCIBILITY_UNDETERMINED,
            detail=f"generated algebra has dimension {len(words)} < {n * n}",
        )

    # 3. Standard orderings
    E = lagrange_idempotents(A, spec.eigenvalues)
    Estar = lagrange_idempotents(Astar, spec_star.eigenvalues)
    if len(E) != len(Estar):
        return PairVerdict(
            reason=RejectReason.DIAMETER_MISMATCH,
            detail=f"A has {len(E)} eigenvalues, A* has {len(Estar)}",
        )
    order = _path_ordering(_adjacency(E, Astar))
    order_star = _path_ordering(_adjacency(Estar, A))
    if order is None or order_star is None:
        which = "A" if order is None else "A*"
        logger.info("rejected: eigenspaces of %s admit no standard ordering", which)
        return PairVerdict(
            reason=RejectReason.NO_STANDARD_ORDERING,
            detail=f"eigenspaces of {which} admit no standard ordering",
        )

    orders = [order, order[::-1]] if len(order) > 1 else [order]
    orders_star = [order_star, order_star[::-1]] if len(order_star) > 1 else [order_star]
    systems = []
    for o in orders:
        for os_ in orders_star:
            systems.append(
                build_system(
                    A,
                    Astar,
                    [E[k] for k in o],
                    [Estar[k] for k in os_],
                    [spec.eigenvalues[k] for k in o],
                    [spec_star.eigenvalues[k] for k in os_],
                )
            )
    logger.info("accepted: diameter %d, shape %s", systems[0].d, systems[0].shape)
    return PairVerdict(systems=tuple(systems))


def compute_shape(system: TridiagonalSystem) -> tuple[int, ...]:
    return _shape_of(system.E, system.Estar)


def relatives(system: TridiagonalSystem, which: Relative) -> TridiagonalSystem:
    s = system
    match Relative(which):
        case Relative.STAR:
            parts = (s.Astar, s.A, s.Estar, s.E, s.thetastar, s.theta)
        case Relative.DOWN:
            parts = (s.A, s.Astar, s.E, s.Estar[::-1], s.theta, s.thetastar[::-1])
        case Relative.DOUBLE_DOWN:
            parts = (s.A, s.Astar, s.E[::-1], s.Estar, s.theta[::-1], s.thetastar)
        case Relative.TIMES:
            parts = (s.Astar, s.A, s.Estar[::-1], s.E[::-1], s.thetastar[::-1], s.theta[::-1])
    A, Astar, E, Estar, theta, thetastar = parts
    return build_system(A, Astar, E, Estar, theta, thetastar)


def default_beta(field: Field) -> Scalar:
    return field.scalar(settings.DEFAULT_BETA)


def _forced_plus_one(seq: Sequence[Scalar]) -> set:
    d = len(seq) - 1
    return {(seq[i - 2] - seq[i + 1]) / (seq[i - 1] - seq[i]) for i in range(2, d)}


def _gamma(seq: Sequence[Scalar], beta: Scalar, field: Field, label: str) -> Scalar:
    K = field.domain
    d = len(seq) - 1
    if d == 0:
        return (K(2) - beta) * seq[0]
    if d == 1:
        return (K(2) - beta) * (seq[0] + seq[1]) / K(2)
    values = {seq[i - 1] - beta * seq[i] + seq[i + 1] for i in range(1, d)}
    if len(values) != 1:
        raise ContradictionError(f"{label} is not constant along the eigenvalues")
    return values.pop()


def _rho(seq: Sequence[Scalar], beta: Scalar, gamma: Scalar, field: Field, label: str) -> Scalar:
    K = field.domain
    d = len(seq) - 1
    if d == 0:
        return (K(2) - beta) * seq[0] ** 2 - K(2) * gamma * seq[0]
    values = {
        seq[i - 1] ** 2 - beta * seq[i - 1] * seq[i] + seq[i] ** 2 - gamma * (seq[i - 1] + seq[i])
        for i in range(1, d + 1)
    }
    if len(values) != 1:
        raise ContradictionError(f"{label} is not constant along the eigenvalues")
    return values.pop()


def _extend(seq: Sequence[Scalar], beta: Scalar, gamma: Scalar) -> tuple[Scalar, ...]:
    d = len(seq) - 1
    if d == 0:
        edge = gamma + (beta - 1) * seq[0]
        return (edge, seq[0], edge)
    before = gamma + beta * seq[0] - seq[1]
    after = gamma + beta * seq[d] - seq[d - 1]
    return (before, *seq, after)


def compute_relation_parameters(system: TridiagonalSystem, beta: Scalar | None = None) -> RelationParameters:
    """beta, gamma, gamma*, rho, rho* of the tridiagonal relations.

    For d >= 3 the eigenvalues force beta; below that `beta` (or the
    configured default) is used.
    """
    field = system.field
    K = field.domain
    d = system.d
    if beta is not None:
        beta = field.scalar(beta)
    if d >= 3:
        forced = _forced_plus_one(system.theta) | _forced_plus_one(system.thetastar)
        if len(forced) != 1:
            raise ContradictionError("the eigenvalue sequences admit no common beta")
        value = forced.pop() - K.one
        if beta is not None and beta != value:
            raise ContradictionError(f"beta is forced to {field.format_scalar(value)} for d >= 3")
        beta = value
    elif beta is None:
        beta = default_beta(field)
    gamma = _gamma(system.theta, beta, field, "gamma")
    gammastar = _gamma(system.thetastar, beta, field, "gamma*")
    rho = _rho(system.theta, beta, gamma, field, "rho")
    rhostar = _rho(system.thetastar, beta, gammastar, field, "rho*")
    params = RelationParameters(
        beta=beta,
        gamma=gamma,
        gammastar=gammastar,
        rho=rho,
        rhostar=rhostar,
        theta_ext=_extend(system.theta, beta, gamma),
        thetastar_ext=_extend(system.thetastar, beta, gammastar),
    )
    logger.debug(
        "relation parameters beta=%s gamma=%s gamma*=%s rho=%s rho*=%s",
        *(field.format_scalar(x) for x in (beta, gamma, gammastar, rho, rhostar)),
    )
    return params


def _relation(X: DomainMatrix, Y: DomainMatrix, beta, gamma, rho) -> DomainMatrix:
    K = X.domain
    b1 = beta + K.one
    X2 = X * X
    X3 = X2 * X
    return (
        X3 * Y
        - scale(X2 * Y * X, b1)
        + scale(X * Y * X2, b1)
        - Y * X3
        - scale(X2 * Y - Y * X2, gamma)
        - scale(X * Y - Y * X, rho)
    )


def check_tridiagonal_relations(
    system: TridiagonalSystem, params: RelationParameters | None = None
) -> list[Residual]:
    """Expanded forms of [A, A^2 A* - beta A A* A + A* A^2 - gamma(AA*+A*A) - rho A*] = 0 and dual."""
    params = params or compute_relation_parameters(system)
    check = CheckId.TRIDIAGONAL_RELATIONS
    return [
        Residual(check, "A", (), _relation(system.A, system.Astar, params.beta, params.gamma, params.rho), system.field),
        Residual(
            check,
            "A*",
            (),
            _relation(system.Astar, system.A, params.beta, params.gammastar, params.rhostar),
            system.field,
        ),
    ]
