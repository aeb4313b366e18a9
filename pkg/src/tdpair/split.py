import logging
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from exact.errors import DecompositionError
from exact.matrices import identity, is_zero, power, same, scale, total
from exact.spectral import projectors_from_direct_sum
from exact.subspaces import Subspace, subspace_intersect, subspace_sum
from tdpair.errors import InternalInconsistencyError
from tdpair.models import CheckId, RankEntry, Relative, Residual, TridiagonalSystem
from tdpair.system import relatives

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SplitDecomposition:
    """U_i = (E*_0V + ... + E*_iV) cap (E_iV + ... + E_dV) with its maps.

    `raising` is A - sum theta_i F_i and `lowering` is A* - sum theta*_i F_i.
    `psi` sends E*_iV onto U_i.
    """

    U: tuple[Subspace, ...]
    F: tuple[DomainMatrix, ...]
    raising: DomainMatrix
    lowering: DomainMatrix
    psi: DomainMatrix
    psi_inv: DomainMatrix


def _prefix_sums(spaces: list[Subspace]) -> list[Subspace]:
    out, acc = [], Subspace.zero(spaces[0].ambient, spaces[0].field)
    for W in spaces:
        acc = subspace_sum(acc, W)
        out.append(acc)
    return out


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InternalInconsistencyError(message)


def compute_split(system: TridiagonalSystem, *, cross_check: bool = True) -> SplitDecomposition:
    d, n, field = system.d, system.n, system.field
    E, Es = system.E, system.Estar
    I = identity(n, field)

    # 1. Subspaces from prefix and suffix sums
    star_spaces = [Subspace.column_space(M) for M in Es]
    spaces = [Subspace.column_space(M) for M in E]
    prefix = _prefix_sums(star_spaces)
    suffix = _prefix_sums(spaces[::-1])[::-1]
    U = [subspace_intersect(prefix[i], suffix[i]) for i in range(d + 1)]
    for i in range(d + 1):
        _require(U[i].dim == system.shape[i], f"dim U_{i} = {U[i].dim}, expected {system.shape[i]}")

    # 2. Projectors and the two nilpotent maps
    try:
        F = projectors_from_direct_sum(U)
    except DecompositionError as exc:
        raise InternalInconsistencyError(f"split subspaces: {exc}") from exc
    raising = system.A - total((scale(Fi, t) for Fi, t in zip(F, system.theta)), n, field)
    lowering = system.Astar - total((scale(Fi, t) for Fi, t in zip(F, system.thetastar)), n, field)
    psi = total((F[i] * Es[i] for i in range(d + 1)), n, field)
    psi_inv = total((Es[i] * F[i] for i in range(d + 1)), n, field)

    # 3. Structural facts
    U_prefix = _prefix_sums(U)
    U_suffix = _prefix_sums(U[::-1])[::-1]
    for i in range(d + 1):
        _require(U_prefix[i] == prefix[i], f"U_0 + ... + U_{i} differs from the E* prefix")
        _require(U_suffix[i] == suffix[i], f"U_{i} + ... + U_d differs from the E suffix")
        nxt = F[i + 1] if i < d else None
        image = raising * F[i]
        _require(is_zero(image) if nxt is None else same(nxt * image, image), f"raising map leaves U_{i}")
        prev = F[i - 1] if i > 0 else None
        image = lowering * F[i]
        _require(is_zero(image) if prev is None else same(prev * image, image), f"lowering map leaves U_{i}")
        _require(same(F[i] * Es[i] * F[i], F[i]), f"F_{i} E*_{i} F_{i} differs from F_{i}")
        _require(same(Es[i] * F[i] * Es[i], Es[i]), f"E*_{i} F_{i} E*_{i} differs from E*_{i}")
        rho = system.shape[i]
        for label, M in (("F E*", F[i] * Es[i]), ("E* F", Es[i] * F[i]), ("F E", F[i] * E[i]), ("E F", E[i] * F[i])):
            _require(M.rank() == rho, f"rank {label} at {i} differs from {rho}")
        for j in range(i + 1, d + 1):
            _require(is_zero(F[j] * Es[i]), f"F_{j} E*_{i} is nonzero")
            _require(is_zero(Es[j] * F[i]), f"E*_{j} F_{i} is nonzero")
    _require(is_zero(power(raising, d + 1)) and is_zero(power(lowering, d + 1)), "split maps are not nilpotent")
    _require(same(psi * psi_inv, I) and same(psi_inv * psi, I), "psi is not inverted by sum E*_l F_l")

    if cross_check:
        # the inverted relative splits along the same subspaces in reverse
        twin = compute_split(relatives(system, Relative.TIMES), cross_check=False)
        for i in range(d + 1):
            _require(same(twin.F[i], F[d - i]), f"split of the inverted relative differs at {i}")

    logger.debug("split decomposition with dims %s", [W.dim for W in U])
    return SplitDecomposition(tuple(U), tuple(F), raising, lowering, psi, psi_inv)


def check_split_relations(system: TridiagonalSystem, split: SplitDecomposition | None = None) -> list[Residual]:
    """How A and A* act on the split decomposition."""
    split = split or compute_split(system)
    d, n, field = system.d, system.n, system.field
    A, As, F = system.A, system.Astar, split.F
    Rs, Ls = split.raising, split.lowering
    I = identity(n, field)
    check = CheckId.SPLIT_RELATIONS
    out = []
    for i in range(d + 1):
        for j in range(d + 1):
            if i - j not in (0, 1):
                out.append(Residual(check, "F A F", (i, j), F[i] * A * F[j], field))
            if j - i not in (0, 1):
                out.append(Residual(check, "F A* F", (i, j), F[i] * As * F[j], field))
        out.append(Residual(check, "F A F - theta F", (i,), F[i] * A * F[i] - scale(F[i], system.theta[i]), field))
        out.append(
            Residual(check, "F A* F - theta* F", (i,), F[i] * As * F[i] - scale(F[i], system.thetastar[i]), field)
        )
        if i < d:
            out.append(Residual(check, "F A F - Rs F", (i,), F[i + 1] * A * F[i] - Rs * F[i], field))
            out.append(Residual(check, "Rs F - F Rs", (i,), Rs * F[i] - F[i + 1] * Rs, field))
        if i > 0:
            out.append(Residual(check, "F A* F - Ls F", (i,), F[i - 1] * As * F[i] - Ls * F[i], field))
            out.append(Residual(check, "Ls F - F Ls", (i,), Ls * F[i] - F[i - 1] * Ls, field))
        out.append(Residual(check, "(Rs - A + theta) F", (i,), (Rs - A + scale(I, system.theta[i])) * F[i], field))
        out.append(
            Residual(check, "(Ls - A* + theta*) F", (i,), (Ls - As + scale(I, system.thetastar[i])) * F[i], field)
        )
        out.append(Residual(check, "Rs^(d-i+1) F", (i,), power(Rs, d - i + 1) * F[i], field))
        out.append(Residual(check, "Ls^(i+1) F", (i,), power(Ls, i + 1) * F[i], field))
    out.append(Residual(check, "Rs^(d+1)", (), power(Rs, d + 1), field))
    out.append(Residual(check, "Ls^(d+1)", (), power(Ls, d + 1), field))
    return out


def check_split_bijectivity(system: TridiagonalSystem, split: SplitDecomposition | None = None) -> list[RankEntry]:
    split = split or compute_split(system)
    d, rho, F = system.d, system.shape, split.F
    check = CheckId.SPLIT_RANKS
    Rk = [power(split.raising, k) for k in range(d + 1)]
    Lk = [power(split.lowering, k) for k in range(d + 1)]
    out = []
    for i in range(d + 1):
        for j in range(i, d + 1):
            k = j - i
            out.append(RankEntry(check, "Rs^(j-i) F_i", i, j, (Rk[k] * F[i]).rank(), rho[i] if i + j <= d else rho[j]))
            out.append(RankEntry(check, "Ls^(j-i) F_j", i, j, (Lk[k] * F[j]).rank(), rho[j] if i + j >= d else rho[i]))
    return out
