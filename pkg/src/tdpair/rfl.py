"""Raising, flat and lowering parts of A relative to the E*-decomposition."""

import logging
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from exact.fields import Scalar
from exact.matrices import commutator, is_zero, power, same, scale, total
from tdpair.errors import InternalInconsistencyError
from tdpair.models import CheckId, RankEntry, RelationParameters, Residual, TridiagonalSystem
from tdpair.system import compute_relation_parameters

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RFL:
    R: DomainMatrix
    F: DomainMatrix
    L: DomainMatrix


@dataclass(frozen=True)
class RFLCoefficients:
    """g+, g-, e+, e- by index; None marks an indeterminate coefficient."""

    gplus: dict[int, Scalar]
    gminus: dict[int, Scalar]
    eplus: dict[int, Scalar | None]
    eminus: dict[int, Scalar | None]


def compute_rfl(system: TridiagonalSystem) -> RFL:
    d, n, field = system.d, system.n, system.field
    A, Es = system.A, system.Estar
    R = total((Es[i + 1] * A * Es[i] for i in range(d)), n, field)
    F = total((Es[i] * A * Es[i] for i in range(d + 1)), n, field)
    L = total((Es[i - 1] * A * Es[i] for i in range(1, d + 1)), n, field)

    if not same(R + F + L, A):
        raise InternalInconsistencyError("A is not R + F + L")
    for i in range(d + 1):
        if i < d and not same(R * Es[i], Es[i + 1] * R):
            raise InternalInconsistencyError(f"R does not raise E*_{i}V")
        if not same(F * Es[i], Es[i] * F):
            raise InternalInconsistencyError(f"F does not fix E*_{i}V")
        if i > 0 and not same(L * Es[i], Es[i - 1] * L):
            raise InternalInconsistencyError(f"L does not lower E*_{i}V")
        if not is_zero(power(R, d - i + 1) * Es[i]) or not is_zero(power(L, i + 1) * Es[i]):
            raise InternalInconsistencyError(f"R or L fails to leave the decomposition from E*_{i}V")
    if not is_zero(R * Es[d]) or not is_zero(L * Es[0]):
        raise InternalInconsistencyError("R E*_d or L E*_0 is nonzero")
    logger.debug("R, F, L computed for d=%d", d)
    return RFL(R, F, L)


def rfl_coefficients(system: TridiagonalSystem, params: RelationParameters) -> RFLCoefficients:
    d = system.d
    ts = params.ths
    gplus, gminus, eplus, eminus = {}, {}, {}, {}
    for i in range(2, d + 1):
        gplus[i] = (ts(i) - ts(i + 1)) / (ts(i) - ts(i - 2))
        gminus[i] = (ts(i - 2) - ts(i - 3)) / (ts(i - 2) - ts(i))
    for i in range(1, d + 1):
        eplus[i] = (ts(i) - ts(i + 2)) / (ts(i) - ts(i - 1)) if i <= d - 1 else None
        eminus[i] = (ts(i - 1) - ts(i - 3)) / (ts(i - 1) - ts(i)) if i >= 2 else None
    # g+_d and g-_2 reach the extended eigenvalues and may vanish
    for name, table, indices in (("g+", gplus, range(2, d)), ("g-", gminus, range(3, d + 1))):
        for i in indices:
            if system.field.is_zero(table[i]):
                raise InternalInconsistencyError(f"{name}_{i} vanishes")
    return RFLCoefficients(gplus, gminus, eplus, eminus)


def _weighted(coefficient: Scalar | None, term: DomainMatrix, support: DomainMatrix, label: str) -> DomainMatrix:
    """coefficient * term, where an indeterminate coefficient needs term * support = 0."""
    if coefficient is None:
        if not is_zero(term * support):
            raise InternalInconsistencyError(f"{label} survives where its coefficient is indeterminate")
        return scale(term, term.domain.zero)
    return scale(term, coefficient)


def check_rfl_relations(
    system: TridiagonalSystem, rfl: RFL | None = None, params: RelationParameters | None = None
) -> list[Residual]:
    """Cubic and quadratic relations among R, F, L restricted to each E*_iV."""
    rfl = rfl or compute_rfl(system)
    params = params or compute_relation_parameters(system)
    coeffs = rfl_coefficients(system, params)
    R, F, L = rfl.R, rfl.F, rfl.L
    K, d, field, Es, ts = system.field.domain, system.d, system.field, system.Estar, params.ths
    beta, gamma, rho = params.beta, params.gamma, params.rho
    check = CheckId.RFL_RELATIONS
    out = []

    L2, R2, F2 = L * L, R * R, F * F
    for i in range(2, d + 1):
        gp, gm = coeffs.gplus[i], coeffs.gminus[i]
        lowering = scale(F * L2, gm) + L * F * L + scale(L2 * F, gp) - scale(L2, gamma)
        raising = scale(R2 * F, gm) + R * F * R + scale(F * R2, gp) - scale(R2, gamma)
        out.append(Residual(check, "g:L", (i,), lowering * Es[i], field))
        out.append(Residual(check, "g:R", (i,), raising * Es[i - 2], field))

    b2 = beta + K(2)
    LRL, RLR = L * R * L, R * L * R
    for i in range(1, d + 1):
        ep, em = coeffs.eplus[i], coeffs.eminus[i]
        lowering = (
            _weighted(em, R * L2, Es[i], "R L^2")
            + scale(LRL, b2)
            + _weighted(ep, L2 * R, Es[i], "L^2 R")
            + L * F2
            - scale(F * L * F, beta)
            + F2 * L
            - scale(L * F + F * L, gamma)
            - scale(L, rho)
        )
        raising = (
            _weighted(em, R2 * L, Es[i - 1], "R^2 L")
            + scale(RLR, b2)
            + _weighted(ep, L * R2, Es[i - 1], "L R^2")
            + F2 * R
            - scale(F * R * F, beta)
            + R * F2
            - scale(F * R + R * F, gamma)
            - scale(R, rho)
        )
        out.append(Residual(check, "e:L", (i,), lowering * Es[i], field))
        out.append(Residual(check, "e:R", (i,), raising * Es[i - 1], field))

    FLR, FRL = commutator(F, L * R), commutator(F, R * L)
    for i in range(d + 1):
        flat = scale(FLR, ts(i) - ts(i + 1)) - scale(FRL, ts(i - 1) - ts(i))
        out.append(Residual(check, "F:LR", (i,), flat * Es[i], field))
    return out


def check_rfl_ranks(system: TridiagonalSystem, rfl: RFL | None = None) -> list[RankEntry]:
    """Ranks of R^(j-i), L^(j-i) and the A, A* sandwiches for every i <= j."""
    rfl = rfl or compute_rfl(system)
    d, rho = system.d, system.shape
    A, As, E, Es = system.A, system.Astar, system.E, system.Estar
    check = CheckId.RFL_RANKS
    out = []
    Rk, Lk, Ak, Ask = [], [], [], []
    for k in range(d + 1):
        Rk.append(power(rfl.R, k))
        Lk.append(power(rfl.L, k))
        Ak.append(power(A, k))
        Ask.append(power(As, k))
    for i in range(d + 1):
        for j in range(i, d + 1):
            k = j - i
            low = min(rho[i], rho[j])
            out.append(RankEntry(check, "R^(j-i) E*_i", i, j, (Rk[k] * Es[i]).rank(), rho[i] if i + j <= d else rho[j]))
            out.append(RankEntry(check, "L^(j-i) E*_j", i, j, (Lk[k] * Es[j]).rank(), rho[j] if i + j >= d else rho[i]))
            out.append(RankEntry(check, "E*_i A^(j-i) E*_j", i, j, (Es[i] * Ak[k] * Es[j]).rank(), low))
            out.append(RankEntry(check, "E*_j A^(j-i) E*_i", i, j, (Es[j] * Ak[k] * Es[i]).rank(), low))
            out.append(RankEntry(check, "E_i A*^(j-i) E_j", i, j, (E[i] * Ask[k] * E[j]).rank(), low))
            out.append(RankEntry(check, "E_j A*^(j-i) E_i", i, j, (E[j] * Ask[k] * E[i]).rank(), low))
    return out
