"""Identities tying the E*-decomposition to the split decomposition."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from sympy.polys.matrices import DomainMatrix

from exact.fields import Scalar
from exact.matrices import identity, power, same, scale, zeros
from tdpair.errors import InternalInconsistencyError
from tdpair.models import CheckId, RelationParameters, Residual, TridiagonalSystem
from tdpair.rfl import RFL, compute_rfl
from tdpair.split import SplitDecomposition, compute_split
from tdpair.system import compute_relation_parameters

logger = logging.getLogger(__name__)


def lower_product(seq: Sequence[Scalar], i: int, j: int, K) -> Scalar:
    """(seq_j - seq_i)(seq_j - seq_{i+1}) ... (seq_j - seq_{j-1}); empty is 1."""
    out = K.one
    for k in range(i, j):
        out *= seq[j] - seq[k]
    return out


def upper_product(seq: Sequence[Scalar], i: int, j: int, K) -> Scalar:
    """(seq_i - seq_{i+1})(seq_i - seq_{i+2}) ... (seq_i - seq_j); empty is 1."""
    out = K.one
    for k in range(i + 1, j + 1):
        out *= seq[i] - seq[k]
    return out


@dataclass(frozen=True)
class DescentDenominator:
    """Denominators carrying F_jE*_j down to F_iE*_j and E*_iF_i across to E*_iF_j."""

    i: int
    j: int
    lower: Scalar
    upper: Scalar


def descent_denominator(system: TridiagonalSystem, i: int, j: int) -> DescentDenominator:
    K = system.field.domain
    return DescentDenominator(
        i,
        j,
        lower_product(system.thetastar, i, j, K),
        upper_product(system.thetastar, i, j, K),
    )


class BridgeTerms:
    """Cached powers and operator sums shared by the bridge checks."""

    def __init__(self, system: TridiagonalSystem, split: SplitDecomposition):
        self.system = system
        self.split = split
        self.K = system.field.domain
        d = system.d
        self.Rs = [power(split.raising, k) for k in range(d + 2)]
        self.Ls = [power(split.lowering, k) for k in range(d + 2)]

    @cached_property
    def anchors(self) -> list[DomainMatrix]:
        """F_jE*_j for each j."""
        return [F * Es for F, Es in zip(self.split.F, self.system.Estar)]

    def master_operator(self, i: int, j: int) -> DomainMatrix:
        """The operator X with F_iE*_iAE*_j = X F_jE*_j."""
        s_, K, d = self.system, self.K, self.system.d
        th, ts = s_.theta, s_.thetastar
        out = zeros(s_.n, s_.n, s_.field)
        if i <= j:
            coeff = K.zero
            for s in range(i, j + 1):
                coeff += th[s] / (upper_product(ts, i, s, K) * lower_product(ts, s, j, K))
            out = out + scale(self.Ls[j - i], coeff)
        for s in range(max(i - 1, 0), min(j, d - 1) + 1):
            r = s + 1
            den = upper_product(ts, i, r, K) * lower_product(ts, s, j, K)
            out = out + scale(self.Ls[r - i] * self.split.raising * self.Ls[j - s], K.one / den)
        return out

    def dual_split_operator(self, i: int, j: int) -> DomainMatrix:
        """Mirror of the master operator with raising and lowering maps exchanged, acting on F_iV."""
        s_, K, d = self.system, self.K, self.system.d
        th, ts = s_.theta, s_.thetastar
        coeff = K.zero
        for s in range(i, j + 1):
            coeff += ts[s] / (lower_product(th, s, j, K) * upper_product(th, i, s, K))
        out = scale(self.Rs[j - i], coeff)
        for s in range(max(i - 1, 0), min(j, d - 1) + 1):
            r = s + 1
            den = lower_product(th, s, j, K) * upper_product(th, i, r, K)
            out = out + scale(self.Rs[j - s] * self.split.lowering * self.Rs[r - i], K.one / den)
        return out

    def raise_operator(self, j: int) -> DomainMatrix:
        return self.split.raising

    def flat_operator(self, j: int) -> DomainMatrix:
        """theta_j I + Rs Ls/(theta*_j - theta*_{j-1}) + Ls Rs/(theta*_j - theta*_{j+1})."""
        s_, K = self.system, self.K
        ts, Rs, Ls = s_.thetastar, self.split.raising, self.split.lowering
        out = scale(identity(s_.n, s_.field), s_.theta[j])
        if j > 0:
            out = out + scale(Rs * Ls, K.one / (ts[j] - ts[j - 1]))
        if j < s_.d:
            out = out + scale(Ls * Rs, K.one / (ts[j] - ts[j + 1]))
        return out

    def lower_operator(self, j: int) -> DomainMatrix:
        s_, K, d = self.system, self.K, self.system.d
        th, ts, Rs, Ls = s_.theta, s_.thetastar, self.split.raising, self.split.lowering
        out = scale(Ls, (th[j] - th[j - 1]) / (ts[j - 1] - ts[j]))
        if j >= 2:
            out = out + scale(Rs * Ls * Ls, K.one / ((ts[j] - ts[j - 1]) * (ts[j] - ts[j - 2])))
        out = out - scale(Ls * Rs * Ls, K.one / (ts[j - 1] - ts[j]) ** 2)
        if j <= d - 1:
            out = out + scale(Ls * Ls * Rs, K.one / ((ts[j - 1] - ts[j]) * (ts[j - 1] - ts[j + 1])))
        return out


def check_descent(system: TridiagonalSystem, split: SplitDecomposition | None = None) -> list[Residual]:
    """F_iE*_j and E*_iF_j expressed through the lowering map, for i <= j."""
    split = split or compute_split(system)
    d, field, K = system.d, system.field, system.field.domain
    F, Es, ts = split.F, system.Estar, system.thetastar
    Ls = [power(split.lowering, k) for k in range(d + 1)]
    check = CheckId.DESCENT
    out = []
    for i in range(d + 1):
        for j in range(i, d + 1):
            den = descent_denominator(system, i, j)
            closed = F[i] * Es[j] - scale(Ls[j - i] * F[j] * Es[j], K.one / den.lower)
            out.append(Residual(check, "F_i E*_j", (i, j), closed, field))
            closed = Es[i] * F[j] - scale(Es[i] * F[i] * Ls[j - i], K.one / den.upper)
            out.append(Residual(check, "E*_i F_j", (i, j), closed, field))
            if i < j:
                step = F[i] * Es[j] - scale(Ls[1] * F[i + 1] * Es[j], K.one / (ts[j] - ts[i]))
                out.append(Residual(check, "F_i E*_j step", (i, j), step, field))
                step = Es[i] * F[j] - scale(Es[i] * F[j - 1] * Ls[1], K.one / (ts[i] - ts[j]))
                out.append(Residual(check, "E*_i F_j step", (i, j), step, field))
    return out


def check_master_identity(system: TridiagonalSystem, split: SplitDecomposition | None = None) -> list[Residual]:
    """F_iE*_iAE*_j against its expansion in the split maps, for all i, j.

    Near the diagonal the expansion is also compared with the closed
    raising, flat and lowering operators.
    """
    split = split or compute_split(system)
    terms = BridgeTerms(system, split)
    d, field, A, Es, F = system.d, system.field, system.A, system.Estar, split.F
    check = CheckId.MASTER
    closed = {1: terms.raise_operator, 0: terms.flat_operator, -1: terms.lower_operator}
    out = []
    for i in range(d + 1):
        for j in range(d + 1):
            anchor = terms.anchors[j]
            expansion = terms.master_operator(i, j) * anchor
            out.append(Residual(check, "master", (i, j), F[i] * Es[i] * A * Es[j] - expansion, field))
            if i - j in closed:
                operator = closed[i - j](j)
                out.append(Residual(check, "master vs closed form", (i, j), operator * anchor - expansion, field))
    return out


def check_diagrams(
    system: TridiagonalSystem, split: SplitDecomposition | None = None, rfl: RFL | None = None
) -> list[Residual]:
    """psi carries R, F, L on E*_jV to the closed split operators on F_jV."""
    split = split or compute_split(system)
    rfl = rfl or compute_rfl(system)
    terms = BridgeTerms(system, split)
    d, field, A, Es, F, psi = system.d, system.field, system.A, system.Estar, split.F, split.psi
    check = CheckId.DIAGRAMS
    out = []

    def commutes(label: str, j: int, source: DomainMatrix, operator: DomainMatrix, target: int) -> None:
        residual = (psi * source - operator * psi) * Es[j]
        direct = F[target] * Es[target] * A * Es[j] - operator * terms.anchors[j]
        if not same(residual, direct):
            raise InternalInconsistencyError(f"{label} diagram at {j} disagrees with its direct form")
        out.append(Residual(check, label, (j,), residual, field))

    for j in range(d + 1):
        if j < d:
            commutes("R", j, rfl.R, terms.raise_operator(j), j + 1)
        commutes("F", j, rfl.F, terms.flat_operator(j), j)
        if j > 0:
            commutes("L", j, rfl.L, terms.lower_operator(j), j - 1)
    return out


def cubic_coefficient(system: TridiagonalSystem, j: int) -> Scalar:
    """e_j = (theta_{j-1}-theta_{j-2})(theta*_{j-1}-theta*_{j-2}) - (theta_{j-1}-theta_j)(theta*_{j-1}-theta*_j)."""
    th, ts = system.theta, system.thetastar
    return (th[j - 1] - th[j - 2]) * (ts[j - 1] - ts[j - 2]) - (th[j - 1] - th[j]) * (ts[j - 1] - ts[j])


def check_split_sums(
    system: TridiagonalSystem,
    split: SplitDecomposition | None = None,
    params: RelationParameters | None = None,
) -> list[Residual]:
    """Vanishing double sums for j - i >= 2 and the cubic split relations."""
    split = split or compute_split(system)
    params = params or compute_relation_parameters(system)
    terms = BridgeTerms(system, split)
    d, field, K, F = system.d, system.field, system.field.domain, split.F
    Rs, Ls = split.raising, split.lowering
    check = CheckId.SPLIT_SUMS
    out = []
    for i in range(d + 1):
        for j in range(i + 2, d + 1):
            out.append(Residual(check, "sum on F_j", (i, j), terms.master_operator(i, j) * F[j], field))
            out.append(Residual(check, "sum on F_i", (i, j), terms.dual_split_operator(i, j) * F[i], field))

    b1 = params.beta + K.one
    L2, R2 = Ls * Ls, Rs * Rs
    lowering = Rs * L2 * Ls - scale(Ls * Rs * L2, b1) + scale(L2 * Rs * Ls, b1) - L2 * Ls * Rs
    raising = R2 * Rs * Ls - scale(R2 * Ls * Rs, b1) + scale(Rs * Ls * R2, b1) - Ls * R2 * Rs
    for j in range(2, d + 1):
        e = b1 * cubic_coefficient(system, j)
        out.append(Residual(check, "cubic Ls", (j,), (lowering - scale(L2, e)) * F[j], field))
        out.append(Residual(check, "cubic Rs", (j,), (raising - scale(R2, e)) * F[j - 2], field))
    return out
