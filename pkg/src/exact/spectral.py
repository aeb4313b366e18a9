import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce
from math import lcm

from sympy import divisors
from sympy.polys.densetools import dup_eval
from sympy.polys.matrices import DomainMatrix

from exact.errors import (
    AmbientMismatchError,
    DecompositionError,
    FactorialNotInvertibleError,
    NotDiagonalizableError,
    NotNilpotentError,
)
from exact.fields import Field, FieldKind, Scalar
from exact.matrices import field_of, identity, is_zero, same, scale, total, zeros
from exact.subspaces import Subspace, is_direct_sum, rank_kernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Spectrum:
    eigenpairs: tuple[tuple[Scalar, Subspace], ...]
    diagonalizable: bool

    @property
    def eigenvalues(self) -> list[Scalar]:
        return [theta for theta, _ in self.eigenpairs]


def _rational_roots(coeffs: list, field: Field) -> list[Scalar]:
    K = field.domain
    roots = []
    while len(coeffs) > 1 and K.is_zero(coeffs[-1]):
        coeffs = coeffs[:-1]
        if not roots:
            roots.append(K.zero)
    if len(coeffs) == 1:
        return roots
    den = reduce(lcm, (int(K.denom(c)) for c in coeffs), 1)
    ints = [int(K.numer(c)) * (den // int(K.denom(c))) for c in coeffs]
    for p in divisors(abs(ints[-1])):
        for q in divisors(abs(ints[0])):
            for sign in (1, -1):
                x = K(sign * p, q)
                if x not in roots and K.is_zero(dup_eval(coeffs, x, K)):
                    roots.append(x)
    return roots


def _prime_roots(coeffs: list, field: Field) -> list[Scalar]:
    K = field.domain
    return [K(x) for x in range(field.p) if K.is_zero(dup_eval(coeffs, K(x), K))]


def eigenvalues_in_field(M: DomainMatrix) -> Spectrum:
    """Eigenvalues of M lying in its field, with their eigenspaces.

    Rational eigenvalues are listed in decreasing order, residues mod p in
    increasing order.
    """
    if M.shape[0] != M.shape[1]:
        raise AmbientMismatchError(f"matrix of shape {M.shape} is not square")
    field = field_of(M)
    n = M.shape[0]
    coeffs = M.to_dense().charpoly()
    if field.kind is FieldKind.RATIONAL:
        roots = sorted(set(_rational_roots(coeffs, field)), reverse=True)
    else:
        roots = _prime_roots(coeffs, field)
    I = identity(n, field)
    pairs = []
    for theta in roots:
        _, space = rank_kernel(M - scale(I, theta))
        pairs.append((theta, space))
    diagonalizable = sum(space.dim for _, space in pairs) == n
    logger.debug("spectrum over %s: %d eigenvalues, diagonalizable=%s", field, len(pairs), diagonalizable)
    return Spectrum(tuple(pairs), diagonalizable)


def lagrange_idempotents(M: DomainMatrix, thetas: Sequence[Scalar]) -> list[DomainMatrix]:
    """Primitive idempotents E_i = prod_{j != i} (M - theta_j I)/(theta_i - theta_j)."""
    field = field_of(M)
    K = field.domain
    n = M.shape[0]
    if len(set(thetas)) != len(thetas):
        raise ValueError("eigenvalues must be distinct")
    I = identity(n, field)
    idempotents = []
    for i, ti in enumerate(thetas):
        E = I
        for j, tj in enumerate(thetas):
            if j != i:
                E = scale(E * (M - scale(I, tj)), K.one / (ti - tj))
        idempotents.append(E)
    if not same(total(idempotents, n, field), I):
        raise NotDiagonalizableError("idempotents do not sum to the identity")
    if not same(total((scale(E, t) for E, t in zip(idempotents, thetas)), n, field), M):
        raise NotDiagonalizableError("M is not the weighted sum of its idempotents")
    for i, Ei in enumerate(idempotents):
        for j, Ej in enumerate(idempotents):
            prod = Ei * Ej
            if (i == j and not same(prod, Ei)) or (i != j and not is_zero(prod)):
                raise NotDiagonalizableError(f"E_{i} E_{j} breaks orthogonality")
    return idempotents


def projectors_from_direct_sum(parts: Sequence[Subspace]) -> list[DomainMatrix]:
    """Projections onto each part along the sum of the others."""
    if not is_direct_sum(parts):
        raise DecompositionError("subspaces do not form a direct sum of the whole space")
    field, n = parts[0].field, parts[0].ambient
    K = field.domain
    columns = [v for W in parts for v in W.rows]
    P = DomainMatrix([[v[i] for v in columns] for i in range(n)], (n, n), K).to_dense()
    Pinv = P.inv().to_list()
    Prows = P.to_list()
    projectors, start = [], 0
    for W in parts:
        if W.dim == 0:
            projectors.append(zeros(n, n, field))
            continue
        block = range(start, start + W.dim)
        left = DomainMatrix([[Prows[i][k] for k in block] for i in range(n)], (n, W.dim), K)
        right = DomainMatrix([Pinv[k] for k in block], (W.dim, n), K)
        projectors.append((left * right).to_dense())
        start += W.dim
    return projectors


def nilpotent_exp_scaled(N: DomainMatrix, c: Scalar) -> DomainMatrix:
    """exp(cN) = sum_k (cN)^k / k! for nilpotent N."""
    field = field_of(N)
    K = field.domain
    n = N.shape[0]
    powers = [identity(n, field)]
    while not is_zero(powers[-1]):
        if len(powers) > n:
            raise NotNilpotentError("N^n is nonzero")
        powers.append(powers[-1] * N)
    out = zeros(n, n, field)
    coeff = K.one
    for k, Nk in enumerate(powers[:-1]):
        if k:
            if K.is_zero(K(k)):
                raise FactorialNotInvertibleError(f"{k}! vanishes in {field}")
            coeff = coeff * c / K(k)
        out = out + scale(Nk, coeff)
    return out
