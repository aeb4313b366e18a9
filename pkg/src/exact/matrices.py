"""Dense DomainMatrix helpers shared by the tridiagonal machinery."""

from collections.abc import Iterable, Sequence

from sympy.polys.matrices import DomainMatrix

from exact.errors import AmbientMismatchError, FieldMismatchError
from exact.fields import Field, Scalar


def matrix(rows: Sequence[Sequence], field: Field) -> DomainMatrix:
    """Build a dense matrix from ints, Fractions, strings or field elements."""
    data = [[field.scalar(x) for x in row] for row in rows]
    m = len(data)
    n = len(data[0]) if data else 0
    if any(len(row) != n for row in data):
        raise AmbientMismatchError("ragged matrix rows")
    return DomainMatrix(data, (m, n), field.domain).to_dense()


def field_of(M: DomainMatrix) -> Field:
    return Field.of_domain(M.domain)


def zeros(m: int, n: int, field: Field) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), field.domain).to_dense()


def identity(n: int, field: Field) -> DomainMatrix:
    return DomainMatrix.eye(n, field.domain).to_dense()


def require_compatible(*mats: DomainMatrix) -> None:
    """All matrices square, same size, same field."""
    first = mats[0]
    for M in mats:
        if M.domain != first.domain:
            raise FieldMismatchError(f"{M.domain} differs from {first.domain}")
        if M.shape[0] != M.shape[1]:
            raise AmbientMismatchError(f"matrix of shape {M.shape} is not square")
        if M.shape != first.shape:
            raise AmbientMismatchError(f"shape {M.shape} differs from {first.shape}")


def is_zero(M: DomainMatrix) -> bool:
    return M.is_zero_matrix


def same(M: DomainMatrix, N: DomainMatrix) -> bool:
    return M.shape == N.shape and (M - N).is_zero_matrix


def nonzero_count(M: DomainMatrix) -> int:
    K = M.domain
    return sum(1 for row in M.to_list() for x in row if not K.is_zero(x))


def first_nonzero(M: DomainMatrix) -> tuple[int, int] | None:
    K = M.domain
    for i, row in enumerate(M.to_list()):
        for j, x in enumerate(row):
            if not K.is_zero(x):
                return i, j
    return None


def scale(M: DomainMatrix, c: Scalar) -> DomainMatrix:
    return M.scalarmul(c).to_dense()


def commutator(X: DomainMatrix, Y: DomainMatrix) -> DomainMatrix:
    return X * Y - Y * X


def power(M: DomainMatrix, k: int) -> DomainMatrix:
    return (M**k).to_dense()


def total(mats: Iterable[DomainMatrix], n: int, field: Field) -> DomainMatrix:
    out = zeros(n, n, field)
    for M in mats:
        out = out + M
    return out


def trace(M: DomainMatrix) -> Scalar:
    K = M.domain
    rows = M.to_list()
    out = K.zero
    for i in range(min(M.shape)):
        out += rows[i][i]
    return out


def kron(X: DomainMatrix, Y: DomainMatrix) -> DomainMatrix:
    (p, q), (r, s) = X.shape, Y.shape
    xs, ys = X.to_list(), Y.to_list()
    rows = [[xs[i // r][j // s] * ys[i % r][j % s] for j in range(q * s)] for i in range(p * r)]
    return DomainMatrix(rows, (p * r, q * s), X.domain).to_dense()


def column(values: Sequence[Scalar], field: Field) -> DomainMatrix:
    return matrix([[v] for v in values], field)


def to_text(M: DomainMatrix) -> list[list[str]]:
    field = field_of(M)
    return [[field.format_scalar(x) for x in row] for row in M.to_list()]
