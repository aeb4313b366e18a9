"""Subspaces of K^n kept in canonical (reduced echelon) form."""

from collections.abc import Sequence
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from exact.errors import AmbientMismatchError, FieldMismatchError
from exact.fields import Field, Scalar
from exact.matrices import field_of


def _echelon_rows(rows: Sequence[Sequence[Scalar]], n: int, field: Field) -> tuple[tuple, ...]:
    if not rows:
        return ()
    R, pivots = DomainMatrix([list(r) for r in rows], (len(rows), n), field.domain).to_dense().rref()
    data = R.to_list()
    return tuple(tuple(data[k]) for k in range(len(pivots)))


@dataclass(frozen=True)
class Subspace:
    """A subspace stored by the nonzero rows of its reduced echelon basis.

    Read as columns, `rows` is the reduced column echelon form with pivots
    scaled to 1, so equal subspaces compare equal.
    """

    field: Field
    ambient: int
    rows: tuple[tuple, ...] = ()

    @classmethod
    def span(cls, vectors: Sequence[Sequence[Scalar]], ambient: int, field: Field) -> "Subspace":
        for v in vectors:
            if len(v) != ambient:
                raise AmbientMismatchError(f"vector of length {len(v)} in K^{ambient}")
        return cls(field, ambient, _echelon_rows(vectors, ambient, field))

    @classmethod
    def column_space(cls, M: DomainMatrix) -> "Subspace":
        return cls.span(M.transpose().to_list(), M.shape[0], field_of(M))

    @classmethod
    def zero(cls, ambient: int, field: Field) -> "Subspace":
        return cls(field, ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[list[Scalar]]:
        return [list(r) for r in self.rows]

    def basis(self) -> DomainMatrix:
        """Basis vectors as the columns of an ambient x dim matrix."""
        K = self.field.domain
        cols = [[self.rows[k][i] for k in range(self.dim)] for i in range(self.ambient)]
        return DomainMatrix(cols, (self.ambient, self.dim), K).to_dense()


def _check_pair(W1: Subspace, W2: Subspace) -> None:
    if W1.field != W2.field:
        raise FieldMismatchError(f"{W1.field} differs from {W2.field}")
    if W1.ambient != W2.ambient:
        raise AmbientMismatchError(f"K^{W1.ambient} differs from K^{W2.ambient}")


def kernel_vectors(M: DomainMatrix) -> list[list[Scalar]]:
    """A kernel basis read off the reduced row echelon form of M."""
    K = M.domain
    m, n = M.shape
    if m == 0:
        return [[K.one if i == j else K.zero for i in range(n)] for j in range(n)]
    R, pivots = M.to_dense().rref()
    data = R.to_list()
    out = []
    for free in (c for c in range(n) if c not in pivots):
        v = [K.zero] * n
        v[free] = K.one
        for k, c in enumerate(pivots):
            v[c] = -data[k][free]
        out.append(v)
    return out


def rank_kernel(M: DomainMatrix) -> tuple[int, Subspace]:
    n = M.shape[1]
    ker = Subspace.span(kernel_vectors(M), n, field_of(M))
    return n - ker.dim, ker


def subspace_sum(W1: Subspace, W2: Subspace) -> Subspace:
    _check_pair(W1, W2)
    return Subspace(W1.field, W1.ambient, _echelon_rows([*W1.rows, *W2.rows], W1.ambient, W1.field))


def subspace_intersect(W1: Subspace, W2: Subspace) -> Subspace:
    _check_pair(W1, W2)
    n, field = W1.ambient, W1.field
    if W1.dim == 0 or W2.dim == 0:
        return Subspace.zero(n, field)
    # x in W1 and W2 iff sum a_k u_k - sum b_l w_l = 0
    joint = [[*(u[i] for u in W1.rows), *(-w[i] for w in W2.rows)] for i in range(n)]
    K = field.domain
    system = DomainMatrix(joint, (n, W1.dim + W2.dim), K)
    vectors = []
    for coeffs in kernel_vectors(system):
        v = [K.zero] * n
        for a, u in zip(coeffs[: W1.dim], W1.rows):
            if not K.is_zero(a):
                v = [vi + a * ui for vi, ui in zip(v, u)]
        vectors.append(v)
    return Subspace.span(vectors, n, field)


def is_direct_sum(parts: Sequence[Subspace]) -> bool:
    """True when the parts are independent and span their ambient space."""
    if not parts:
        return False
    acc = Subspace.zero(parts[0].ambient, parts[0].field)
    for W in parts:
        nxt = subspace_sum(acc, W)
        if nxt.dim != acc.dim + W.dim:
            return False
        acc = nxt
    return acc.dim == parts[0].ambient


class EchelonBasis:
    """Incrementally grown basis of a span of flat vectors.

    Rows are kept fully reduced: every stored row vanishes at the pivots of
    the others, so one pass of elimination decides membership.
    """

    def __init__(self, length: int, field: Field):
        self.length = length
        self.field = field
        self._rows: list[tuple[int, list[Scalar]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence[Scalar]) -> list[Scalar]:
        K = self.field.domain
        v = list(vector)
        for pivot, row in self._rows:
            c = v[pivot]
            if not K.is_zero(c):
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vector: Sequence[Scalar]) -> bool:
        """Insert the vector; return False when it is already in the span."""
        K = self.field.domain
        v = self.reduce(vector)
        pivot = next((i for i, x in enumerate(v) if not K.is_zero(x)), None)
        if pivot is None:
            return False
        inv = K.one / v[pivot]
        v = [x * inv for x in v]
        for k, (p, row) in enumerate(self._rows):
            c = row[pivot]
            if not K.is_zero(c):
                self._rows[k] = (p, [a - c * b for a, b in zip(row, v)])
        self._rows.append((pivot, v))
        return True
