from conftest import mat

from exact.fields import Field
from exact.subspaces import (
    EchelonBasis,
    Subspace,
    is_direct_sum,
    rank_kernel,
    subspace_intersect,
    subspace_sum,
)

QQ = Field.rational()


def vec(values, field=QQ):
    return [field.scalar(v) for v in values]


def test_rank_kernel_over_rationals():
    rank, kernel = rank_kernel(mat([[1, 2], [2, 4]]))
    assert rank == 1
    assert kernel.dim == 1
    assert kernel == Subspace.span([vec([-2, 1])], 2, QQ)


def test_rank_kernel_over_gf3():
    f = Field.prime(3)
    rank, kernel = rank_kernel(mat([[1, 2], [2, 1]], f))
    assert rank == 1
    assert kernel == Subspace.span([vec([1, 1], f)], 2, f)


def test_rank_kernel_full_rank_and_zero():
    rank, kernel = rank_kernel(mat([[1, 0], [0, 1]]))
    assert (rank, kernel.dim) == (2, 0)
    rank, kernel = rank_kernel(mat([[0, 0], [0, 0]]))
    assert (rank, kernel.dim) == (0, 2)


def test_canonical_form_identifies_equal_spans():
    a = Subspace.span([vec([1, 1, 0]), vec([0, 1, 1])], 3, QQ)
    b = Subspace.span([vec([1, 2, 1]), vec([1, 0, -1])], 3, QQ)
    assert a == b
    assert a.rows[0][0] == QQ.one


def test_sum_and_intersection():
    xy = Subspace.span([vec([1, 0, 0]), vec([0, 1, 0])], 3, QQ)
    yz = Subspace.span([vec([0, 1, 0]), vec([0, 0, 1])], 3, QQ)
    meet = subspace_intersect(xy, yz)
    assert meet == Subspace.span([vec([0, 1, 0])], 3, QQ)
    assert subspace_sum(xy, yz).dim == 3
    assert subspace_intersect(xy, Subspace.zero(3, QQ)).dim == 0


def test_direct_sum_detection():
    e = [Subspace.span([vec([1 if i == j else 0 for i in range(3)])], 3, QQ) for j in range(3)]
    assert is_direct_sum(e)
    assert not is_direct_sum(e[:2])
    assert not is_direct_sum([e[0], e[1], e[1]])


def test_echelon_basis_grows_only_on_new_directions():
    basis = EchelonBasis(3, QQ)
    assert basis.add(vec([1, 2, 3]))
    assert basis.add(vec([0, 1, 1]))
    assert not basis.add(vec([2, 5, 7]))
    assert basis.rank == 2
    assert basis.add(vec([0, 0, 5]))
    assert not basis.add(vec([4, -1, 9]))
