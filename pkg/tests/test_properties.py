from fractions import Fraction

from conftest import GF101, QQ_FIELD, mat
from hypothesis import given, settings
from hypothesis import strategies as st

from exact.matrices import identity, same
from exact.spectral import nilpotent_exp_scaled
from exact.subspaces import Subspace, rank_kernel, subspace_intersect, subspace_sum

entries = st.integers(min_value=-3, max_value=3)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


vectors = st.lists(st.lists(entries, min_size=4, max_size=4), min_size=0, max_size=3)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_rank_of_transpose(rows):
    M = mat(rows)
    assert M.rank() == M.transpose().rank()


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_rank_plus_nullity(rows):
    M = mat(rows)
    rank, kernel = rank_kernel(M)
    assert rank == M.rank()
    assert rank + kernel.dim == len(rows)
    if kernel.dim:
        assert (M * kernel.basis()).is_zero_matrix


@settings(max_examples=50, deadline=None)
@given(vectors, vectors)
def test_dimension_formula(first, second):
    W1 = Subspace.span([[QQ_FIELD.scalar(x) for x in v] for v in first], 4, QQ_FIELD)
    W2 = Subspace.span([[QQ_FIELD.scalar(x) for x in v] for v in second], 4, QQ_FIELD)
    assert subspace_sum(W1, W2).dim + subspace_intersect(W1, W2).dim == W1.dim + W2.dim
    assert subspace_sum(subspace_intersect(W1, W2), W1) == W1


@settings(max_examples=30, deadline=None)
@given(
    st.lists(entries, min_size=6, max_size=6),
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
)
def test_exponential_inverse(below, c):
    it = iter(below)
    N = mat([[next(it) if j < i else 0 for j in range(4)] for i in range(4)])
    scalar = QQ_FIELD.scalar(c)
    product = nilpotent_exp_scaled(N, scalar) * nilpotent_exp_scaled(N, -scalar)
    assert same(product, identity(4, QQ_FIELD))


@given(st.fractions(max_denominator=1000))
def test_rational_text_round_trip(value):
    text = QQ_FIELD.format_scalar(QQ_FIELD.scalar(value))
    assert Fraction(text) == value


@given(st.integers(min_value=-500, max_value=500))
def test_prime_residues(value):
    x = GF101.scalar(value)
    assert GF101.format_scalar(x) == str(value % 101)
    assert GF101.parse_scalar(GF101.format_scalar(x)) == x
