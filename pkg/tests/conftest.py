from fractions import Fraction

import pytest

from exact.fields import Field
from exact.matrices import matrix
from tdpair.krawtchouk import KrawtchoukParams, construct_krawtchouk
from tdpair.split import compute_split

QQ_FIELD = Field.rational()
GF101 = Field.prime(101)


def mat(rows, field=QQ_FIELD):
    return matrix(rows, field)


def scalars(values, field=QQ_FIELD):
    return tuple(field.scalar(v) for v in values)


@pytest.fixture(scope="session")
def kraw1():
    return construct_krawtchouk(KrawtchoukParams.of(1, Fraction(1, 2), QQ_FIELD))


@pytest.fixture(scope="session")
def kraw2():
    return construct_krawtchouk(KrawtchoukParams.of(2, Fraction(1, 2), QQ_FIELD))


@pytest.fixture(scope="session")
def kraw3():
    return construct_krawtchouk(KrawtchoukParams.of(3, Fraction(1, 2), QQ_FIELD))


@pytest.fixture(scope="session")
def kraw3_gf():
    return construct_krawtchouk(KrawtchoukParams.of(3, 3, GF101))


@pytest.fixture(scope="session")
def split1(kraw1):
    return compute_split(kraw1[0])


@pytest.fixture(scope="session")
def triangle_pair():
    """Irreducible pair whose A*-graph on the eigenspaces of A is a triangle."""
    A = mat([[0, 0, 0], [0, 1, 0], [0, 0, 2]])
    Astar = mat([["1/2", "-1/2", "1/2"], [-1, 1, 1], ["-1/2", "1/2", "3/2"]])
    return A, Astar
