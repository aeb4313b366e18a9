from fractions import Fraction

import pytest

from exact.errors import ScalarFormatError
from exact.fields import Field, FieldKind


def test_parse_descriptors():
    assert Field.parse("rational") == Field.rational()
    f = Field.parse("prime:101")
    assert f.kind is FieldKind.PRIME and f.p == 101
    assert f.descriptor == "prime:101"
    assert f.characteristic == 101
    assert Field.rational().characteristic == 0


@pytest.mark.parametrize("text", ["complex", "prime:100", "prime:x", "prime:"])
def test_parse_rejects_bad_descriptors(text):
    with pytest.raises(ValueError):
        Field.parse(text)


def test_rational_scalars():
    f = Field.rational()
    assert f.format_scalar(f.parse_scalar("-6/4")) == "-3/2"
    assert f.format_scalar(f.scalar(7)) == "7"
    assert f.scalar(Fraction(1, 3)) == f.parse_scalar("1/3")
    assert f.format_scalar(f.scalar(-4)) == "-4"


def test_prime_scalars_reduce_mod_p():
    f = Field.prime(7)
    assert f.format_scalar(f.scalar(-1)) == "6"
    # 1/2 = 4 mod 7
    assert f.format_scalar(f.parse_scalar("1/2")) == "4"
    assert f.is_zero(f.scalar(14))


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5", ""])
def test_bad_scalar_text(text):
    with pytest.raises(ScalarFormatError):
        Field.rational().parse_scalar(text)


def test_denominator_vanishing_mod_p():
    with pytest.raises(ScalarFormatError):
        Field.prime(5).parse_scalar("1/10")


def test_domains_are_shared_between_equal_fields():
    assert Field.prime(11).domain is Field.parse("prime:11").domain


def test_two_is_not_an_admissible_modulus():
    with pytest.raises(ValueError):
        Field.prime(2)
    with pytest.raises(ValueError):
        Field.parse("prime:2")
