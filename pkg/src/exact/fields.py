import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from typing import Any

from sympy import isprime
from sympy.polys.domains import GF, QQ

from exact.errors import ScalarFormatError

Scalar = Any

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


@cache
def _prime_domain(p: int):
    return GF(p, symmetric=False)


class FieldKind(str, Enum):
    RATIONAL = "rational"
    PRIME = "prime"


@dataclass(frozen=True)
class Field:
    """The rationals or GF(p), wrapping the matching sympy domain."""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONAL and self.p is not None:
            raise ValueError("the rational field takes no modulus")
        if self.kind is FieldKind.PRIME and (self.p is None or not isprime(self.p)):
            raise ValueError(f"GF(p) needs a prime modulus, got {self.p!r}")
        if self.p == 2:
            raise ValueError("GF(2) is not supported; the modulus must be an odd prime")

    @classmethod
    def rational(cls) -> "Field":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(FieldKind.PRIME, int(p))

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Read `rational` or `prime:<p>`."""
        text = text.strip().lower()
        if text == "rational":
            return cls.rational()
        if text.startswith("prime:"):
            try:
                return cls.prime(int(text.split(":", 1)[1]))
            except ValueError as exc:
                raise ValueError(f"bad field descriptor {text!r}: {exc}") from None
        raise ValueError(f"bad field descriptor {text!r}")

    @classmethod
    def of_domain(cls, domain) -> "Field":
        char = domain.characteristic()
        return cls.rational() if char == 0 else cls.prime(char)

    @property
    def descriptor(self) -> str:
        return "rational" if self.kind is FieldKind.RATIONAL else f"prime:{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONAL else self.p

    @property
    def domain(self):
        if self.kind is FieldKind.RATIONAL:
            return QQ
        return _prime_domain(self.p)

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def is_zero(self, x: Scalar) -> bool:
        return self.domain.is_zero(x)

    def scalar(self, value) -> Scalar:
        """Coerce an int, Fraction, string or domain element into the field."""
        K = self.domain
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, bool):
            raise ScalarFormatError("booleans are not scalars")
        if isinstance(value, int):
            return K(value)
        if isinstance(value, Fraction):
            return self._fraction(value.numerator, value.denominator)
        try:
            if K.of_type(value):
                return value
        except TypeError:
            pass
        raise ScalarFormatError(f"cannot read {value!r} as an element of {self.descriptor}")

    def parse_scalar(self, text: str) -> Scalar:
        m = _RATIONAL_RE.match(text)
        if m is None:
            raise ScalarFormatError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        return self._fraction(num, den)

    def _fraction(self, num: int, den: int) -> Scalar:
        if den == 0:
            raise ScalarFormatError("zero denominator")
        K = self.domain
        if self.kind is FieldKind.RATIONAL:
            return K(num, den)
        if den % self.p == 0:
            raise ScalarFormatError(f"denominator {den} vanishes mod {self.p}")
        return K(num) / K(den)

    def format_scalar(self, x: Scalar) -> str:
        if self.kind is FieldKind.RATIONAL:
            num, den = int(self.domain.numer(x)), int(self.domain.denom(x))
            return str(num) if den == 1 else f"{num}/{den}"
        return str(int(x) % self.p)

    def __str__(self) -> str:
        return "QQ" if self.kind is FieldKind.RATIONAL else f"GF({self.p})"
