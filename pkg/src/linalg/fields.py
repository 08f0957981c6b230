"""
Exact scalar fields: the rationals and prime fields.

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator). Elements of F_p are ``Residue`` objects holding a canonical
representative in [0, p). Python ints mix freely with both; mixing a
Residue with a Fraction, or residues of different primes, raises
FieldMismatchError.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from sympy import isprime

from src.utils.errors import FieldMismatchError, InvalidFieldError


class Residue:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other: Any, operation: str) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(self, other, operation)
            return other.value
        if isinstance(other, int):
            return other
        raise FieldMismatchError(self, other, operation)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other, "addition"), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other, "subtraction"), self.p)

    def __rsub__(self, other):
        return Residue(self._coerce(other, "subtraction") - self.value, self.p)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other, "multiplication"), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        divisor = Residue(self._coerce(other, "division"), self.p)
        return self * divisor.inverse()

    def __rtruediv__(self, other):
        return Residue(self._coerce(other, "division"), self.p) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Residue(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class RationalField:
    """The field Q."""

    characteristic: int = 0

    @property
    def name(self) -> str:
        return "Q"

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, Residue):
            raise FieldMismatchError(value, self.name, "coercion")
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except ValueError:
                raise InvalidFieldError(self.name, f"cannot parse scalar {value!r}")
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise FieldMismatchError(value, self.name, "coercion")
        return Fraction(value)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, value: Any) -> bool:
        return isinstance(value, Fraction)

    def serialize(self, value: Fraction) -> Union[int, str]:
        value = Fraction(value)
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"

    def descriptor(self) -> Any:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; p is checked for primality at construction."""

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not isprime(self.p):
            raise InvalidFieldError(f"Fp:{self.p}", "characteristic must be a prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"F{self.p}"

    def __call__(self, value: Any) -> Residue:
        if isinstance(value, Residue):
            if value.p != self.p:
                raise FieldMismatchError(value, self.name, "coercion")
            return value
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError:
                raise InvalidFieldError(self.name, f"cannot parse scalar {value!r}")
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldMismatchError(value, self.name, "coercion")
            return Residue(value.numerator, self.p) / value.denominator
        if isinstance(value, bool) or not isinstance(value, int):
            raise FieldMismatchError(value, self.name, "coercion")
        return Residue(value, self.p)

    def zero(self) -> Residue:
        return Residue(0, self.p)

    def one(self) -> Residue:
        return Residue(1, self.p)

    def contains(self, value: Any) -> bool:
        return isinstance(value, Residue) and value.p == self.p

    def serialize(self, value: Residue) -> int:
        return self(value).value

    def descriptor(self) -> Any:
        return {"Fp": self.p}


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def parse_field(descriptor: Any) -> Field:
    """
    Build a field from a CLI string ("Q", "Fp:3") or a file descriptor
    ("Q", {"Fp": 3}).
    """
    if isinstance(descriptor, dict):
        if set(descriptor) != {"Fp"}:
            raise InvalidFieldError(descriptor, "expected {\"Fp\": <prime>}")
        return PrimeField(descriptor["Fp"])
    if isinstance(descriptor, str):
        text = descriptor.strip()
        if text.upper() == "Q":
            return QQ
        if text.lower().startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise InvalidFieldError(descriptor, "prime must be an integer")
            return PrimeField(p)
    raise InvalidFieldError(descriptor, "expected 'Q' or 'Fp:<prime>'")
