"""Exact field arithmetic: prime fields GF(p) and the rationals.

A field object owns the raw representation of its elements and all raw
arithmetic on them.  Raw values are plain ``int`` in ``[0, p)`` for GF(p)
and ``fractions.Fraction`` for the rationals; both are canonical and
hashable, which the matrix and oracle layers rely on.  The ``Scalar``
wrapper pairs a raw value with its field for the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import FieldMismatchError, InfiniteFieldError

RawValue = Union[int, Fraction]

PRIME_FIELD = "prime_field"
RATIONALS = "rationals"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p in (2, 3):
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of PrimeField and RationalField."""

    kind: str

    def canon(self, value) -> RawValue:
        raise NotImplementedError

    def add(self, a: RawValue, b: RawValue) -> RawValue:
        raise NotImplementedError

    def sub(self, a: RawValue, b: RawValue) -> RawValue:
        raise NotImplementedError

    def mul(self, a: RawValue, b: RawValue) -> RawValue:
        raise NotImplementedError

    def neg(self, a: RawValue) -> RawValue:
        raise NotImplementedError

    def inv(self, a: RawValue) -> RawValue:
        raise NotImplementedError

    def div(self, a: RawValue, b: RawValue) -> RawValue:
        return self.mul(a, self.inv(b))

    def parse(self, text: str) -> RawValue:
        raise NotImplementedError

    def format(self, a: RawValue) -> str:
        raise NotImplementedError

    def elements(self) -> Iterator[RawValue]:
        raise NotImplementedError

    @property
    def zero(self) -> RawValue:
        raise NotImplementedError

    @property
    def one(self) -> RawValue:
        raise NotImplementedError

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.canon(value))


class PrimeField(Field):
    """GF(p) for a prime p; raw elements are ints in [0, p)."""

    kind = PRIME_FIELD
    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash((PRIME_FIELD, self.p))

    def canon(self, value) -> int:
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar of {value.field} used in {self}")
            return value.value
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return value.numerator % self.p
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return pow(a, self.p - 2, self.p)

    def parse(self, text: str) -> int:
        return int(text.strip()) % self.p

    def format(self, a) -> str:
        return str(a)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1


class RationalField(Field):
    """The field of rational numbers; raw elements are Fractions."""

    kind = RATIONALS
    __slots__ = ()

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RATIONALS)

    def canon(self, value) -> Fraction:
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar of {value.field} used in {self}")
            return value.value
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        raise InfiniteFieldError("the rationals cannot be enumerated")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field.

    Equality is representational: raw values are canonical, so two scalars
    are equal iff their fields and raw values are.
    """

    field: Field
    value: RawValue

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        return Scalar(self.field, self.field.canon(other))

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __str__(self):
        return self.field.format(self.value)

    @property
    def is_zero(self) -> bool:
        return self.value == self.field.zero


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply a named field operation; op is one of add/sub/mul/div."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def enumerate_field(field: Field) -> Iterator[Scalar]:
    """Yield every element of a prime field once, ascending representatives."""
    if field.kind != PRIME_FIELD:
        raise InfiniteFieldError(f"{field} is not enumerable")
    for v in field.elements():
        yield Scalar(field, v)
