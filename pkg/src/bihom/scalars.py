"""Exact scalars: rationals (``fractions.Fraction``) and prime-field elements.

Plain Python ``int`` is accepted as a literal in either field; mixing a
``Fraction`` with an ``FpElement`` (or two different moduli) raises
``FieldMismatch``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from operator import itemgetter
from typing import Union

from .errors import FieldMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FpElement(tuple):
    """Element of the prime field F_p, always stored reduced into [0, p)."""

    __slots__ = ()

    def __new__(cls, value: int, modulus: int):
        if type(value) is not int:
            if isinstance(value, FpElement):
                if value.modulus != modulus:
                    raise FieldMismatch(f"cannot reinterpret mod {value.modulus} as mod {modulus}")
                return value
            if isinstance(value, Fraction):
                if value.denominator % modulus == 0:
                    raise ZeroDivisionError(f"{value} has no image mod {modulus}")
                value = value.numerator * pow(value.denominator, -1, modulus)
            else:
                value = int(value)
        return tuple.__new__(cls, (value % modulus, modulus))

    @classmethod
    def _mk(cls, value: int, modulus: int) -> "FpElement":
        return tuple.__new__(cls, (value % modulus, modulus))

    value = property(itemgetter(0), doc="Representative in [0, p).")
    modulus = property(itemgetter(1), doc="The prime p.")

    def __getnewargs__(self):
        return (self.value, self.modulus)

    def _coerce(self, other) -> int:
        if type(other) is FpElement:
            if other[1] != self[1]:
                raise FieldMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other[0]
        if isinstance(other, bool):
            return int(other)
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch("cannot mix a rational with an F_p element")
        return NotImplemented

    def __add__(self, other):
        if type(other) is FpElement and other[1] == self[1]:
            return tuple.__new__(FpElement, ((self[0] + other[0]) % self[1], self[1]))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return tuple.__new__(FpElement, ((self[0] + o) % self[1], self[1]))

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is FpElement and other[1] == self[1]:
            return tuple.__new__(FpElement, ((self[0] - other[0]) % self[1], self[1]))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return tuple.__new__(FpElement, ((self[0] - o) % self[1], self[1]))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement._mk(o - self.value, self.modulus)

    def __mul__(self, other):
        if type(other) is FpElement and other[1] == self[1]:
            return tuple.__new__(FpElement, ((self[0] * other[0]) % self[1], self[1]))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return tuple.__new__(FpElement, ((self[0] * o) % self[1], self[1]))

    __rmul__ = __mul__

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.modulus}")
        return FpElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.modulus).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.modulus) * self.inverse()

    def __neg__(self):
        return tuple.__new__(FpElement, ((-self[0]) % self[1], self[1]))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.modulus), self.modulus)

    def __bool__(self):
        return self[0] != 0

    def __len__(self):
        raise TypeError("FpElement has no len()")

    def __iter__(self):
        raise TypeError("FpElement is not iterable")

    def __eq__(self, other):
        if type(other) is FpElement:
            return self[1] == other[1] and self[0] == other[0]
        if type(other) is int:
            return self[0] == other % self[1]
        if isinstance(other, FpElement):
            return self[1] == other[1] and self[0] == other[0]
        if isinstance(other, int) and not isinstance(other, bool):
            return self[0] == other % self[1]
        return NotImplemented

    def __hash__(self):
        return hash((self[0], self[1]))

    def _unordered(self, other):
        raise TypeError("F_p elements are not ordered")

    __lt__ = __le__ = __gt__ = __ge__ = _unordered

    def __repr__(self):
        return f"FpElement({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, FpElement]


class Field:
    """Descriptor for a scalar field. Call it to coerce a literal."""

    name: str

    def __call__(self, x) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        z = self.__dict__.get("_zero")
        if z is None:
            z = self.__dict__["_zero"] = self(0)
        return z

    @property
    def one(self) -> Scalar:
        o = self.__dict__.get("_one")
        if o is None:
            o = self.__dict__["_one"] = self(1)
        return o

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        """Parse ``"<int>"`` or ``"<int>/<posint>"``."""
        text = text.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"not a rational literal: {text!r}") from None
        if sep and d <= 0:
            raise ValueError(f"denominator must be a positive integer: {text!r}")
        return self(Fraction(n, d))

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"

    def __call__(self, x) -> Fraction:
        if type(x) is Fraction:
            return x
        if isinstance(x, FpElement):
            raise FieldMismatch("cannot coerce an F_p element into Q")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def contains(self, x) -> bool:
        return type(x) is Fraction or isinstance(x, Fraction)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"

    def __call__(self, x) -> FpElement:
        if type(x) is FpElement and x[1] == self.p:
            return x
        if isinstance(x, str):
            return self.parse(x)
        return FpElement(x, self.p)

    def contains(self, x) -> bool:
        return type(x) is FpElement and x[1] == self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_of(x) -> Field:
    if isinstance(x, FpElement):
        return GF(x.modulus)
    if isinstance(x, Fraction):
        return QQ
    raise TypeError(f"{x!r} is not an exact scalar")


def field_from_name(name: str) -> Field:
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise ValueError(f"bad field descriptor {name!r}") from None
        return GF(p)
    raise ValueError(f"bad field descriptor {name!r} (expected 'Q' or 'Fp:<prime>')")


def _same_field(a: Scalar, b: Scalar) -> None:
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise FieldMismatch(f"{fa} vs {fb}")


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a + b


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a - b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a * b


def scalar_div(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    if not b:
        raise ZeroDivisionError("division by zero")
    return a / b


def format_scalar(x: Scalar) -> str:
    """Canonical text form: ``"n"`` or ``"n/d"`` for rationals, ``"v"`` mod p."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x.value)
