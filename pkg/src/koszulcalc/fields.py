"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

A field is fixed once per session (per algebra).  Rational scalars are
`fractions.Fraction` instances; prime-field scalars are plain ints in
``[0, p)``.  Both are immutable and hashable, so vectors and matrices
built from them can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Field", "Rationals", "PrimeField", "QQ", "GF", "field_from_name"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; concrete fields below."""

    name: str
    char: int

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == self.zero

    def parse(self, text: str):
        """Parse an exact scalar written as 'a' or 'a/b' with decimal integers."""
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))

    def format(self, x) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "Q"
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return a / b

    def format(self, x) -> str:
        return str(x)


class PrimeField(Field):
    char: int

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def format(self, x) -> str:
        return str(x)


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse a field descriptor: 'Q', or 'Fp:<prime>' / 'F<prime>'."""
    name = name.strip()
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return PrimeField(int(name[3:]))
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown field descriptor {name!r}")
