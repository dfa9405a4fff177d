"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Values are raw Python objects (``fractions.Fraction`` for the rationals,
``int`` in ``[0, p)`` for a prime field); the field object supplies the
arithmetic.  This keeps inner loops cheap while guaranteeing exactness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]

# Smallest 62-bit prime (2^61 + 15).  Large enough that small structural
# integers (binomials, derivative factors, the -2 in presentation matrices)
# can never vanish modulo p at the degrees this library handles.
DEFAULT_PRIME = 2305843009213693967

# 2^31 - 1, the default prime for large Monte-Carlo surveys.
SURVEY_PRIME = 2147483647


class RationalField:
    """The field of rationals; values are ``Fraction`` in lowest terms."""

    characteristic = 0
    tag = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def inv(self, a: Fraction) -> Fraction:
        return 1 / a

    def pow(self, a: Fraction, m: int) -> Fraction:
        return a**m

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def from_int(self, m: int) -> Fraction:
        return Fraction(m)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def to_str(self, a: Fraction) -> str:
        return str(a)

    def random(self, rng) -> Fraction:
        # Small integers keep fraction-free elimination cheap downstream.
        return Fraction(rng.randint(-20, 20))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """The prime field of order ``p``; values are ``int`` reduced mod p."""

    def __init__(self, p: int, check: bool = True):
        if check:
            import sympy

            if not sympy.isprime(p):
                raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def pow(self, a: int, m: int) -> int:
        return pow(a, m, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def from_int(self, m: int) -> int:
        return m % self.p

    def parse(self, text: str) -> int:
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    def to_str(self, a: int) -> str:
        return str(a % self.p)

    def random(self, rng) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def GF(p: int) -> PrimeField:
    """Prime field of order ``p`` (``p`` must be prime)."""
    return PrimeField(p)


def field_from_tag(tag: str) -> Field:
    """Parse a field tag: ``"Q"`` or ``"Fp:<prime>"``."""
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        return PrimeField(int(tag[3:]))
    raise ValueError(f"unknown field tag {tag!r} (expected 'Q' or 'Fp:<prime>')")
