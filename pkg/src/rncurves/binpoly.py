"""Homogeneous polynomials in two variables over an exact field.

A polynomial of degree d is stored as the coefficient tuple
``(c_0, ..., c_d)`` meaning ``sum(c_i * s**(d-i) * t**i)``; index equals
the power of the second variable.  Degree is part of the representation,
so the zero polynomial of each degree exists and arithmetic checks
degrees rather than trimming them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .fields import Field, PrimeField, Scalar


class BinaryPoly:
    """Homogeneous binary polynomial with exact coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[Scalar]):
        if not coeffs:
            raise ValueError("need at least the constant coefficient")
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(c) for c in self.coeffs)

    @classmethod
    def zero(cls, field: Field, degree: int) -> "BinaryPoly":
        return cls(field, [field.zero] * (degree + 1))

    def add(self, other: "BinaryPoly") -> "BinaryPoly":
        self._check(other)
        F = self.field
        return BinaryPoly(F, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def sub(self, other: "BinaryPoly") -> "BinaryPoly":
        self._check(other)
        F = self.field
        return BinaryPoly(F, [F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: Scalar) -> "BinaryPoly":
        F = self.field
        return BinaryPoly(F, [F.mul(c, a) for a in self.coeffs])

    def mul(self, other: "BinaryPoly") -> "BinaryPoly":
        if other.field != self.field:
            raise ValueError("field mismatch")
        F = self.field
        out = [F.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryPoly(F, out)

    def evaluate(self, u: Scalar, v: Scalar) -> Scalar:
        """Value at the point (u, v)."""
        F = self.field
        d = self.degree
        acc = F.zero
        for i, c in enumerate(self.coeffs):
            term = F.mul(c, F.mul(F.pow(u, d - i), F.pow(v, i)))
            acc = F.add(acc, term)
        return acc

    def deriv_first(self) -> "BinaryPoly":
        """Partial derivative in the first variable (degree drops by one)."""
        F = self.field
        d = self.degree
        if d == 0:
            return BinaryPoly.zero(F, 0)
        return BinaryPoly(F, [F.mul(F.from_int(d - i), self.coeffs[i]) for i in range(d)])

    def deriv_second(self) -> "BinaryPoly":
        """Partial derivative in the second variable (degree drops by one)."""
        F = self.field
        d = self.degree
        if d == 0:
            return BinaryPoly.zero(F, 0)
        return BinaryPoly(F, [F.mul(F.from_int(i + 1), self.coeffs[i + 1]) for i in range(d)])

    def _check(self, other: "BinaryPoly") -> None:
        if other.field != self.field or other.degree != self.degree:
            raise ValueError("degree or field mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"BinaryPoly({self.field!r}, {list(self.coeffs)!r})"


def _strip_factors(p: BinaryPoly) -> tuple[int, int, list[Scalar]]:
    """Split off powers of the two coordinate linear forms.

    Returns ``(m2, m1, core)`` where m2 is the multiplicity of the second
    variable as a factor (leading zero coefficients), m1 the multiplicity
    of the first (trailing zeros), and ``core`` the remaining coefficient
    list with nonzero ends.
    """
    F = p.field
    cs = list(p.coeffs)
    m2 = 0
    while cs and F.is_zero(cs[0]):
        cs.pop(0)
        m2 += 1
    m1 = 0
    while cs and F.is_zero(cs[-1]):
        cs.pop()
        m1 += 1
    return m2, m1, cs


def _univ_mod(field: Field, f: list[Scalar], g: list[Scalar]) -> list[Scalar]:
    """Remainder of f by g; ascending coefficient lists, g nonzero."""
    f = list(f)
    dg = len(g) - 1
    lead_inv = field.inv(g[-1])
    while len(f) - 1 >= dg and f:
        if field.is_zero(f[-1]):
            f.pop()
            continue
        q = field.mul(f[-1], lead_inv)
        shift = len(f) - 1 - dg
        for i in range(dg + 1):
            f[shift + i] = field.sub(f[shift + i], field.mul(q, g[i]))
        f.pop()
    while f and field.is_zero(f[-1]):
        f.pop()
    return f


def _univ_gcd(field: Field, f: list[Scalar], g: list[Scalar]) -> list[Scalar]:
    """Monic gcd of two univariate ascending coefficient lists."""
    f = [c for c in f]
    g = [c for c in g]
    while g:
        f, g = g, _univ_mod(field, f, g)
    inv = field.inv(f[-1])
    return [field.mul(inv, c) for c in f]


def poly_gcd(a: BinaryPoly, b: BinaryPoly) -> BinaryPoly:
    """Gcd of two homogeneous polynomials, normalized.

    The result is monic in the sense that its highest nonzero coefficient
    (largest power of the second variable) equals one.  If one argument is
    zero the normalized other is returned; both zero is an error.
    """
    if a.field != b.field:
        raise ValueError("field mismatch")
    F = a.field
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero() or b.is_zero():
        src = b if a.is_zero() else a
        m2, m1, core = _strip_factors(src)
        inv = F.inv(core[-1])
        cs = [F.zero] * m2 + [F.mul(inv, c) for c in core] + [F.zero] * m1
        return BinaryPoly(F, cs)
    m2a, m1a, core_a = _strip_factors(a)
    m2b, m1b, core_b = _strip_factors(b)
    g = _univ_gcd(F, core_a, core_b)
    m2 = min(m2a, m2b)
    m1 = min(m1a, m1b)
    cs = [F.zero] * m2 + g + [F.zero] * m1
    return BinaryPoly(F, cs)


def is_squarefree(p: BinaryPoly) -> bool:
    """True iff ``p`` has no repeated projective root.

    Uses the gcd of ``p`` with both partial derivatives; valid in
    characteristic zero and in characteristic greater than the degree.
    """
    if p.is_zero():
        raise ValueError("squarefreeness of the zero polynomial is undefined")
    char = p.field.characteristic
    if 0 < char <= p.degree:
        raise ValueError("characteristic must exceed the degree")
    if p.degree == 0:
        return True
    g = poly_gcd(poly_gcd(p, p.deriv_first()), p.deriv_second())
    return g.degree == 0


def projective_roots(p: BinaryPoly) -> list[tuple[tuple[Scalar, Scalar], int]]:
    """Roots of ``p`` in the projective line over its own field.

    Returns ``[((u, v), multiplicity), ...]`` with representatives
    normalized to ``(1, v)`` or ``(0, 1)``.  Only roots rational over the
    coefficient field are listed, so the multiplicities may sum to less
    than the degree.  Factorization is delegated to sympy.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no root list")
    F = p.field
    m2, m1, core = _strip_factors(p)
    roots: list[tuple[tuple[Scalar, Scalar], int]] = []
    if m2:
        roots.append(((F.one, F.zero), m2))
    if m1:
        roots.append(((F.zero, F.one), m1))
    if len(core) > 1:
        roots.extend(((F.one, v), m) for v, m in _dehomogenized_roots(F, core))
    return roots


def _dehomogenized_roots(field: Field, coeffs: list[Scalar]) -> list[tuple[Scalar, int]]:
    import sympy

    z = sympy.Symbol("z")
    if isinstance(field, PrimeField):
        poly = sympy.Poly(list(reversed([c % field.p for c in coeffs])), z, modulus=field.p)
        _, factors = poly.factor_list()
        out = []
        for fac, mult in factors:
            fc = fac.all_coeffs()
            if len(fc) == 2:
                lead, const = int(fc[0]), int(fc[1])
                out.append((field.div(field.neg(const % field.p), lead % field.p), mult))
        return out
    sym_coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
    poly = sympy.Poly(sym_coeffs, z)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        fc = fac.all_coeffs()
        if len(fc) == 2:
            lead = Fraction(int(fc[0].p), int(fc[0].q))
            const = Fraction(int(fc[1].p), int(fc[1].q))
            out.append((-const / lead, mult))
    return out
