"""Binary forms, contraction by dual forms, catalecticants, Waring rank.

Coordinate conventions
----------------------
A degree-n form is stored by its *catalecticant coordinates*
``(a_0, ..., a_n)``: the form is ``sum(binom(n, d) * a_d * x0**(n-d) * x1**d)``.
With these coordinates every contraction matrix is a plain Hankel slice of
the ``a_d``, with no binomial factors in the entries.

A dual form of degree e is stored by its plain monomial coefficients
``(b_0, ..., b_e)``: the operator ``sum(b_j * D0**(e-j) * D1**j)`` where
``D0, D1`` are the partial-derivative generators acting on forms.

Contraction drops degree from n to n - e and, in catalecticant
coordinates, is the Hankel convolution ``c_i = sum_j b_j * a_(i+j)``
(a convenient overall constant factor is absorbed into the coordinates).
A power ``(u*x0 + v*x1)**n`` has coordinates ``a_d = u**(n-d) * v**d``,
and contracting it by a dual form ``phi`` of degree e yields ``phi(u, v)``
times the power of degree n - e.  Apolarity is therefore root-by-root:
``phi`` kills the n-th power of a linear form exactly when its coefficient
vector, read as a binary polynomial, vanishes at ``(u, v)``.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

from .binpoly import BinaryPoly, is_squarefree, projective_roots
from .fields import Field, Scalar
from .linalg import Matrix


class BinaryForm:
    """Homogeneous binary form stored in catalecticant coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[Scalar]):
        if len(coeffs) < 2:
            raise ValueError("a form must have degree at least one")
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(c) for c in self.coeffs)

    @classmethod
    def from_monomial_coeffs(cls, field: Field, coeffs: Sequence[Scalar]) -> "BinaryForm":
        """Build from plain monomial coefficients ``m_d`` of ``x0^(n-d) x1^d``."""
        n = len(coeffs) - 1
        _check_characteristic(field, n)
        return cls(field, [field.div(c, field.from_int(comb(n, d))) for d, c in enumerate(coeffs)])

    def monomial_coeffs(self) -> list[Scalar]:
        F = self.field
        n = self.degree
        return [F.mul(F.from_int(comb(n, d)), a) for d, a in enumerate(self.coeffs)]

    def add(self, other: "BinaryForm") -> "BinaryForm":
        if other.field != self.field or other.degree != self.degree:
            raise ValueError("degree or field mismatch")
        F = self.field
        return BinaryForm(F, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: Scalar) -> "BinaryForm":
        F = self.field
        return BinaryForm(F, [F.mul(c, a) for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"BinaryForm({self.field!r}, {list(self.coeffs)!r})"


class DualForm:
    """Degree-e element of the dual (derivative) algebra."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[Scalar]):
        if not coeffs:
            raise ValueError("empty coefficient list")
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(c) for c in self.coeffs)

    def as_poly(self) -> BinaryPoly:
        return BinaryPoly(self.field, self.coeffs)

    @classmethod
    def from_poly(cls, p: BinaryPoly) -> "DualForm":
        return cls(p.field, p.coeffs)

    def evaluate(self, u: Scalar, v: Scalar) -> Scalar:
        return self.as_poly().evaluate(u, v)

    def add(self, other: "DualForm") -> "DualForm":
        if other.field != self.field or other.degree != self.degree:
            raise ValueError("degree or field mismatch")
        F = self.field
        return DualForm(F, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: Scalar) -> "DualForm":
        F = self.field
        return DualForm(F, [F.mul(c, a) for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DualForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(("dual", self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"DualForm({self.field!r}, {list(self.coeffs)!r})"


class LinearFormPower:
    """The n-th power of ``u*x0 + v*x1``, kept in factored shape."""

    __slots__ = ("field", "u", "v", "n")

    def __init__(self, field: Field, u: Scalar, v: Scalar, n: int):
        if n < 1:
            raise ValueError("power must be at least one")
        if field.is_zero(u) and field.is_zero(v):
            raise ValueError("zero linear form")
        self.field = field
        self.u = u
        self.v = v
        self.n = n

    def form(self) -> BinaryForm:
        F = self.field
        return BinaryForm(
            F, [F.mul(F.pow(self.u, self.n - d), F.pow(self.v, d)) for d in range(self.n + 1)]
        )

    def annihilator(self) -> DualForm:
        """The linear dual form vanishing on this power."""
        F = self.field
        return DualForm(F, [self.v, F.neg(self.u)])

    def __repr__(self) -> str:
        return f"LinearFormPower({self.field!r}, {self.u!r}, {self.v!r}, {self.n})"


def _check_characteristic(field: Field, n: int) -> None:
    # Binomials, derivative factors and small structural constants must be
    # invertible; requiring char > 2n covers everything this library forms.
    char = field.characteristic
    if 0 < char <= 2 * n:
        raise ValueError(f"field characteristic {char} too small for degree {n} (need > {2 * n})")


def _hankel(f: BinaryForm, e: int) -> Matrix:
    """Contraction-by-degree-e matrix: (n-e+1) x (e+1), entry a_(i+j)."""
    a = f.coeffs
    n = f.degree
    return Matrix(f.field, [[a[i + j] for j in range(e + 1)] for i in range(n - e + 1)])


def contract(phi: DualForm, f: BinaryForm) -> BinaryForm:
    """Apply a degree-e dual form to a degree-n form (requires e < n).

    In catalecticant coordinates this is ``c_i = sum_j b_j a_(i+j)``.
    """
    if phi.field != f.field:
        raise ValueError("field mismatch")
    e, n = phi.degree, f.degree
    if e >= n:
        raise ValueError("dual degree must be smaller than the form degree")
    _check_characteristic(f.field, n)
    F = f.field
    a, b = f.coeffs, phi.coeffs
    out = []
    for i in range(n - e + 1):
        acc = F.zero
        for j in range(e + 1):
            acc = F.add(acc, F.mul(b[j], a[i + j]))
        out.append(acc)
    return BinaryForm(F, out)


def contracts_to_zero(phi: DualForm, f: BinaryForm) -> bool:
    """True iff ``phi`` annihilates ``f`` (any ``1 <= e <= n`` allowed)."""
    if phi.field != f.field:
        raise ValueError("field mismatch")
    e, n = phi.degree, f.degree
    if not 1 <= e <= n:
        raise ValueError("dual degree out of range")
    F = f.field
    a, b = f.coeffs, phi.coeffs
    for i in range(n - e + 1):
        acc = F.zero
        for j in range(e + 1):
            acc = F.add(acc, F.mul(b[j], a[i + j]))
        if not F.is_zero(acc):
            return False
    return True


def catalecticant(f: BinaryForm, e: int) -> Matrix:
    """The (e+1) x (n-e+1) catalecticant matrix, entry (i, j) = a_(i+j)."""
    n = f.degree
    if not 1 <= e <= n - 1:
        raise ValueError(f"need 1 <= e <= {n - 1}, got {e}")
    _check_characteristic(f.field, n)
    a = f.coeffs
    return Matrix(f.field, [[a[i + j] for j in range(n - e + 1)] for i in range(e + 1)])


def apolar_forms(f: BinaryForm, e: int) -> list[DualForm]:
    """Canonical basis of the degree-e part of the annihilator of ``f``.

    Allows ``e == n``: annihilation then means full contraction to zero,
    which adds the single Hankel row ``(a_0, ..., a_n)``.
    """
    n = f.degree
    if not 1 <= e <= n:
        raise ValueError(f"need 1 <= e <= {n}, got {e}")
    _check_characteristic(f.field, n)
    if f.is_zero():
        raise ValueError("annihilator of the zero form is everything")
    return [DualForm(f.field, v) for v in _hankel(f, e).kernel_basis()]


def simultaneous_apolar(forms: Sequence[BinaryForm], e: int) -> list[DualForm]:
    """Canonical basis of dual forms of degree e annihilating every form."""
    if not forms:
        raise ValueError("need at least one form")
    field = forms[0].field
    if any(f.field != field for f in forms):
        raise ValueError("field mismatch")
    if e < 1 or any(e > f.degree for f in forms):
        raise ValueError("dual degree out of range for some form")
    for f in forms:
        _check_characteristic(field, f.degree)
        if f.is_zero():
            raise ValueError("zero form in simultaneous annihilator")
    stacked = Matrix.stack(field, [_hankel(f, e) for f in forms])
    return [DualForm(field, v) for v in stacked.kernel_basis()]


def squarefree_member(basis: Sequence[DualForm]) -> DualForm | None:
    """A squarefree element of the span of ``basis``, or None.

    Complete when the span has dimension at most two (a pencil of
    degree-d forms is swept at enough values to certify that the
    discriminant vanishes identically); for larger spans the search of
    small-coordinate combinations is a heuristic.
    """
    if not basis:
        return None
    F = basis[0].field
    for g in basis:
        if not g.is_zero() and is_squarefree(g.as_poly()):
            return g
    if len(basis) == 1:
        return None
    d = basis[0].degree
    if len(basis) == 2:
        g0, g1 = basis[0].as_poly(), basis[1].as_poly()
        # Discriminant along the pencil has degree <= 2(d-1) in the
        # parameter, so 2d - 1 distinct finite values plus both ends
        # decide it.
        for z in range(1, 2 * d):
            cand = g0.add(g1.scale(F.from_int(z)))
            if not cand.is_zero() and is_squarefree(cand):
                return DualForm.from_poly(cand)
        return None
    polys = [g.as_poly() for g in basis]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            cand = polys[i].add(polys[j])
            if not cand.is_zero() and is_squarefree(cand):
                return DualForm.from_poly(cand)
    import itertools
    import random

    rng = random.Random(2 * d + len(basis))
    for weights in itertools.chain(
        itertools.product((0, 1, 2), repeat=len(polys)),
        ([rng.randint(-9, 9) for _ in polys] for _ in range(64)),
    ):
        if not any(weights):
            continue
        cand = BinaryPoly.zero(F, d)
        for w, g in zip(weights, polys):
            if w:
                cand = cand.add(g.scale(F.from_int(w)))
        if not cand.is_zero() and is_squarefree(cand):
            return DualForm.from_poly(cand)
    return None


def waring_rank(f: BinaryForm) -> int:
    """Waring rank of a nonzero binary form over its field's closure.

    Classical alternative: if e1 is the least degree with a nonzero
    annihilator, the rank is e1 when that part contains a squarefree
    element and n - e1 + 2 otherwise.  At degree e1 the annihilator has
    dimension at most two, where the squarefree search is complete.
    """
    if f.is_zero():
        raise ValueError("the zero form has no rank")
    n = f.degree
    for e in range(1, n + 1):
        basis = apolar_forms(f, e)
        if basis:
            if squarefree_member(basis) is not None:
                return e
            return n - e + 2
    raise AssertionError("unreachable: annihilator must appear by the middle degree")


def waring_witness(f: BinaryForm) -> tuple[int, DualForm | None]:
    """Rank together with a squarefree annihilating dual form of that degree.

    The witness exists in theory whenever the rank is at most n; the
    search may return None in contrived high-dimension spans, in which
    case the rank alone is still correct.
    """
    r = waring_rank(f)
    if r > f.degree:
        return r, None
    return r, squarefree_member(apolar_forms(f, r))


def decompose(f: BinaryForm, phi: DualForm) -> list[tuple[Scalar, LinearFormPower]]:
    """Explicit Waring terms of ``f`` from a squarefree annihilator.

    Requires ``phi`` squarefree, annihilating ``f``, and split over the
    coefficient field (all roots rational).  Returns ``(c_j, L_j)`` with
    ``f = sum c_j L_j.form()`` verified exactly; zero coefficients are
    dropped.
    """
    n, e = f.degree, phi.degree
    if not 1 <= e <= n:
        raise ValueError("dual degree out of range")
    if not contracts_to_zero(phi, f):
        raise ValueError("dual form does not annihilate the form")
    p = phi.as_poly()
    if not is_squarefree(p):
        raise ValueError("dual form is not squarefree")
    roots = projective_roots(p)
    if sum(m for _, m in roots) < e:
        raise ValueError(
            "dual form does not split over the coefficient field; "
            "keep it as a certificate of the rank instead of decomposing"
        )
    F = f.field
    powers = [LinearFormPower(F, u, v, n) for (u, v), _ in roots]
    system = Matrix(F, [[F.mul(F.pow(L.u, n - d), F.pow(L.v, d)) for L in powers] for d in range(n + 1)])
    coeffs = system.solve(list(f.coeffs))
    check = [F.zero] * (n + 1)
    for c, L in zip(coeffs, powers):
        for d, a in enumerate(L.form().coeffs):
            check[d] = F.add(check[d], F.mul(c, a))
    assert tuple(check) == f.coeffs
    return [(c, L) for c, L in zip(coeffs, powers) if not F.is_zero(c)]


def ps_membership(f: BinaryForm, s: int) -> bool:
    """Whether ``f`` lies on the (closure of the) s-th power-sum locus.

    Decided by the rank of the catalecticant at ``e = min(s, n - s)``;
    when that degree is below one the answer is trivially yes.
    """
    n = f.degree
    if not 1 <= s <= n + 1:
        raise ValueError(f"need 1 <= s <= {n + 1}, got {s}")
    if f.is_zero():
        raise ValueError("membership of the zero form is degenerate")
    e = min(s, n - s)
    if e < 1:
        return True
    return catalecticant(f, e).rank() <= s


def random_form(field: Field, n: int, rng) -> BinaryForm:
    """Random nonzero degree-n form with coordinates from ``field.random``."""
    _check_characteristic(field, n)
    while True:
        coeffs = [field.random(rng) for _ in range(n + 1)]
        if any(not field.is_zero(c) for c in coeffs):
            return BinaryForm(field, coeffs)
