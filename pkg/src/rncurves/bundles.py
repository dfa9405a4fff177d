"""Splitting types of bundles pulled back along projected rational curves.

A parametrized degree-n rational curve spans a projective n-space in
which each point is identified, in catalecticant coordinates, with a
degree-n binary form.  A projection center is a span of k independent
such points with ``k <= n - 3``; projecting away from it maps the curve
to a nondegenerate degree-n rational curve in a projective (n-k)-space.

Two bundles on the line are computed: the pullback of the tangent bundle
of the ambient target, and the normal bundle of the projected map (which
requires the map to be an immersion).  Both split as direct sums of line
bundles; the splitting type is recovered from an exact ladder of kernel
dimensions of twisted relation matrices, using only ranks over the exact
coefficient field.
"""

from __future__ import annotations

from typing import Iterable, Literal, Sequence

from .binpoly import BinaryPoly, poly_gcd, projective_roots
from .fields import Field, Scalar
from .forms import BinaryForm, _check_characteristic, catalecticant
from .linalg import Matrix

Kind = Literal["normal", "tangent"]


class NotImmersiveError(Exception):
    """The projected parametrization is singular (it has cuspidal points)."""

    def __init__(self, message: str, cusps=None, witness=None):
        super().__init__(message)
        self.cusps = cusps or []
        self.witness = witness


class InvariantError(AssertionError):
    """An exact computation contradicted a structural invariant."""


class ValidationTally:
    """Process-wide counts of structural validations, for suite-level checks."""

    __slots__ = ("ladders", "splittings", "violations")

    def __init__(self):
        self.ladders = 0
        self.splittings = 0
        self.violations = 0


VALIDATION_TALLY = ValidationTally()


class ProjectionCenter:
    """A k-dimensional space of degree-n forms spanned by independent points."""

    __slots__ = ("field", "n", "k", "points")

    def __init__(self, points: Sequence[BinaryForm]):
        if not points:
            raise ValueError("a center needs at least one point")
        field = points[0].field
        n = points[0].degree
        if any(p.field != field or p.degree != n for p in points):
            raise ValueError("all points must be forms of one degree over one field")
        _check_characteristic(field, n)
        k = len(points)
        if not 1 <= k <= n - 3:
            raise ValueError(f"need 1 <= k <= n - 3 (k={k}, n={n})")
        self.field = field
        self.n = n
        self.k = k
        self.points = tuple(points)
        if self.point_matrix().rank() != k:
            raise ValueError("center points are linearly dependent")

    def point_matrix(self) -> Matrix:
        return Matrix(self.field, [list(p.coeffs) for p in self.points])

    def __repr__(self) -> str:
        return f"ProjectionCenter(n={self.n}, k={self.k}, field={self.field!r})"


class SplittingType:
    """Multiset of line-bundle degrees, validated against the projection data."""

    __slots__ = ("kind", "n", "k", "summands")

    def __init__(self, kind: Kind, n: int, k: int, summands: Iterable[int]):
        self.kind = kind
        self.n = n
        self.k = k
        self.summands = tuple(sorted(summands))
        self.validate()

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def degree_sum(self) -> int:
        return sum(self.summands)

    @property
    def base_degree(self) -> int:
        return self.n + 2 if self.kind == "normal" else self.n + 1

    @property
    def min_mult(self) -> int:
        """Number of summands sitting at the smallest possible degree."""
        base = self.base_degree
        return sum(1 for s in self.summands if s == base)

    def validate(self) -> None:
        n, k = self.n, self.k
        if self.kind == "normal":
            rank, total, top = n - k - 1, (n - k + 1) * n - 2, self.base_degree + 2 * k
        elif self.kind == "tangent":
            rank, total, top = n - k, (n - k + 1) * n, self.base_degree + k
        else:
            raise ValueError(f"unknown kind {self.kind!r}")
        try:
            if len(self.summands) != rank:
                raise InvariantError(f"expected {rank} summands, got {len(self.summands)}")
            if sum(self.summands) != total:
                raise InvariantError(f"summands add to {sum(self.summands)}, expected {total}")
            base = self.base_degree
            for s in self.summands:
                if not base <= s <= top:
                    raise InvariantError(f"summand {s} outside [{base}, {top}]")
        except InvariantError:
            VALIDATION_TALLY.violations += 1
            raise
        VALIDATION_TALLY.splittings += 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SplittingType)
            and (self.kind, self.n, self.k, self.summands)
            == (other.kind, other.n, other.k, other.summands)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.k, self.summands))

    def __repr__(self) -> str:
        return f"SplittingType({self.kind!r}, n={self.n}, k={self.k}, {list(self.summands)})"

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.summands) + ")"


class TwistLadder:
    """Kernel dimensions ``h(0..depth)`` of the twisted relation matrices."""

    __slots__ = ("kind", "n", "k", "h")

    def __init__(self, kind: Kind, n: int, k: int, h: Sequence[int]):
        self.kind = kind
        self.n = n
        self.k = k
        self.h = tuple(h)
        self.validate()

    @property
    def depth(self) -> int:
        return len(self.h) - 1

    def first_differences(self) -> list[int]:
        return [self.h[0]] + [self.h[j] - self.h[j - 1] for j in range(1, len(self.h))]

    def validate(self) -> None:
        try:
            if not self.h:
                raise InvariantError("empty ladder")
            if any(v < 0 for v in self.h):
                raise InvariantError("negative kernel dimension")
            d = self.first_differences()
            if any(x < 0 for x in d):
                raise InvariantError("ladder is not nondecreasing")
            if any(d[j] < d[j - 1] for j in range(1, len(d))):
                raise InvariantError("ladder is not convex")
        except InvariantError:
            VALIDATION_TALLY.violations += 1
            raise
        VALIDATION_TALLY.ladders += 1

    def __repr__(self) -> str:
        return f"TwistLadder({self.kind!r}, n={self.n}, k={self.k}, {list(self.h)})"


def normal_matrix(center: ProjectionCenter) -> Matrix:
    """The 3k x (n-1) relation matrix of the normal-bundle presentation.

    Each point contributes three rows: ``(a_0 ... a_(n-2))``,
    ``(-2a_1 ... -2a_(n-1))`` and ``(a_2 ... a_n)``.
    """
    F = center.field
    n = center.n
    two = F.from_int(2)
    rows = []
    for p in center.points:
        a = p.coeffs
        rows.append([a[i] for i in range(n - 1)])
        rows.append([F.neg(F.mul(two, a[i + 1])) for i in range(n - 1)])
        rows.append([a[i + 2] for i in range(n - 1)])
    return Matrix(F, rows)


def tangent_matrix(center: ProjectionCenter) -> Matrix:
    """The 2k x n relation matrix of the restricted-tangent presentation.

    Each point contributes two rows: ``(a_0 ... a_(n-1))`` and
    ``(-a_1 ... -a_n)``.
    """
    F = center.field
    n = center.n
    rows = []
    for p in center.points:
        a = p.coeffs
        rows.append([a[i] for i in range(n)])
        rows.append([F.neg(a[i + 1]) for i in range(n)])
    return Matrix(F, rows)


def section_matrix(center: ProjectionCenter, kind: Kind, j: int) -> Matrix:
    """Global-section matrix of the j-th twist of the relation bundle map.

    Columns are indexed by (relation index i, twist monomial m <= j);
    rows by (center point, target monomial).  At twist zero this equals
    ``normal_matrix`` / ``tangent_matrix`` exactly.
    """
    if j < 0:
        raise ValueError("twist must be nonnegative")
    F = center.field
    n = center.n
    if kind == "normal":
        span, ncols_i = 3, n - 1
    elif kind == "tangent":
        span, ncols_i = 2, n
    else:
        raise ValueError(f"unknown kind {kind!r}")
    two = F.from_int(2)
    rows_per_point = j + span
    ncols = ncols_i * (j + 1)
    rows = [[F.zero] * ncols for _ in range(rows_per_point * center.k)]
    for c, p in enumerate(center.points):
        a = p.coeffs
        base_row = c * rows_per_point
        for i in range(ncols_i):
            for m in range(j + 1):
                col = i * (j + 1) + m
                u = j - m
                if kind == "normal":
                    rows[base_row + u][col] = F.add(rows[base_row + u][col], a[i])
                    rows[base_row + u + 1][col] = F.sub(
                        rows[base_row + u + 1][col], F.mul(two, a[i + 1])
                    )
                    rows[base_row + u + 2][col] = F.add(rows[base_row + u + 2][col], a[i + 2])
                else:
                    rows[base_row + u][col] = F.add(rows[base_row + u][col], a[i])
                    rows[base_row + u + 1][col] = F.sub(rows[base_row + u + 1][col], a[i + 1])
    return Matrix(F, rows, ncols=ncols)


def twist_ladder(center: ProjectionCenter, kind: Kind, depth: int | None = None) -> TwistLadder:
    """Kernel dimensions of the twisted section matrices for j = 0..depth.

    The default depth (2k for the normal bundle, k for the tangent one)
    is exactly enough to saturate: every summand degree is reached.
    """
    if depth is None:
        depth = 2 * center.k if kind == "normal" else center.k
    h = []
    ncols_i = center.n - 1 if kind == "normal" else center.n
    for j in range(depth + 1):
        m = section_matrix(center, kind, j)
        h.append(ncols_i * (j + 1) - m.rank())
    return TwistLadder(kind, center.n, center.k, h)


def splitting_from_ladder(ladder: TwistLadder) -> SplittingType:
    """Recover the summand degrees from a saturated kernel-dimension ladder.

    The multiplicity of degree ``base + j`` is the second difference of
    the ladder at j.  Requires the ladder deep enough that the first
    differences have reached the bundle rank.
    """
    n, k = ladder.n, ladder.k
    rank = n - k - 1 if ladder.kind == "normal" else n - k
    d = ladder.first_differences()
    if d[-1] != rank:
        VALIDATION_TALLY.violations += 1
        raise InvariantError(
            f"ladder not saturated: reaches {d[-1]} of rank {rank}; increase the depth"
        )
    base = n + 2 if ladder.kind == "normal" else n + 1
    summands = []
    prev = 0
    for j, dj in enumerate(d):
        summands.extend([base + j] * (dj - prev))
        prev = dj
    return SplittingType(ladder.kind, n, k, summands)


def _projected_jacobian(center: ProjectionCenter) -> list[tuple[BinaryPoly, BinaryPoly]]:
    """Per projected coordinate, both partial derivatives as polynomials."""
    F = center.field
    n = center.n
    rows = center.point_matrix().kernel_basis()
    jac = []
    for q in rows:
        ds = BinaryPoly(F, [F.mul(F.from_int(n - d), q[d]) for d in range(n)])
        dt = BinaryPoly(F, [F.mul(F.from_int(d + 1), q[d + 1]) for d in range(n)])
        jac.append((ds, dt))
    return jac


def _immersion_gcd(center: ProjectionCenter) -> BinaryPoly | None:
    """Gcd of the 2x2 Jacobian minors; None when all minors vanish."""
    jac = _projected_jacobian(center)
    g: BinaryPoly | None = None
    for r in range(len(jac)):
        for rp in range(r + 1, len(jac)):
            minor = jac[r][0].mul(jac[rp][1]).sub(jac[rp][0].mul(jac[r][1]))
            if minor.is_zero():
                continue
            g = minor if g is None else poly_gcd(g, minor)
            if g.degree == 0:
                return g
    return g


def ordinary_singularities(center: ProjectionCenter) -> bool:
    """True iff the projected parametrization is an immersion.

    Tested exactly: the 2x2 minors of the Jacobian of the projected
    coordinates must have no common projective root.  Nodes (distinct
    parameters hitting one image point transversally) are allowed; a
    common root would be a cuspidal point.
    """
    g = _immersion_gcd(center)
    return g is not None and g.degree == 0


def _raise_not_immersive(center: ProjectionCenter, g: BinaryPoly | None) -> None:
    if g is None:
        raise NotImmersiveError(
            "projected parametrization is everywhere singular (all Jacobian minors vanish)",
            cusps=[],
            witness=None,
        )
    cusps = [root for root, _ in projective_roots(g)]
    F = center.field
    shown = ", ".join(f"({F.to_str(u)} : {F.to_str(v)})" for u, v in cusps) or "no rational root"
    raise NotImmersiveError(
        f"projected parametrization has cuspidal points; "
        f"Jacobian minors share a degree-{g.degree} factor ({shown})",
        cusps=cusps,
        witness=g,
    )


def splitting_type(center: ProjectionCenter, kind: Kind) -> SplittingType:
    """Splitting type of the chosen bundle, exact over the center's field.

    Raises :class:`NotImmersiveError` when the projected map has a cusp
    (for instance when the center meets a tangent line of the curve); the
    normal bundle is only defined for immersions, and the ladder
    invariants are only guaranteed there.
    """
    g = _immersion_gcd(center)
    if g is None or g.degree != 0:
        _raise_not_immersive(center, g)
    return splitting_from_ladder(twist_ladder(center, kind))


def smooth_image(center: ProjectionCenter) -> bool | None:
    """Whether the projected curve is smooth; None when undecided (k > 2).

    For a point center this asks that the point avoid the secant surface
    of the curve, read off one catalecticant rank.  For a pencil it asks
    that no member of the pencil drop to rank two (a common factor of the
    3x3 minors of the one-parameter catalecticant) and that the map be an
    immersion.
    """
    F = center.field
    n = center.n
    if center.k == 1:
        return catalecticant(center.points[0], 2).rank() >= 3
    if center.k == 2:
        a1 = center.points[0].coeffs
        a2 = center.points[1].coeffs
        pencil = [
            [BinaryPoly(F, [a1[i + jj], a2[i + jj]]) for jj in range(n - 1)] for i in range(3)
        ]
        from itertools import combinations

        g: BinaryPoly | None = None
        for cols in combinations(range(n - 1), 3):
            m = [[pencil[i][c] for c in cols] for i in range(3)]
            det = (
                m[0][0].mul(m[1][1].mul(m[2][2]).sub(m[1][2].mul(m[2][1])))
                .sub(m[0][1].mul(m[1][0].mul(m[2][2]).sub(m[1][2].mul(m[2][0]))))
                .add(m[0][2].mul(m[1][0].mul(m[2][1]).sub(m[1][1].mul(m[2][0]))))
            )
            if det.is_zero():
                continue
            g = det if g is None else poly_gcd(g, det)
            if g.degree == 0:
                break
        if g is None or g.degree != 0:
            return False
        return ordinary_singularities(center)
    return None
