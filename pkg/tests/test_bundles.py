import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from _oracles import sym_power_matrix
from rncurves.binpoly import BinaryPoly, poly_gcd
from rncurves.bundles import (
    VALIDATION_TALLY,
    InvariantError,
    NotImmersiveError,
    ProjectionCenter,
    SplittingType,
    TwistLadder,
    normal_matrix,
    ordinary_singularities,
    section_matrix,
    smooth_image,
    splitting_from_ladder,
    splitting_type,
    tangent_matrix,
    twist_ladder,
)
from rncurves.fields import GF, QQ, DEFAULT_PRIME
from rncurves.forms import BinaryForm, LinearFormPower, catalecticant, random_form
from rncurves.linalg import Matrix


def form(coords, field=QQ):
    return BinaryForm(field, [field.from_int(c) for c in coords])


def center(point_coords, field=QQ):
    return ProjectionCenter([form(c, field) for c in point_coords])


def random_center(field, n, k, rng, immersive=True):
    while True:
        try:
            c = ProjectionCenter([random_form(field, n, rng) for _ in range(k)])
        except ValueError:
            continue
        if not immersive or ordinary_singularities(c):
            return c


@contextmanager
def allowed_violations():
    """Negative validator tests must not pollute the suite-wide tally."""
    before = VALIDATION_TALLY.violations
    yield
    VALIDATION_TALLY.violations = before


# line spanned by two quintics inside the plane of three power sums:
# the projected quintic in P^3 acquires one ordinary triple point
TRISECANT_QUINTIC = [[2, 1, 1, 1, 1, 2], [3, 2, 2, 2, 2, 1]]


def test_center_validation():
    with pytest.raises(ValueError):
        center([[1, 2, 3, 4]])  # n = 3 leaves no room for any center
    with pytest.raises(ValueError):
        center([[1, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0]])  # dependent points
    c = center(TRISECANT_QUINTIC)
    assert (c.n, c.k) == (5, 2)
    assert c.point_matrix().rank() == 2


def test_normal_matrix_rows_exact():
    c = center([[1, 2, 3, 4, 5, 6]])
    assert normal_matrix(c).rows == (
        (1, 2, 3, 4),
        (-4, -6, -8, -10),
        (3, 4, 5, 6),
    )


def test_tangent_matrix_rows_exact():
    c = center([[1, 2, 3, 4, 5, 6]])
    assert tangent_matrix(c).rows == (
        (1, 2, 3, 4, 5),
        (-2, -3, -4, -5, -6),
    )


def test_section_matrix_at_twist_zero_is_the_presentation():
    rng = random.Random(3)
    for _ in range(6):
        n = rng.randint(5, 9)
        k = rng.randint(1, n - 4)
        c = random_center(QQ, n, k, rng, immersive=False)
        assert section_matrix(c, "normal", 0).rows == normal_matrix(c).rows
        assert section_matrix(c, "tangent", 0).rows == tangent_matrix(c).rows


def test_presentation_rank_equals_stacked_catalecticants():
    rng = random.Random(7)
    for _ in range(12):
        n = rng.randint(4, 11)
        k = rng.randint(1, n - 3)
        c = random_center(QQ, n, k, rng, immersive=False)
        cat2 = Matrix.stack(QQ, [catalecticant(p, 2) for p in c.points])
        cat1 = Matrix.stack(QQ, [catalecticant(p, 1) for p in c.points])
        assert normal_matrix(c).rank() == cat2.rank()
        assert tangent_matrix(c).rank() == cat1.rank()


def test_presentation_rank_bounds_for_immersions():
    rng = random.Random(11)
    for _ in range(12):
        n = rng.randint(4, 10)
        k = rng.randint(1, n - 3)
        c = random_center(QQ, n, k, rng)
        rn = normal_matrix(c).rank()
        rt = tangent_matrix(c).rank()
        assert k + 1 <= rn <= min(n - 1, 3 * k)
        assert k + 1 <= rt <= min(n, 2 * k)


def test_generic_center_attains_maximal_rank():
    rng = random.Random(13)
    c = random_center(QQ, 8, 2, rng)
    assert normal_matrix(c).rank() == 6  # min(n-1, 3k)
    assert tangent_matrix(c).rank() == 4  # min(n, 2k)


def test_known_quintic_ladders_and_splittings():
    c = center(TRISECANT_QUINTIC)
    ln = twist_ladder(c, "normal")
    assert ln.h == (1, 2, 3, 4, 6)
    st = splitting_from_ladder(ln)
    assert st.summands == (7, 11)
    lt = twist_ladder(c, "tangent")
    assert lt.h == (2, 4, 7)
    assert splitting_from_ladder(lt).summands == (6, 6, 8)
    # one-call front door agrees
    assert splitting_type(c, "normal") == st


def test_generic_quintic_splitting():
    rng = random.Random(17)
    c = random_center(QQ, 5, 2, rng)
    assert splitting_type(c, "normal").summands == (9, 9)
    assert splitting_type(c, "tangent").summands == (6, 7, 7)


def test_minimal_twist_kernel_is_min_summand_multiplicity():
    rng = random.Random(19)
    for _ in range(8):
        n = rng.randint(5, 9)
        k = rng.randint(1, n - 4)
        c = random_center(QQ, n, k, rng)
        st = splitting_type(c, "normal")
        h0 = (n - 1) - normal_matrix(c).rank()
        assert twist_ladder(c, "normal").h[0] == h0
        assert st.min_mult == h0


def test_ladder_saturates_beyond_default_depth():
    c = center(TRISECANT_QUINTIC)
    deep_n = twist_ladder(c, "normal", depth=2 * c.k + 3)
    dn = deep_n.first_differences()
    assert all(d == c.n - c.k - 1 for d in dn[2 * c.k :])
    deep_t = twist_ladder(c, "tangent", depth=c.k + 3)
    dt = deep_t.first_differences()
    assert all(d == c.n - c.k for d in dt[c.k :])
    # deeper ladders recover the same splitting
    assert splitting_from_ladder(deep_n).summands == (7, 11)
    assert splitting_from_ladder(deep_t).summands == (6, 6, 8)


def test_splitting_degree_sum_and_bounds():
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randint(5, 10)
        k = rng.randint(1, n - 4)
        c = random_center(QQ, n, k, rng)
        st = splitting_type(c, "normal")
        assert st.rank == n - k - 1
        assert st.degree_sum == (n - k + 1) * n - 2
        assert all(n + 2 <= s <= n + 2 + 2 * k for s in st.summands)
        tt = splitting_type(c, "tangent")
        assert tt.rank == n - k
        assert tt.degree_sum == (n - k + 1) * n
        assert all(n + 1 <= s <= n + 1 + k for s in tt.summands)


def test_change_of_spanning_points_preserves_everything():
    rng = random.Random(29)
    c = random_center(QQ, 7, 3, rng)
    p0, p1, p2 = c.points
    # invertible recombination of the same span
    q0 = p0.add(p1).add(p2)
    q1 = p1.add(p2.scale(Fraction(2)))
    q2 = p2.scale(Fraction(3)).add(p0)
    c2 = ProjectionCenter([q0, q1, q2])
    for kind in ("normal", "tangent"):
        assert twist_ladder(c, kind).h == twist_ladder(c2, kind).h
        assert splitting_type(c, kind) == splitting_type(c2, kind)


def test_reparametrization_preserves_splitting():
    rng = random.Random(31)
    for _ in range(5):
        n = rng.randint(5, 8)
        k = rng.randint(1, n - 4)
        c = random_center(QQ, n, k, rng)
        while True:
            g = [[Fraction(rng.randint(-4, 4)) for _ in range(2)] for _ in range(2)]
            if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0:
                break
        M = Matrix(QQ, sym_power_matrix(QQ, g, n))
        moved = ProjectionCenter(
            [BinaryForm(QQ, M.mul_vector(list(p.coeffs))) for p in c.points]
        )
        for kind in ("normal", "tangent"):
            assert splitting_type(moved, kind) == splitting_type(c, kind)


def test_splitting_consistent_across_fields():
    rng = random.Random(37)
    for _ in range(5):
        n = rng.randint(5, 8)
        k = rng.randint(1, n - 4)
        coords = [[rng.randint(-9, 9) for _ in range(n + 1)] for _ in range(k)]
        try:
            cq = center(coords)
        except ValueError:
            continue
        if not ordinary_singularities(cq):
            continue
        for p in (32003, 1000003, DEFAULT_PRIME):
            cp = center(coords, GF(p))
            for kind in ("normal", "tangent"):
                assert (
                    splitting_type(cp, kind).summands
                    == splitting_type(cq, kind).summands
                )


def test_tangent_line_center_has_a_cusp():
    # span of a curve point and its tangent direction
    c = center([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    assert not ordinary_singularities(c)
    with pytest.raises(NotImmersiveError) as exc:
        splitting_type(c, "normal")
    assert (1, 0) in [(u, v) for u, v in exc.value.cusps]
    assert exc.value.witness is not None


def test_center_through_curve_point_is_rejected():
    c = center([[0, 0, 0, 0, 0, 0, 1]])  # the point at parameter (0:1), n = 6
    with pytest.raises(NotImmersiveError) as exc:
        splitting_type(c, "tangent")
    assert (0, 1) in exc.value.cusps


def test_immersion_gcd_ignores_choice_of_quotient_basis():
    from rncurves.bundles import _immersion_gcd

    rng = random.Random(41)
    for _ in range(6):
        n = rng.randint(5, 8)
        k = rng.randint(1, n - 4)
        c = random_center(QQ, n, k, rng, immersive=False)
        reference = _immersion_gcd(c)
        # recompute with a randomized invertible recombination of the
        # canonical quotient rows
        rows = [list(v) for v in c.point_matrix().kernel_basis()]
        m = len(rows)
        while True:
            T = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(m)]
            if Matrix(QQ, T).rank() == m:
                break
        mixed = [
            [sum(T[i][j] * rows[j][d] for j in range(m)) for d in range(n + 1)]
            for i in range(m)
        ]
        jac = []
        for q in mixed:
            ds = BinaryPoly(QQ, [Fraction(n - d) * q[d] for d in range(n)])
            dt = BinaryPoly(QQ, [Fraction(d + 1) * q[d + 1] for d in range(n)])
            jac.append((ds, dt))
        g = None
        for r in range(m):
            for rp in range(r + 1, m):
                minor = jac[r][0].mul(jac[rp][1]).sub(jac[rp][0].mul(jac[r][1]))
                if minor.is_zero():
                    continue
                g = minor if g is None else poly_gcd(g, minor)
        if reference is None:
            assert g is None
        else:
            assert g is not None
            # compare after scale normalization
            assert poly_gcd(reference, reference).coeffs == poly_gcd(g, g).coeffs


def test_smooth_image_point_center():
    rng = random.Random(43)
    # a point on a secant line projects to a nodal curve
    two_secant = LinearFormPower(QQ, Fraction(1), Fraction(0), 6).form().add(
        LinearFormPower(QQ, Fraction(0), Fraction(1), 6).form()
    )
    assert smooth_image(ProjectionCenter([two_secant])) is False
    # a point on the tangent developable also drops the catalecticant rank
    tangent_vector = BinaryForm.from_monomial_coeffs(QQ, [0, 1, 0, 0, 0, 0, 0])
    assert smooth_image(ProjectionCenter([tangent_vector])) is False
    for _ in range(5):
        c = random_center(QQ, 6, 1, rng)
        assert smooth_image(c) is True


def test_smooth_image_pencil():
    # the trisecant pencil: some members drop to two powers, and the
    # image indeed has a triple point, so it is not smooth
    assert smooth_image(center(TRISECANT_QUINTIC)) is False
    rng = random.Random(47)
    hits = 0
    for _ in range(5):
        c = random_center(QQ, 6, 2, rng)
        if smooth_image(c):
            hits += 1
    assert hits == 5  # generic pencils in this range give smooth images
    assert smooth_image(random_center(QQ, 7, 3, rng)) is None


def test_splitting_validator_rejects_bad_multisets():
    with allowed_violations():
        with pytest.raises(InvariantError):
            SplittingType("normal", 5, 2, [7, 10])  # wrong degree sum
        with pytest.raises(InvariantError):
            SplittingType("normal", 5, 2, [9, 9, 9])  # wrong count
        with pytest.raises(InvariantError):
            SplittingType("normal", 5, 2, [6, 12])  # below minimal degree
        with pytest.raises(InvariantError):
            SplittingType("tangent", 5, 2, [5, 12, 13])
    # the real ones pass
    assert SplittingType("normal", 5, 2, [9, 9]).min_mult == 0
    assert SplittingType("tangent", 5, 2, [6, 7, 7]).min_mult == 1


def test_ladder_validator_rejects_nonconvex_data():
    with allowed_violations():
        with pytest.raises(InvariantError):
            TwistLadder("normal", 5, 2, [2, 1])  # decreasing
        with pytest.raises(InvariantError):
            TwistLadder("normal", 5, 2, [0, 3, 4])  # concave growth
        with pytest.raises(InvariantError):
            TwistLadder("normal", 5, 2, [-1, 0, 1])
    TwistLadder("normal", 5, 2, [1, 2, 3, 4, 6])


def test_unsaturated_ladder_is_refused():
    c = center(TRISECANT_QUINTIC)
    shallow = twist_ladder(c, "normal", depth=1)
    with allowed_violations():
        with pytest.raises(InvariantError, match="depth"):
            splitting_from_ladder(shallow)


def test_validation_tally_counts():
    before_l, before_s = VALIDATION_TALLY.ladders, VALIDATION_TALLY.splittings
    c = center(TRISECANT_QUINTIC)
    splitting_type(c, "normal")
    assert VALIDATION_TALLY.ladders > before_l
    assert VALIDATION_TALLY.splittings > before_s
