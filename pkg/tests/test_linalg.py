import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import fp_rank, fraction_rank, random_fraction_matrix
from rncurves.fields import GF, QQ
from rncurves.linalg import LinAlgError, Matrix, rank_of_rows

PRIMES = [101, 32003, 2147483647]


def F(x):
    return Fraction(x)


def test_rank_small_examples():
    A = Matrix(QQ, [[1, 2], [2, 4]])
    assert A.rank() == 1
    B = Matrix(QQ, [[1, 0, 2], [0, 1, 3], [1, 1, 5]])
    assert B.rank() == 2
    assert Matrix.identity(QQ, 5).rank() == 5
    assert Matrix.zero(QQ, 3, 4).rank() == 0


def test_rank_on_hankel_slices():
    # three shifted slices of one sequence: classic rank-deficient stack
    seq = [1, 1, 2, 3, 5, 8, 13, 21]
    rows = [seq[i : i + 6] for i in range(3)]
    A = Matrix(QQ, rows)
    # Fibonacci recurrence makes every slice a combination of two others
    assert A.rank() == 2
    assert A.kernel_basis()


def test_kernel_of_difference_row():
    A = Matrix(QQ, [[1, -1]])
    (v,) = A.kernel_basis()
    assert v == (F(1), F(1))


def test_kernel_vectors_annihilate_and_span():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 6), rng.randint(1, 7)
        A = Matrix(QQ, random_fraction_matrix(rng, m, n, denom=True))
        basis = A.kernel_basis()
        assert len(basis) == n - A.rank()
        for v in basis:
            assert all(x == 0 for x in A.mul_vector(v))
        # basis vectors are independent
        if basis:
            assert rank_of_rows(QQ, basis) == len(basis)


def test_rank_matches_fraction_oracle():
    rng = random.Random(23)
    for _ in range(60):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        rows = random_fraction_matrix(rng, m, n, denom=rng.random() < 0.5)
        assert Matrix(QQ, rows).rank() == fraction_rank(rows)


def test_rank_equals_rank_of_transpose():
    rng = random.Random(5)
    for _ in range(40):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        A = Matrix(QQ, random_fraction_matrix(rng, m, n))
        assert A.rank() == A.transpose().rank()


def test_modular_rank_consistency():
    # integer matrices: rank over Q must match rank mod p for several
    # large primes (no unlucky reductions at these sizes)
    rng = random.Random(91)
    for _ in range(30):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)]
        r = Matrix(QQ, [[F(x) for x in row] for row in rows]).rank()
        for p in PRIMES:
            Fp = GF(p)
            assert Matrix(Fp, [[x % p for x in row] for row in rows]).rank() == r
            assert fp_rank(rows, p) == r


def test_prime_field_rank_matches_oracle():
    p = 1009
    Fp = GF(p)
    rng = random.Random(3)
    for _ in range(40):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
        assert Matrix(Fp, rows).rank() == fp_rank(rows, p)


def test_rref_is_reduced_and_canonical():
    A = Matrix(QQ, [[2, 4, 6], [1, 2, 4], [3, 6, 10]])
    R, pivots = A.rref()
    assert pivots == [0, 2]
    assert R.rows[0] == (F(1), F(2), F(0))
    assert R.rows[1] == (F(0), F(0), F(1))
    assert all(x == 0 for x in R.rows[2])
    # running twice gives the identical object content
    R2, piv2 = A.rref()
    assert (R2, piv2) == (R, pivots)


def test_kernel_basis_is_deterministic_and_canonical():
    A = Matrix(QQ, [[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 1, 1]])
    b1 = A.kernel_basis()
    b2 = Matrix(QQ, [list(r) for r in A.rows]).kernel_basis()
    assert b1 == b2
    # each vector has a unit in its own free column, zeros in the others
    free = [j for j in range(4) if j not in A.rref()[1]]
    for v, j in zip(b1, free):
        assert v[j] == 1
        for other in free:
            if other != j:
                assert v[other] == 0


def test_solve_consistent_system():
    A = Matrix(QQ, [[1, 1], [1, -1], [2, 0]])
    x = A.solve([F(3), F(1), F(4)])
    assert x == [F(2), F(1)]


def test_solve_inconsistent_raises():
    A = Matrix(QQ, [[1, 1], [1, 1]])
    with pytest.raises(LinAlgError):
        A.solve([F(1), F(2)])


def test_solve_underdetermined_raises():
    A = Matrix(QQ, [[1, 1]])
    with pytest.raises(LinAlgError):
        A.solve([F(1)])


def test_matmul_and_stack():
    A = Matrix(QQ, [[1, 2], [3, 4]])
    B = Matrix(QQ, [[0, 1], [1, 0]])
    assert A.matmul(B).rows == ((F(2), F(1)), (F(4), F(3)))
    S = Matrix.stack(QQ, [A, B])
    assert S.nrows == 4 and S.rank() == 2


def test_empty_and_degenerate_shapes():
    A = Matrix(QQ, [], ncols=3)
    assert A.rank() == 0
    assert len(A.kernel_basis()) == 3
    with pytest.raises(LinAlgError):
        Matrix(QQ, [[1, 2], [3]])


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-30, 30), min_size=1, max_size=6),
        min_size=1,
        max_size=6,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_rank_nullity_property(rows):
    A = Matrix(QQ, [[F(x) for x in row] for row in rows])
    assert A.rank() + len(A.kernel_basis()) == A.ncols
    assert A.rank() == fraction_rank(rows)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 5),
    st.integers(2, 5),
    st.randoms(use_true_random=False),
)
def test_product_rank_bound_property(m, n, rng):
    A = Matrix(QQ, random_fraction_matrix(rng, m, n))
    B = Matrix(QQ, random_fraction_matrix(rng, n, m))
    assert A.matmul(B).rank() <= min(A.rank(), B.rank())
