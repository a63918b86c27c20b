import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from volrig.errors import DegeneracyError
from volrig.exactlinalg import (Matrix, affine_dimension, affine_projection,
                                barycentric_projection, det, inverse, is_orthogonal,
                                kernel_basis, minors_rank, orth_complement_projection,
                                random_orthogonal, random_realisation, rank, rank_mod_p,
                                reduce_mod_p, rref, solve)
from volrig.field import DEFAULT_PRIME, GF, QQ

small = st.integers(-6, 6)


@st.composite
def rational_matrices(draw, max_n=6):
    m = draw(st.integers(1, max_n))
    n = draw(st.integers(1, max_n))
    entries = st.fractions(min_value=-20, max_value=20, max_denominator=7)
    return [[draw(entries) for _ in range(n)] for _ in range(m)]


@st.composite
def low_rank_matrices(draw, max_n=20):
    """Products of m x r and r x n integer matrices, so rank <= r."""
    m = draw(st.integers(1, max_n))
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(0, min(m, n)))
    seed = draw(st.integers(0, 2**32))
    rng = random.Random(seed)
    A = [[rng.randint(-9, 9) for _ in range(r)] for _ in range(m)]
    B = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(r)]
    return [[sum(A[i][t] * B[t][j] for t in range(r)) for j in range(n)] for i in range(m)]


def test_rank_examples():
    assert rank(Matrix.identity(5)).rank == 5
    assert rank(Matrix.zeros(3, 4)).rank == 0


def test_duplicated_rows_rank_against_minors():
    rng = random.Random(11)
    rows = [[Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(6)]
            for _ in range(4)]
    rows += [rows[0], rows[2]]
    M = Matrix(rows)
    assert rank(M).rank == 4
    assert minors_rank(M) == 4


def test_rank_six_by_six_with_two_equal_rows():
    rng = random.Random(5)
    rows = [[Fraction(rng.randint(-50, 50)) for _ in range(6)] for _ in range(5)]
    rows.append(rows[3])
    M = Matrix(rows)
    assert rank(M).rank == 5 == minors_rank(M)


@given(rational_matrices())
def test_rank_and_det_match_sympy(rows):
    M = Matrix(rows)
    S = sympy.Matrix(rows)
    assert rank(M).rank == S.rank()
    if M.nrows == M.ncols:
        assert det(M) == Fraction(str(S.det()))


@settings(max_examples=150)
@given(low_rank_matrices())
def test_prime_rank_equals_rational_rank(rows):
    M = Matrix(rows)
    assert rank_mod_p(M, DEFAULT_PRIME) == rank(M).rank
    assert rank(reduce_mod_p(M, DEFAULT_PRIME)).rank == rank(M).rank


def test_prime_rank_can_drop_for_small_prime():
    M = Matrix([[1, 2], [3, 1]])  # det -5
    assert rank(M).rank == 2
    assert rank_mod_p(M, 5) == 1


@given(rational_matrices())
def test_kernel_basis_is_a_kernel(rows):
    M = Matrix(rows)
    K = kernel_basis(M)
    assert len(K) == M.ncols - rank(M).rank
    for b in K:
        assert all(x == 0 for x in M @ b)
    if K:
        assert rank(Matrix(K)).rank == len(K)


def test_kernel_examples():
    K = kernel_basis(Matrix([[1, 1]]))
    assert len(K) == 1 and K[0][0] == -K[0][1] != 0
    assert kernel_basis(Matrix.identity(4)) == []


def test_kernel_over_prime_field():
    M = Matrix([[GF(1), GF(2), GF(3)], [GF(2), GF(4), GF(7)]], GF)
    K = kernel_basis(M)
    assert len(K) == 1
    assert all(x == 0 for x in M @ K[0])


@given(rational_matrices())
def test_rref_matches_sympy(rows):
    red, piv = rref(Matrix(rows))
    S, spiv = sympy.Matrix(rows).rref()
    assert list(piv) == list(spiv)
    # only the nonzero rows are returned
    assert [[Fraction(str(x)) for x in S.row(i)] for i in range(len(spiv))] == \
        [list(r) for r in red]


def test_solve_and_inverse():
    A = Matrix([[2, 1], [1, 3]])
    x = solve(A, [3, 5])
    assert A @ x == (3, 5)
    assert inverse(A) @ A == Matrix.identity(2)
    with pytest.raises(DegeneracyError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_affine_projection_examples():
    assert affine_projection((1, 1), [(0, 0), (1, 0)]) == (1, 0)
    assert affine_projection((0, 0, 0), [(1, 0, 0), (0, 1, 0)]) == (Fraction(1, 2),
                                                                     Fraction(1, 2), 0)
    pts = [(1, 2, 3), (0, 1, -1), (4, 0, 2)]
    for q in pts:
        assert affine_projection(q, pts) == tuple(Fraction(x) for x in q)
    with pytest.raises(DegeneracyError):
        affine_projection((0, 0), [(0, 0), (1, 1), (2, 2)])


@st.composite
def point_sets(draw):
    d = draw(st.integers(2, 5))
    m = draw(st.integers(1, d + 1))
    pts = [tuple(draw(small) for _ in range(d)) for _ in range(m)]
    x = tuple(draw(small) for _ in range(d))
    return x, pts


@settings(max_examples=150)
@given(point_sets())
def test_affine_projection_properties(case):
    x, pts = case
    try:
        q = affine_projection(x, pts)
    except DegeneracyError:
        assert affine_dimension(pts) < len(pts) - 1
        return
    assert affine_projection(q, pts) == q
    res = [a - b for a, b in zip(x, q)]
    for p in pts[1:]:
        diff = [a - b for a, b in zip(p, pts[0])]
        assert sum(a * b for a, b in zip(res, diff)) == 0
    alpha = barycentric_projection(x, pts)
    assert sum(alpha) == 1
    combo = tuple(sum(a * p[c] for a, p in zip(alpha, pts)) for c in range(len(x)))
    assert combo == q


def test_orth_complement_projection_examples():
    a = (1, 2, 3, 5)
    assert orth_complement_projection(a, []) == tuple(Fraction(x) for x in a)
    assert orth_complement_projection(a, [(0, 1, 0, 0)]) == (1, 0, 3, 5)
    assert all(x == 0 for x in orth_complement_projection((2, 4, 0), [(1, 2, 0)]))


@given(st.lists(st.tuples(small, small, small, small), max_size=3),
       st.tuples(small, small, small, small))
def test_orth_complement_is_orthogonal(span, d):
    r = orth_complement_projection(d, span)
    for s in span:
        assert sum(a * b for a, b in zip(r, s)) == 0
    # idempotent
    assert orth_complement_projection(r, span) == r


def test_random_realisation_determinism_and_general_position():
    p = random_realisation("abcde", 4, seed=3)
    assert p == random_realisation("abcde", 4, seed=3)
    assert p != random_realisation("abcde", 4, seed=4)
    pts = [p[v] for v in p.vertices]
    for sub in combinations(pts, 4):
        assert affine_dimension(sub) == 3
    q = random_realisation("abcde", 4, seed=3, field="prime")
    assert q.field is GF
    g = random_realisation(range(6), 3, seed=1, general_position=True)
    assert len(g.vertices) == 6


@given(st.integers(1, 5), st.integers(0, 10**6))
def test_random_orthogonal_is_orthogonal(d, seed):
    A = random_orthogonal(d, random.Random(seed))
    assert A.field is QQ
    assert is_orthogonal(A)
    assert det(A) in (1, -1)
