"""Plücker coordinates, compound matrices and squared simplex volumes."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial

from .errors import ArgumentError, DimensionError
from .exactlinalg import Matrix, _first_scalar, as_matrix, det, gram
from .field import field_of

# dense compound / exterior-power objects beyond this size are refused
MAX_EXTERIOR_DIM = 10**5


def _check_size(n, k):
    if comb(n, k) > MAX_EXTERIOR_DIM:
        raise DimensionError(f"C({n},{k}) exceeds the cap of {MAX_EXTERIOR_DIM}")


@dataclass(frozen=True)
class PluckerVector:
    """Coordinates of an element of the k-th exterior power of d-space.

    ``coords[i]`` belongs to the i-th k-subset of range(d) in lexicographic
    order (see :meth:`index_sets`).
    """

    ambient_dim: int
    grade: int
    coords: tuple

    def __post_init__(self):
        if not 1 <= self.grade <= self.ambient_dim:
            raise DimensionError("grade must lie in 1..ambient_dim")
        if len(self.coords) != comb(self.ambient_dim, self.grade):
            raise DimensionError("coordinate count must be C(d, k)")

    def index_sets(self):
        return list(combinations(range(self.ambient_dim), self.grade))

    def __neg__(self):
        return PluckerVector(self.ambient_dim, self.grade, tuple(-c for c in self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)


def wedge(vectors) -> PluckerVector:
    """x1 ^ ... ^ xk; the coordinate at I is the minor of [x1 ... xk] on rows I."""
    vectors = [tuple(v) for v in vectors]
    k = len(vectors)
    if k == 0:
        raise DimensionError("wedge of no vectors")
    d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise DimensionError("vectors must share a length")
    if k > d:
        raise DimensionError(f"cannot wedge {k} vectors in dimension {d}")
    _check_size(d, k)
    X = Matrix(list(zip(*vectors)), field_of(_first_scalar(vectors)), ncols=k)
    coords = tuple(det(X.submatrix(I, range(k))) for I in combinations(range(d), k))
    return PluckerVector(d, k, coords)


def exterior_inner(a: PluckerVector, b: PluckerVector):
    if (a.ambient_dim, a.grade) != (b.ambient_dim, b.grade):
        raise DimensionError("inner product needs equal grade and dimension")
    s = 0
    for x, y in zip(a.coords, b.coords):
        s = s + x * y
    return s


def gram_inner(xs, ys):
    """Inner product of x1^...^xk and y1^...^yk as det[<xi, yj>]."""
    xs = [tuple(x) for x in xs]
    ys = [tuple(y) for y in ys]
    if len(xs) != len(ys):
        raise DimensionError("need the same number of vectors on each side")
    G = [[sum((a * b for a, b in zip(x, y)), 0 * x[0]) for x in xs] for y in ys]
    return det(Matrix(G, field_of(_first_scalar(xs + ys))))


def compound(A, k: int) -> Matrix:
    """The k-th compound matrix: all k x k minors in lexicographic order."""
    A = as_matrix(A)
    m, n = A.shape
    if m != n:
        raise DimensionError("compound matrices are built for square input here")
    if not 1 <= k <= n:
        raise DimensionError(f"k={k} out of range 1..{n}")
    _check_size(n, k)
    idx = list(combinations(range(n), k))
    rows = [[det(A.submatrix(I, J)) for J in idx] for I in idx]
    return Matrix(rows, A.field, idx, idx, ncols=len(idx))


def vol_squared(points):
    """Squared k-volume of the simplex on k + 1 points.

    Computed as det(M^T M) / (k!)^2 where M has columns p_i - p_1; it is zero
    for affinely dependent points and whenever k exceeds the dimension.
    """
    points = [tuple(p) for p in points]
    if len(points) < 2:
        raise ArgumentError("a simplex needs at least two points")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise DimensionError("points must share a dimension")
    k = len(points) - 1
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    G = Matrix(gram(diffs), field_of(_first_scalar(points)))
    return det(G) / (factorial(k) ** 2)


def vol_squared_via_wedge(points):
    """Same quantity as :func:`vol_squared`, through Plücker coordinates."""
    points = [tuple(p) for p in points]
    k = len(points) - 1
    d = len(points[0])
    if k > d:
        return 0 * _first_scalar(points)
    diffs = [tuple(a - b for a, b in zip(p, points[0])) for p in points[1:]]
    w = wedge(diffs)
    return exterior_inner(w, w) / (factorial(k) ** 2)
