"""Exact rank, kernel and projection routines over Q and GF(p).

Rational ranks and determinants go through fraction-free (Bareiss)
elimination on integer-scaled rows; prime-field ranks use ordinary
Gaussian elimination on residues.  Pivots are taken as the first nonzero
entry in column order, so every result is deterministic.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ArgumentError, DegeneracyError, DimensionError
from .field import QQ, ModP, PrimeField, field_of, get_field


class Matrix:
    """A dense matrix of exact field elements with optional row/column labels."""

    __slots__ = ("rows", "field", "row_labels", "col_labels", "_ncols")

    def __init__(self, rows, field=None, row_labels=None, col_labels=None, ncols=None):
        rows = [list(r) for r in rows]
        if field is None:
            field = QQ
            for r in rows:
                for x in r:
                    if isinstance(x, ModP):
                        field = field_of(x)
                        break
                else:
                    continue
                break
        field = get_field(field)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.field = field
        self._ncols = ncols
        if row_labels is not None:
            row_labels = tuple(row_labels)
            if len(row_labels) != len(self.rows):
                raise DimensionError("row label count does not match rows")
        if col_labels is not None:
            col_labels = tuple(col_labels)
            if len(col_labels) != ncols:
                raise DimensionError("column label count does not match columns")
        self.row_labels = row_labels
        self.col_labels = col_labels

    @classmethod
    def identity(cls, n, field=QQ):
        f = get_field(field)
        return cls([[f.one if i == j else f.zero for j in range(n)] for i in range(n)], f)

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        f = get_field(field)
        return cls([[f.zero] * ncols for _ in range(nrows)], f, ncols=ncols)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    @property
    def T(self):
        return Matrix(zip(*self.rows) if self.rows else [], self.field,
                      self.col_labels, self.row_labels, ncols=self.nrows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.T.rows
            return Matrix([[_dot(r, c) for c in cols] for r in self.rows], self.field,
                          ncols=other.ncols)
        vec = list(other)
        if len(vec) != self.ncols:
            raise DimensionError("vector length does not match column count")
        return tuple(_dot(r, vec) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.field!r})"

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        rl = None if self.row_labels is None else [self.row_labels[i] for i in rows]
        cl = None if self.col_labels is None else [self.col_labels[j] for j in cols]
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.field, rl, cl,
                      ncols=len(cols))

    def to_lists(self):
        return [list(r) for r in self.rows]

    def rank(self):
        return rank(self).rank

    def det(self):
        return det(self)


def _dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s = s + x * y
    return s


def as_matrix(M, field=None) -> Matrix:
    if isinstance(M, Matrix):
        return M
    return Matrix(M, field)


@dataclass(frozen=True)
class RankCertificate:
    """Rank of a matrix together with how it was obtained.

    A prime-field rank computed at a random point is a one-sided bound: it
    never exceeds the rank of the same polynomial matrix over Q.
    """

    rank: int
    field_kind: str
    prime: int | None = None
    seed: int | None = None
    pivots: tuple = ()

    def as_dict(self):
        return {"rank": self.rank, "field": self.field_kind, "prime": self.prime,
                "seed": self.seed}


# -- elimination kernels ---------------------------------------------------

def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            den = math.lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in r])
    return out


def bareiss_echelon(int_rows):
    """Fraction-free row echelon form of an integer matrix (modified in place).

    Returns ``(rank, pivot_columns)``.  Every stored entry stays an integer
    because each update divides exactly by the previous pivot.
    """
    m = int_rows
    nr = len(m)
    nc = len(m[0]) if nr else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(r + 1, nr):
            row = m[i]
            b = row[c]
            if b == 0:
                if prev != 1 or a != 1:
                    for j in range(c + 1, nc):
                        row[j] = (a * row[j]) // prev
            else:
                for j in range(c + 1, nc):
                    row[j] = (a * row[j] - b * pr[j]) // prev
            row[c] = 0
        prev = a
        pivots.append(c)
        r += 1
    return r, pivots


def _modp_echelon(rows, p):
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = pow(pr[c], -1, p)
        for i in range(r + 1, nr):
            row = m[i]
            f = row[c]
            if f:
                f = f * inv % p
                for j in range(c + 1, nc):
                    if pr[j]:
                        row[j] = (row[j] - f * pr[j]) % p
                row[c] = 0
        pivots.append(c)
        r += 1
    return r, pivots, m


def rank(M, seed=None) -> RankCertificate:
    """Exact rank of ``M`` over its own field."""
    M = as_matrix(M)
    if M.nrows == 0 or M.ncols == 0:
        return RankCertificate(0, M.field.kind, M.field.prime, seed, ())
    if M.field.kind == "rational":
        r, piv = bareiss_echelon(_integer_rows(M.rows))
    else:
        r, piv, _ = _modp_echelon([[x.v for x in row] for row in M.rows], M.field.prime)
    return RankCertificate(r, M.field.kind, M.field.prime, seed, tuple(piv))


def rank_mod_p(M, p) -> int:
    """Rank of a rational matrix after reduction modulo ``p``."""
    M = as_matrix(M)
    rows = [[ModP(x, p).v for x in r] for r in M.rows]
    return _modp_echelon(rows, p)[0] if rows else 0


def det(M):
    M = as_matrix(M)
    n = M.nrows
    if n != M.ncols:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return M.field.one
    if M.field.kind == "rational":
        scale = Fraction(1)
        rows = []
        for r in M.rows:
            den = 1
            for x in r:
                den = math.lcm(den, x.denominator)
            scale *= den
            rows.append([int(x * den) for x in r])
        # track row swaps for the sign; bareiss_echelon swaps rows silently
        sign = 1
        m = rows
        prev = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                sign = -sign
            a = m[c][c]
            for i in range(c + 1, n):
                b = m[i][c]
                for j in range(c + 1, n):
                    m[i][j] = (a * m[i][j] - b * m[c][j]) // prev
                m[i][c] = 0
            prev = a
        return Fraction(sign * m[n - 1][n - 1]) / scale
    p = M.field.prime
    m = [[x.v for x in r] for r in M.rows]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return M.field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        a = m[c][c]
        d = d * a % p
        inv = pow(a, -1, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                for j in range(c + 1, n):
                    m[i][j] = (m[i][j] - f * m[c][j]) % p
    return ModP(d, p)


def rref(M):
    """Reduced row echelon form over the matrix field; returns (rows, pivots)."""
    M = as_matrix(M)
    f = M.field
    m = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                g = m[i][c]
                m[i] = [x - g * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def kernel_basis(M) -> list[tuple]:
    """Basis of the right kernel, one vector per free column."""
    M = as_matrix(M)
    f = M.field
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        vec = [f.zero] * M.ncols
        vec[free] = f.one
        for row, pc in zip(red, pivots):
            vec[pc] = -row[free]
        basis.append(tuple(vec))
    return basis


def solve(A, b):
    """Unique solution of the square system ``A x = b``."""
    A = as_matrix(A)
    n = A.nrows
    if A.ncols != n or len(b) != n:
        raise DimensionError("solve needs a square system")
    aug = Matrix([list(r) + [bi] for r, bi in zip(A.rows, b)], A.field, ncols=n + 1)
    red, pivots = rref(aug)
    if len(pivots) != n or (pivots and pivots[-1] == n):
        raise DegeneracyError("singular system")
    return tuple(row[n] for row in red)


# -- vectors and projections -----------------------------------------------

def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def gram(vectors):
    return [[_dot(a, b) for b in vectors] for a in vectors]


def affine_projection(x, points):
    """Orthogonal projection of ``x`` onto the affine hull of ``points``.

    Raises DegeneracyError if the points are affinely dependent.
    """
    points = [tuple(p) for p in points]
    if not points:
        raise ArgumentError("need at least one point")
    d = len(points[0])
    if len(x) != d or any(len(p) != d for p in points):
        raise DimensionError("points and x must share a dimension")
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    if not diffs:
        return base
    G = Matrix(gram(diffs), field_of(_first_scalar(points, x)))
    rhs = [_dot(v, _sub(x, base)) for v in diffs]
    try:
        lam = solve(G, rhs)
    except DegeneracyError:
        raise DegeneracyError("points are affinely dependent") from None
    out = list(base)
    for l, v in zip(lam, diffs):
        out = [o + l * vi for o, vi in zip(out, v)]
    return tuple(out)


def _first_scalar(points, x=()):
    for p in list(points) + [tuple(x)]:
        for c in p:
            if isinstance(c, ModP):
                return c
    return Fraction(0)


def barycentric_projection(x, points):
    """Affine coefficients of the projection of ``x`` onto aff(points).

    Returns alphas with ``sum(alphas) == 1`` and
    ``sum(a * p for a, p) == affine_projection(x, points)``.
    """
    points = [tuple(p) for p in points]
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    if not diffs:
        return (field_of(_first_scalar(points, x)).one,)
    G = Matrix(gram(diffs), field_of(_first_scalar(points, x)))
    rhs = [_dot(v, _sub(x, base)) for v in diffs]
    try:
        lam = solve(G, rhs)
    except DegeneracyError:
        raise DegeneracyError("points are affinely dependent") from None
    first = 1 - sum(lam, 0 * lam[0])
    return (first,) + tuple(lam)


def orth_complement_projection(dvec, spanning):
    """``dvec`` minus its orthogonal projection onto span(spanning)."""
    dvec = tuple(dvec)
    spanning = [tuple(s) for s in spanning]
    if not spanning:
        return dvec
    f = field_of(_first_scalar(spanning, dvec))
    # reduce to a basis first so the Gram system is nonsingular
    red, _ = rref(Matrix(spanning, f, ncols=len(dvec)))
    basis = [tuple(r) for r in red]
    if not basis:
        return dvec
    G = Matrix(gram(basis), f)
    coef = solve(G, [_dot(b, dvec) for b in basis])
    out = list(dvec)
    for c, b in zip(coef, basis):
        out = [o - c * bi for o, bi in zip(out, b)]
    return tuple(out)


def affine_dimension(points) -> int:
    """Dimension of the affine hull of a point set (-1 when empty)."""
    points = [tuple(p) for p in points]
    if not points:
        return -1
    diffs = [_sub(p, points[0]) for p in points[1:]]
    if not diffs:
        return 0
    return rank(Matrix(diffs, field_of(_first_scalar(points)), ncols=len(points[0]))).rank


def affinely_independent(points) -> bool:
    points = [tuple(p) for p in points]
    return affine_dimension(points) == len(points) - 1


# -- realisations ------------------------------------------------------------

@dataclass(frozen=True)
class Realisation:
    """Exact coordinates for a set of vertices in ``dim``-space."""

    dim: int
    coords: dict
    field: object = QQ
    seed: int | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        f = get_field(self.field)
        clean = {}
        for v, c in self.coords.items():
            if len(c) != self.dim:
                raise DimensionError(f"vertex {v!r} has {len(c)} coordinates, expected {self.dim}")
            clean[str(v)] = tuple(f(x) for x in c)
        object.__setattr__(self, "coords", clean)
        object.__setattr__(self, "field", f)

    def __getitem__(self, v):
        return self.coords[str(v)]

    def __contains__(self, v):
        return str(v) in self.coords

    @property
    def vertices(self):
        from .complexes import sort_vertices
        return sort_vertices(self.coords)

    def restrict(self, vertices):
        return Realisation(self.dim, {str(v): self.coords[str(v)] for v in vertices},
                           self.field, self.seed)

    def with_point(self, v, point):
        c = dict(self.coords)
        c[str(v)] = tuple(point)
        return Realisation(self.dim, c, self.field, self.seed)

    def map(self, A=None, t=None):
        """Image under ``x -> A x + t``."""
        out = {}
        for v, x in self.coords.items():
            y = A @ x if A is not None else x
            if t is not None:
                y = tuple(a + b for a, b in zip(y, t))
            out[v] = y
        return Realisation(self.dim, out, self.field, self.seed)


def random_realisation(vertices: Iterable, d: int, seed: int = 0, field="rational",
                       general_position: bool = False, max_attempts: int = 100) -> Realisation:
    """Independent random coordinates for every vertex, reproducible per seed.

    Prime-field coordinates are uniform residues; rational coordinates are
    integers in ``[-RATIONAL_BOUND, RATIONAL_BOUND]``.  With
    ``general_position=True`` every set of at most ``d + 1`` points is checked
    for affine independence and the configuration is redrawn (from the same
    generator stream) on failure.
    """
    from .complexes import sort_vertices
    f = get_field(field)
    rng = random.Random(seed)
    vs = sort_vertices(vertices)
    for _ in range(max_attempts):
        coords = {v: tuple(f.random(rng) for _ in range(d)) for v in vs}
        p = Realisation(d, coords, f, seed)
        if not general_position or in_general_position(p):
            return p
    raise DegeneracyError("could not sample a realisation in general position")


def in_general_position(p: Realisation) -> bool:
    pts = [p[v] for v in p.vertices]
    m = min(len(pts), p.dim + 1)
    return all(affinely_independent(s) for s in combinations(pts, m))


def random_orthogonal(d: int, rng: random.Random, field="rational", scale: int = 5) -> Matrix:
    """A random exact orthogonal matrix: signed permutation times a Cayley rotation."""
    f = get_field(field)
    S = [[f.zero] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            a = f(rng.randint(-scale, scale))
            S[i][j] = a
            S[j][i] = -a
    I = Matrix.identity(d, f)
    ImS = Matrix([[I[i, j] - S[i][j] for j in range(d)] for i in range(d)], f)
    IpS = Matrix([[I[i, j] + S[i][j] for j in range(d)] for i in range(d)], f)
    inv = inverse(IpS)
    Q = ImS @ inv
    perm = list(range(d))
    rng.shuffle(perm)
    P = Matrix([[f(rng.choice((-1, 1))) if perm[i] == j else f.zero for j in range(d)]
                for i in range(d)], f)
    return P @ Q


def inverse(A: Matrix) -> Matrix:
    n = A.nrows
    f = A.field
    aug = Matrix([list(r) + [f.one if i == j else f.zero for j in range(n)]
                  for i, r in enumerate(A.rows)], f, ncols=2 * n)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DegeneracyError("matrix is singular")
    return Matrix([r[n:] for r in red], f, ncols=n)


def is_orthogonal(A: Matrix) -> bool:
    return A.T @ A == Matrix.identity(A.nrows, A.field)


def minors_rank(M) -> int:
    """Rank by brute-force enumeration of square minors (small matrices only)."""
    M = as_matrix(M)
    for k in range(min(M.shape), 0, -1):
        for rs in combinations(range(M.nrows), k):
            for cs in combinations(range(M.ncols), k):
                if det(M.submatrix(rs, cs)) != 0:
                    return k
    return 0


def reduce_mod_p(M, p: int) -> Matrix:
    M = as_matrix(M)
    return Matrix([[ModP(x, p) for x in r] for r in M.rows], PrimeField(p), M.row_labels,
                  M.col_labels, ncols=M.ncols)


def vectors_to_matrix(vectors: Sequence, ncols: int, field=None) -> Matrix:
    return Matrix([list(v) for v in vectors], field, ncols=ncols)
