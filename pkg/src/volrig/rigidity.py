"""Volume rigidity matrices, trivial motions and rigidity verdicts.

Row ``e`` of the rigidity matrix is a positive multiple of the gradient of
the squared volume of the simplex ``p(e)``.  For a hyperedge on ``k + 1``
vertices the block at vertex ``v`` equals ``(p(v) - proj) * Vol(p(e - v))**2``
where ``proj`` is the foot of the perpendicular from ``p(v)`` to the affine
hull of the other points; for an edge it is ``p(v) - p(w)``.  We compute
the gradient from the Gram determinant directly, which stays defined when
the simplex is degenerate.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .complexes import Hypergraph, complete_uniform
from .errors import ArgumentError, DimensionError
from .exactlinalg import (Matrix, RankCertificate, Realisation, affine_dimension,
                          affine_projection, det, gram, random_realisation, rank)
from .exterior import vol_squared
from .field import QQ, get_field

RIGID = "rigid"
FLEXIBLE = "flexible-evidence"
DEGENERATE = "degenerate"


def _adjugate(G):
    n = len(G)
    if n == 1:
        return [[G[0][0] * 0 + 1]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[G[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * det(Matrix(minor))
    return adj


def hyperedge_row_blocks(points):
    """Rigidity-matrix blocks for one hyperedge, one d-vector per point.

    With M = [p_1 - p_0, ..., p_k - p_0] and G = M^T M, the gradient of
    det G with respect to column j of M is 2 (M adj G)_j.  Scaling the
    gradient of det(G) / (k!)^2 by k^2 / 2 gives the blocks returned here.
    """
    points = [tuple(p) for p in points]
    k = len(points) - 1
    if k < 1:
        raise ArgumentError("hyperedges need at least two vertices")
    d = len(points[0])
    base = points[0]
    D = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    G = gram(D)
    adj = _adjugate(G)
    scale = 2 * factorial(k - 1) ** 2
    blocks = []
    for j in range(k):
        g = [0] * d
        for l in range(k):
            c = adj[l][j]
            if c != 0:
                g = [gi + 2 * c * x for gi, x in zip(g, D[l])]
        blocks.append(tuple(gi / scale for gi in g))
    first = tuple(-sum(b[c] for b in blocks) for c in range(d))
    return [first] + blocks


def projection_row_blocks(points):
    """The same blocks from perpendicular feet; needs general position."""
    points = [tuple(p) for p in points]
    k = len(points) - 1
    if k == 1:
        a, b = points
        return [tuple(x - y for x, y in zip(a, b)), tuple(y - x for x, y in zip(a, b))]
    out = []
    for i, p in enumerate(points):
        rest = points[:i] + points[i + 1:]
        foot = affine_projection(p, rest)
        w = vol_squared(rest) if len(rest) >= 2 else 1
        out.append(tuple((x - y) * w for x, y in zip(p, foot)))
    return out


@dataclass(frozen=True)
class RigidityMatrix:
    inner: Matrix
    dim: int
    hypergraph: Hypergraph
    realisation: Realisation

    @property
    def shape(self):
        return self.inner.shape

    def block(self, edge, vertex):
        """The d entries in the row of ``edge`` and the columns of ``vertex``."""
        i = self.hypergraph.edges.index(tuple(edge))
        j = self.hypergraph.index[str(vertex)] * self.dim
        return self.inner.rows[i][j:j + self.dim]

    def rank(self) -> int:
        return rank(self.inner).rank


def rigidity_matrix(H: Hypergraph, p: Realisation) -> RigidityMatrix:
    d = p.dim
    idx = H.index
    for v in H.vertices:
        if v not in p:
            raise DimensionError(f"realisation has no point for vertex {v!r}")
    f = p.field
    ncols = d * len(H.vertices)
    rows = []
    for e in H.edges:
        if len(e) < 2:
            raise ArgumentError(f"hyperedge {list(e)} has fewer than two vertices")
        row = [f.zero] * ncols
        for v, blk in zip(e, hyperedge_row_blocks([p[v] for v in e])):
            j = idx[v] * d
            row[j:j + d] = blk
        rows.append(row)
    col_labels = [(v, c) for v in H.vertices for c in range(d)]
    inner = Matrix(rows, f, row_labels=list(H.edges), col_labels=col_labels, ncols=ncols)
    return RigidityMatrix(inner, d, H, p)


def trivial_motions(p: Realisation, vertices=None) -> list[tuple]:
    """Translations and elementary rotations evaluated at ``p``.

    Returns d + C(d, 2) vectors of length d * |V|, vertex-major.
    """
    vs = p.vertices if vertices is None else [str(v) for v in vertices]
    d = p.dim
    f = p.field
    out = []
    for c in range(d):
        vec = []
        for _ in vs:
            vec.extend(f.one if i == c else f.zero for i in range(d))
        out.append(tuple(vec))
    for a, b in combinations(range(d), 2):
        vec = []
        for v in vs:
            x = p[v]
            blk = [f.zero] * d
            blk[a] = x[b]
            blk[b] = -x[a]
            vec.extend(blk)
        out.append(tuple(vec))
    return out


def trivial_dimension(p: Realisation, vertices=None) -> int:
    vs = p.vertices if vertices is None else vertices
    mot = trivial_motions(p, vs)
    return rank(Matrix(mot, p.field, ncols=p.dim * len(vs))).rank


def generic_trivial_dimension(n: int, d: int) -> int:
    """Dimension of trivial motions of n generic points in d-space.

    The points span an affine subspace of dimension m = min(n - 1, d); the
    isometries of d-space act with an m-independent stabiliser of dimension
    C(d - m, 2).
    """
    if n == 0:
        return 0
    m = min(n - 1, d)
    return comb(d + 1, 2) - comb(d - m, 2)


def target_rank(H: Hypergraph, d: int) -> int:
    n = len(H.vertices)
    return d * n - generic_trivial_dimension(n, d)


def degree_bound(H: Hypergraph, target: int) -> int:
    """Degree bound for a target-size minor of R(H, p) as a polynomial in p."""
    degs = sorted((2 * len(e) - 3 for e in H.edges), reverse=True)
    return sum(degs[:target])


@dataclass
class RigidityReport:
    rank: int
    kernel_dim: int
    trivial_dim: int
    target_rank: int
    verdict: str
    certificate: RankCertificate
    dim: int
    field: str
    prime: int | None
    seed: int
    trials: int
    trials_used: int
    error_bound: float | None = None
    realisation: Realisation | None = dc_field(default=None, repr=False)

    @property
    def dof(self) -> int:
        return self.kernel_dim - self.trivial_dim

    @property
    def rigid(self) -> bool:
        return self.verdict == RIGID

    def as_dict(self):
        return {
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "trivial_dim": self.trivial_dim,
            "target_rank": self.target_rank,
            "dof": self.dof,
            "verdict": self.verdict,
            "pass": self.rigid,
            "dim": self.dim,
            "field": self.field,
            "prime": self.prime,
            "seed": self.seed,
            "trial_seed": self.certificate.seed,
            "trials": self.trials,
            "trials_used": self.trials_used,
            "error_bound": self.error_bound,
        }


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Per-trial seeds: seed, seed + 1, ...  (no hashing, so replayable)."""
    return [seed + i for i in range(trials)]


def rigidity_report(H: Hypergraph, d: int, trials: int = 3, seed: int = 0,
                    field="prime") -> RigidityReport:
    """Certify or refute generic volume rigidity of ``H`` in d-space.

    Reaching the target rank at one random point proves generic rigidity.
    Missing it at every trial is probabilistic evidence of flexibility;
    ``error_bound`` is the Schwartz-Zippel bound (D / |S|) ** trials on the
    chance that a rigid hypergraph was missed.
    """
    if d < 1:
        raise ArgumentError("dimension must be positive")
    if trials < 1:
        raise ArgumentError("need at least one trial")
    f = get_field(field)
    n = len(H.vertices)
    target = target_rank(H, d)
    generic_triv = generic_trivial_dimension(n, d)
    if n == 0:
        cert = RankCertificate(0, f.kind, f.prime, seed)
        return RigidityReport(0, 0, 0, 0, DEGENERATE, cert, d, f.kind, f.prime, seed,
                              trials, 0)
    best = None
    used = 0
    for s in trial_seeds(seed, trials):
        used += 1
        p = random_realisation(H.vertices, d, s, f)
        R = rigidity_matrix(H, p)
        cert = rank(R.inner, seed=s)
        if best is None or cert.rank > best[0].rank:
            best = (cert, p)
        if cert.rank >= target:
            break
    cert, p = best
    triv = trivial_dimension(p, H.vertices)
    if cert.rank >= target:
        verdict, bound = RIGID, 0.0
    elif triv < generic_triv:
        verdict, bound = DEGENERATE, None
    else:
        verdict = FLEXIBLE
        if len(H.edges) < target:
            bound = 0.0
        else:
            bound = min(1.0, degree_bound(H, target) / f.sample_size()) ** used
    return RigidityReport(cert.rank, d * n - cert.rank, triv, target, verdict, cert, d,
                          f.kind, f.prime, seed, trials, used, bound, p)


def dof(H: Hypergraph, d: int, trials: int = 3, seed: int = 0, field="prime") -> int:
    return rigidity_report(H, d, trials, seed, field).dof


def is_rigid(H: Hypergraph, d: int, trials: int = 3, seed: int = 0, field="prime") -> bool:
    return rigidity_report(H, d, trials, seed, field).rigid


# -- the Kneser reduction for K_{k+2}^k --------------------------------------------

def kneser_matrix(n: int, pairs=None) -> Matrix:
    """Adjacency matrix of the Kneser graph K(n, 2) on 2-subsets of 1..n."""
    pairs = pairs or list(combinations(range(1, n + 1), 2))
    return Matrix([[1 if not set(a) & set(b) else 0 for b in pairs] for a in pairs], QQ,
                  pairs, pairs)


@dataclass
class KneserEvidence:
    k: int
    d: int
    rank: int
    rank_bound: int
    m1_matches: bool
    m2_matches: bool
    m3_is_kneser: bool
    det_m3: object
    M1: Matrix = dc_field(repr=False)
    M2: Matrix = dc_field(repr=False)
    M3: Matrix = dc_field(repr=False)

    @property
    def passed(self) -> bool:
        return (self.rank >= self.rank_bound and self.m1_matches and self.m2_matches
                and self.m3_is_kneser and self.det_m3 != 0)

    def as_dict(self):
        return {"k": self.k, "d": self.d, "rank": self.rank, "rank_bound": self.rank_bound,
                "m1_matches": self.m1_matches, "m2_matches": self.m2_matches,
                "m3_is_kneser": self.m3_is_kneser, "det_m3": str(self.det_m3),
                "pass": self.passed}


def kneser_reduction(k: int) -> KneserEvidence:
    """Rank reduction of R(K_{k+2}^k) at the standard basis of (k+2)-space.

    Vertices are 1..k+2 with p(v_i) = e_i; d = k + 1 and the ambient space
    has dimension d + 1.  Column (h, i) is coordinate h of vertex i.
    """
    if k < 2:
        raise ArgumentError("k must be at least 2")
    d = k + 1
    n = d + 1
    H = complete_uniform(n, k).relabel({i: i + 1 for i in range(n)})
    p = Realisation(n, {str(i): [1 if j == i else 0 for j in range(1, n + 1)]
                        for i in range(1, n + 1)})
    R = rigidity_matrix(H, p)
    r = rank(R.inner).rank

    # every row carries the same factor Vol(e - v)^2 of a (k-2)-face
    W = vol_squared([p[str(i)] for i in range(1, k)]) if k >= 3 else 1

    def col(h, i):
        return H.index[str(i)] * n + (h - 1)

    M1 = Matrix([[x / W for x in row] for row in R.inner.rows], QQ, ncols=R.inner.ncols)
    m1_ok = True
    for ri, e in enumerate(H.edges):
        es = {int(v) for v in e}
        for i in range(1, n + 1):
            for h in range(1, n + 1):
                if i in es:
                    want = (1 if h == i else 0) - (Fraction(1, k - 1) if h in es - {i} else 0)
                else:
                    want = 0
                if M1[ri, col(h, i)] != want:
                    m1_ok = False

    c = -(k - 1)
    rows2 = [[x * c for x in row] for row in M1.rows]
    for i in range(1, n + 1):
        j = col(i, i)
        for row in rows2:
            row[j] = row[j] / c
    M2 = Matrix(rows2, QQ, ncols=M1.ncols)
    m2_ok = all(
        M2[ri, col(h, i)] == (1 if (i in es and h in es) else 0)
        for ri, e in enumerate(H.edges) for es in [{int(v) for v in e}]
        for i in range(1, n + 1) for h in range(1, n + 1))

    kept = [(h, i) for i in range(1, n + 1) for h in range(1, n + 1) if h < i]
    M3 = M2.submatrix(None, [col(h, i) for h, i in kept])
    M3 = Matrix(M3.rows, QQ, list(H.edges), kept, ncols=len(kept))

    # relabel row e by its complementary pair, then sort both sides
    all_v = set(range(1, n + 1))
    row_pairs = [tuple(sorted(all_v - {int(v) for v in e})) for e in H.edges]
    pairs = sorted(kept)
    rpos = {pr: i for i, pr in enumerate(row_pairs)}
    cpos = {pr: i for i, pr in enumerate(kept)}
    M3_sorted = Matrix([[M3[rpos[a], cpos[b]] for b in pairs] for a in pairs], QQ,
                       pairs, pairs)
    is_kneser = M3_sorted == kneser_matrix(n, pairs)
    return KneserEvidence(k, d, r, comb(d + 1, 2), m1_ok, m2_ok, is_kneser, det(M3_sorted),
                          M1, M2, M3)


def kneser_verification(k: int) -> bool:
    return kneser_reduction(k).passed


def affine_span_dimension(p: Realisation) -> int:
    return affine_dimension([p[v] for v in p.vertices])
