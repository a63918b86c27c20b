"""Hypergraphs and simplicial complexes.

Vertices are normalised to strings.  Canonical order is a natural sort
(digit runs compare numerically, so ``"2" < "10"``), which keeps every
listing, matrix layout and JSON dump deterministic.
"""
from __future__ import annotations

import re
from collections import defaultdict
from itertools import combinations, product
from math import comb
from typing import Iterable

from .errors import ArgumentError

MAX_FACES = 10**6

_DIGITS = re.compile(r"(\d+)")


def vertex_key(v):
    parts = _DIGITS.split(str(v))
    return tuple((0, int(s), "") if s.isdigit() else (1, 0, s) for s in parts if s != "")


def sort_vertices(vs: Iterable) -> tuple:
    return tuple(sorted({str(v) for v in vs}, key=vertex_key))


def _edge_key(e):
    return (len(e), tuple(vertex_key(v) for v in e))


def _canon(e) -> tuple:
    return tuple(sorted({str(v) for v in e}, key=vertex_key))


class Hypergraph:
    """A vertex set with a deduplicated family of hyperedges.

    Hyperedges are stored as sorted tuples.  ``uniformity`` is the common
    hyperedge size when there is one.
    """

    __slots__ = ("vertices", "edges", "_index")

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        edges = {_canon(e) for e in edges}
        if any(len(e) == 0 for e in edges):
            raise ArgumentError("empty hyperedge")
        vs = {str(v) for v in vertices}
        for e in edges:
            vs.update(e)
        self.vertices = sort_vertices(vs)
        self.edges = tuple(sorted(edges, key=_edge_key))
        self._index = None

    @classmethod
    def from_edges(cls, edges):
        return cls((), edges)

    @property
    def uniformity(self):
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def index(self):
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vertices)}
        return self._index

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Hypergraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def edges_containing(self, *vs):
        vs = {str(v) for v in vs}
        return [e for e in self.edges if vs <= set(e)]

    def delete_vertex(self, w):
        w = str(w)
        return Hypergraph([v for v in self.vertices if v != w],
                          [e for e in self.edges if w not in e])

    def induced(self, vertices):
        vs = {str(v) for v in vertices}
        return Hypergraph(vs, [e for e in self.edges if set(e) <= vs])

    def union(self, other):
        return Hypergraph(self.vertices + other.vertices, self.edges + other.edges)

    def relabel(self, mapping):
        m = {str(k): str(v) for k, v in mapping.items()}
        return Hypergraph([m.get(v, v) for v in self.vertices],
                          [[m.get(v, v) for v in e] for e in self.edges])


class SimplicialComplex:
    """A simplicial complex stored by its facets; faces are implicit."""

    __slots__ = ("vertices", "facets", "_faces")

    def __init__(self, facets: Iterable, vertices: Iterable = ()):
        fs = {_canon(f) for f in facets}
        fs.discard(())
        sets = sorted(fs, key=len, reverse=True)
        maximal = []
        for f in sets:
            sf = set(f)
            if not any(sf < set(g) for g in maximal):
                maximal.append(f)
        vs = {str(v) for v in vertices}
        for f in maximal:
            vs.update(f)
        self.vertices = sort_vertices(vs)
        self.facets = tuple(sorted(maximal, key=_edge_key))
        self._faces = {}

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.facets == other.facets

    def __hash__(self):
        return hash((self.vertices, self.facets))

    def __repr__(self):
        return f"SimplicialComplex(|V|={len(self.vertices)}, facets={len(self.facets)})"

    @property
    def dimension(self):
        return max((len(f) for f in self.facets), default=0) - 1

    def contains(self, face) -> bool:
        s = {str(v) for v in face}
        if not s:
            return True
        return any(s <= set(f) for f in self.facets)

    def faces(self, k: int) -> tuple:
        """All faces of cardinality ``k + 1``, sorted."""
        if k not in self._faces:
            total = sum(comb(len(f), k + 1) for f in self.facets)
            if total > MAX_FACES:
                raise ArgumentError(f"face enumeration would exceed {MAX_FACES} sets")
            out = set()
            for f in self.facets:
                out.update(combinations(f, k + 1))
            self._faces[k] = tuple(sorted(out, key=_edge_key))
        return self._faces[k]

    def all_faces(self) -> frozenset:
        out = set()
        for k in range(self.dimension + 1):
            out.update(frozenset(f) for f in self.faces(k))
        return frozenset(out)


# -- generators ----------------------------------------------------------------

def complete_uniform(n: int, k: int) -> Hypergraph:
    """The complete k-uniform hypergraph on vertices 0..n-1."""
    if not 1 <= k <= n:
        raise ArgumentError(f"need 1 <= k <= n, got n={n}, k={k}")
    return Hypergraph(range(n), combinations(range(n), k))


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex: all n-subsets of n + 1 vertices."""
    if n < 1:
        raise ArgumentError("simplex dimension must be positive")
    return SimplicialComplex(combinations(range(n + 1), n))


def cross_polytope(m: int) -> SimplicialComplex:
    """Boundary complex of the m-dimensional cross-polytope.

    Vertex ``i`` stands for +e_i and ``i + m`` for -e_i; facets pick one of
    each antipodal pair.
    """
    if m < 1:
        raise ArgumentError("cross-polytope dimension must be positive")
    return SimplicialComplex(
        [tuple(i + m * s for i, s in enumerate(signs)) for signs in product((0, 1), repeat=m)])


def octahedron() -> SimplicialComplex:
    return cross_polytope(3)


def bipyramid() -> SimplicialComplex:
    """Triangular bipyramid on 1..5: equator 1, 2, 3 and apexes 4, 5."""
    eq = [(1, 2), (1, 3), (2, 3)]
    return SimplicialComplex([e + (a,) for e in eq for a in (4, 5)])


def icosahedron() -> SimplicialComplex:
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    faces = []
    for i in range(5):
        a, b = 1 + i, 1 + (i + 1) % 5
        c, e = 6 + i, 6 + (i + 1) % 5
        faces += [(0, a, b), (11, c, e), (a, b, c), (b, c, e)]
    return SimplicialComplex(faces)


PRESETS = {
    "simplex": simplex_boundary,
    "cross-polytope": cross_polytope,
    "octahedron": octahedron,
    "16-cell": lambda: cross_polytope(4),
    "bipyramid": bipyramid,
    "icosahedron": icosahedron,
}


def presets(name: str, dim: int | None = None) -> SimplicialComplex:
    """Named complexes.  ``simplex`` and ``cross-polytope`` take ``dim``."""
    if name not in PRESETS:
        raise ArgumentError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name in ("simplex", "cross-polytope"):
        if dim is None:
            raise ArgumentError(f"preset {name!r} needs a dimension")
        return PRESETS[name](dim)
    return PRESETS[name]()


# -- operations ----------------------------------------------------------------

def skeleton(S: SimplicialComplex, k: int) -> Hypergraph:
    """The (k+1)-uniform hypergraph of k-faces of ``S``."""
    if k < 0:
        raise ArgumentError("k must be non-negative")
    faces = S.faces(k)
    if not faces:
        raise ArgumentError(f"complex has no {k}-faces")
    return Hypergraph((v for f in faces for v in f), faces)


def _check_face(S, X):
    X = {str(x) for x in X}
    if not S.contains(X):
        raise ArgumentError(f"{sorted(X)} is not a face of the complex")
    return X


def link(S: SimplicialComplex, X) -> SimplicialComplex:
    X = _check_face(S, X)
    return SimplicialComplex([set(f) - X for f in S.facets if X <= set(f)])


def star(S: SimplicialComplex, X) -> SimplicialComplex:
    # faces of the link lie inside facets containing X, so those facets suffice
    X = _check_face(S, X)
    return SimplicialComplex([f for f in S.facets if X <= set(f)])


def cone(S: SimplicialComplex, Z) -> SimplicialComplex:
    Z = {str(z) for z in Z}
    if not Z:
        raise ArgumentError("cone apex set must be nonempty")
    if Z & set(S.vertices):
        raise ArgumentError("cone apexes must be new vertices")
    return SimplicialComplex([set(f) | Z for f in S.facets])


def _check_pair(vertices, u, v):
    u, v = str(u), str(v)
    if u == v:
        raise ArgumentError("cannot contract a vertex onto itself")
    for w in (u, v):
        if w not in vertices:
            raise ArgumentError(f"vertex {w!r} not present")
    return u, v


def contract(H: Hypergraph, u, v) -> Hypergraph:
    """Contract u onto v: drop hyperedges on both, redirect u to v elsewhere."""
    u, v = _check_pair(H.vertices, u, v)
    edges = []
    for e in H.edges:
        if u in e and v in e:
            continue
        edges.append([v if x == u else x for x in e])
    return Hypergraph([x for x in H.vertices if x != u], edges)


def contract_complex(S: SimplicialComplex, u, v) -> SimplicialComplex:
    """Facet-level contraction; commutes with taking skeletons."""
    u, v = _check_pair(S.vertices, u, v)
    out = []
    for f in S.facets:
        sf = set(f)
        if u in sf:
            sf.discard(u)
            sf.add(v)
        out.append(sf)
    return SimplicialComplex(out, [x for x in S.vertices if x != u])


def hypergraph_link(H: Hypergraph, w) -> Hypergraph:
    """The hypergraph (V - w, {e - w : w in e})."""
    w = str(w)
    if w not in H.vertices:
        raise ArgumentError(f"vertex {w!r} not present")
    return Hypergraph([x for x in H.vertices if x != w],
                      [[x for x in e if x != w] for e in H.edges if w in e])


def strong_components(H: Hypergraph) -> list[list[int]]:
    """Partition of hyperedge indices under (k-1)-overlap adjacency."""
    k = H.uniformity
    if k is None:
        if not H.edges:
            return []
        raise ArgumentError("strong components need a uniform hypergraph")
    parent = list(range(len(H.edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_ridge = defaultdict(list)
    for i, e in enumerate(H.edges):
        for r in combinations(e, k - 1):
            by_ridge[r].append(i)
    for members in by_ridge.values():
        root = find(members[0])
        for j in members[1:]:
            rj = find(j)
            if rj != root:
                parent[rj] = root
    blocks = defaultdict(list)
    for i in range(len(H.edges)):
        blocks[find(i)].append(i)
    return sorted(blocks.values())


def contains_complete(H: Hypergraph, block=None) -> bool:
    """Whether the hyperedges in ``block`` include every k-subset of some (k+1)-set."""
    k = H.uniformity
    if k is None:
        return False
    edges = H.edges if block is None else [H.edges[i] for i in block]
    present = set(edges)
    by_ridge = defaultdict(list)
    for e in edges:
        for r in combinations(e, k - 1):
            by_ridge[r].append(e)
    seen = set()
    for group in by_ridge.values():
        for a, b in combinations(group, 2):
            cand = _canon(set(a) | set(b))
            if cand in seen:
                continue
            seen.add(cand)
            if all(s in present for s in combinations(cand, k)):
                return True
    return False


def manifold_warnings(S: SimplicialComplex) -> list[str]:
    """Advisory pseudo-manifold checks; never raises."""
    warnings = []
    sizes = {len(f) for f in S.facets}
    if len(sizes) > 1:
        warnings.append(f"facets of mixed cardinality {sorted(sizes)}")
        return warnings
    if not sizes:
        return ["empty complex"]
    n = sizes.pop()
    count = defaultdict(int)
    for f in S.facets:
        for r in combinations(f, n - 1):
            count[r] += 1
    bad = sorted((r for r, c in count.items() if c != 2), key=_edge_key)
    if bad:
        warnings.append(f"{len(bad)} ridges not in exactly two facets, e.g. {list(bad[0])}")
    return warnings
