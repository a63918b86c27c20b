import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from volrig.certify import (CASES, SplitContext, alpha_identity, alt1_check, bipyramid_cone_skeleton,
                            coning_alphas, coning_matrix, coning_rank_check, glue_certify,
                            glue_plan, octahedron_split_instance, regular_simplex_block, split_certify,
                            split_check, split_matrix, split_sets, apex_link_hypergraph,
                            vertex_star_parts, verify_paper)
from volrig.complexes import (Hypergraph, complete_uniform, cone, contract, cross_polytope,
                              icosahedron, octahedron, skeleton)
from volrig.errors import ArgumentError, DegeneracyError
from volrig.exactlinalg import (Matrix, Realisation, affine_dimension, affine_projection,
                                minors_rank, random_realisation, rank)
from volrig.rigidity import rigidity_report

small = st.integers(-7, 7)


def oct_cone():
    return skeleton(cone(octahedron(), ["z"]), 2)


def test_split_sets_on_octahedron_cone():
    E_uv, E_vu = split_sets(oct_cone(), "0", "1")
    assert E_uv == [("0", "1", "2"), ("0", "1", "5"), ("0", "1", "z")]
    assert E_vu == [("1", "2", "z"), ("1", "5", "z")]


def test_split_matrix_edge_row_is_direction():
    H = Hypergraph([], [["u", "v"], ["v", "a"], ["u", "a"], ["a", "b", "v"]])
    q = Realisation(3, {"v": (0, 0, 0), "a": (1, 2, 0), "b": (0, 1, 3)})
    A = split_matrix(SplitContext(H, "u", "v", q, (4, -1, 2)))
    assert A.rows[0] == (4, -1, 2)
    assert A.row_labels[0] == ("E_uv", ("u", "v"))
    # edge {v, a}: row is q(v) - q(a)
    assert A.rows[1] == (-1, -2, 0)


def test_split_matrix_degenerate_face():
    H = Hypergraph([], [["u", "a", "b"], ["v", "a", "b"]])
    q = Realisation(2, {"v": (0, 0), "a": (1, 1), "b": (1, 1)})
    with pytest.raises(DegeneracyError, match="degenerate"):
        split_matrix(SplitContext(H, "u", "v", q, (1, 0)))


def test_octahedron_split_rows_and_rank():
    res = octahedron_split_instance((1, 2, 3, 5))
    assert res["matches_expected_rows"]
    assert res["rank"] == 4 == res["split_rank"]
    expected = sympy.Matrix([[1, 0, 3, 5], [1, 2, 0, 5], [1, 1, 0, 0], [1, 0, 1, 0]]).det()
    assert res["det"] == expected != 0
    rng = random.Random(0)
    for _ in range(20):
        a = [Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(4)]
        res = octahedron_split_instance(a)
        assert res["matches_expected_rows"] and res["rank"] == 4


def test_split_rank_against_minors_on_sphere_contraction():
    H = skeleton(cone(icosahedron(), ["z"]), 2)
    rng = random.Random(3)
    verts = [v for v in H.vertices if v != "0"]
    q = Realisation(4, {v: [rng.randint(-20, 20) for _ in range(4)] for v in verts})
    A = split_matrix(SplitContext(H, "0", "1", q, (3, -1, 4, 1)))
    assert rank(A).rank == minors_rank(A) == 4


def test_split_check_examples():
    assert split_check(oct_cone(), "0", "1", 4, seed=1).ok
    # only the single edge uv: one row cannot span 3 directions
    H = Hypergraph([], [["u", "v"], ["v", "a"], ["a", "b"]])
    ev = split_check(H, "u", "v", 3)
    assert not ev.ok and ev.rank <= 1
    H5 = bipyramid_cone_skeleton(5)
    assert split_check(H5, "1", "4", 5).ok


def test_split_certify():
    ev = split_certify(oct_cone(), "0", "1", 4)
    assert ev.ok and ev.contracted_rank == ev.contracted_target == 4 * 6 - 10
    # the bipyramid cone is a base case: its contraction loses rigidity
    ev = split_certify(bipyramid_cone_skeleton(5), "1", "4", 5)
    assert not ev.ok and ev.rank == 5 and ev.contracted_rank < ev.contracted_target
    with pytest.raises(ArgumentError):
        split_check(oct_cone(), "0", "0", 4)


def test_coning_examples():
    H = Hypergraph([], [["u", "v"]])
    p = Realisation(2, {"u": (1, 0), "v": (0, 1)})
    assert coning_matrix(H, p).rows[0] == (Fraction(1, 2), Fraction(1, 2))
    # origin already in the hull
    pts = [(1, 0, 0), (-1, 2, 0), (0, -3, 0)]
    alpha = coning_alphas(pts)
    assert all(sum(a * x[c] for a, x in zip(alpha, pts)) == 0 for c in range(3))
    assert sum(alpha) == 1
    with pytest.raises(DegeneracyError):
        coning_matrix(Hypergraph([], [[1, 2, 3]]),
                      Realisation(2, {"1": (0, 1), "2": (1, 2), "3": (2, 3)}))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_regular_simplex_block(k):
    B = regular_simplex_block(k)
    off = {B[i, j] for i in range(k + 1) for j in range(k + 1) if i != j}
    assert all(B[i, i] == 0 for i in range(k + 1))
    assert off == {Fraction(1, k)}
    assert B.det() != 0


@st.composite
def coning_instance(draw):
    d = draw(st.integers(2, 4))
    n = draw(st.integers(d, d + 3))
    size = draw(st.integers(2, d))
    edges = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=size, max_size=size),
                          min_size=1, max_size=6))
    H = Hypergraph(range(n), edges)
    p = Realisation(d, {v: [draw(small) for _ in range(d)] for v in H.vertices})
    return H, p


@settings(max_examples=100)
@given(coning_instance())
def test_coning_rows_sum_to_one_and_hit_the_foot(case):
    H, p = case
    try:
        A = coning_matrix(H, p)
    except DegeneracyError:
        assume(False)
    for row, e in zip(A.rows, H.edges):
        assert sum(row) == 1
        foot = affine_projection(tuple(0 for _ in range(p.dim)), [p[x] for x in e])
        combo = tuple(sum(row[H.index[x]] * p[x][c] for x in e) for c in range(p.dim))
        assert combo == foot


@settings(max_examples=100)
@given(st.integers(2, 5), st.data())
def test_alpha_identity(d, data):
    m = data.draw(st.integers(3, d + 1))
    pts = [tuple(data.draw(small) for _ in range(d)) for _ in range(m)]
    assume(affine_dimension(pts) == m - 1)
    w, u = data.draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
    lhs, rhs = alpha_identity(pts, w, u)
    assert lhs == rhs


def test_coning_rank_check_examples():
    for d, k in ((4, 3), (5, 3), (5, 4)):
        Hw = apex_link_hypergraph(d, k)
        assert Hw == complete_uniform(d, k - 1)
        assert alt1_check(Hw)
        assert coning_rank_check(Hw, d - 1).ok
    two = Hypergraph([], [["a", "b", "c"], ["d", "e", "f"]])
    ev = coning_rank_check(two, 3)
    assert not ev.ok and ev.rank == 2
    assert not alt1_check(two)
    one = Hypergraph([], [[1, 2, 3]])
    assert coning_rank_check(one, 3).rank == 1


def test_alt1_check():
    assert alt1_check(complete_uniform(5, 3))
    assert not alt1_check(Hypergraph([], [[1, 2, 3]]))
    assert alt1_check(apex_link_hypergraph(4, 2))
    with pytest.raises(ArgumentError):
        alt1_check(Hypergraph([], [[1, 2], [1, 2, 3]]))


def _alt1_instances():
    rng = random.Random(2)
    out = [skeleton(octahedron(), 2), skeleton(icosahedron(), 2), complete_uniform(6, 3),
           skeleton(cross_polytope(4), 2), complete_uniform(6, 4)]
    for _ in range(30):
        n = rng.randint(4, 7)
        k = rng.randint(2, 3)
        edges = [rng.sample(range(n), k) for _ in range(rng.randint(2, 10))]
        out.append(Hypergraph([], edges))
    return out


def test_alt1_implies_full_coning_rank():
    checked = 0
    for H in _alt1_instances():
        if alt1_check(H):
            d = H.uniformity
            ev = coning_rank_check(H, max(d, 3), seed=1)
            assert ev.ok, H
            checked += 1
    assert checked >= 5


def test_glue_plan_examples():
    a = complete_uniform(5, 3)
    b4 = a.relabel({"0": "x"})  # shares 1..4
    assert glue_plan(a.union(b4), [a, b4], 4).ok
    b3 = a.relabel({"0": "x", "1": "y"})  # shares 2..4
    plan = glue_plan(a.union(b3), [a, b3], 4)
    assert not plan.ok and plan.merges == []
    with pytest.raises(ArgumentError, match="cover"):
        glue_plan(a.union(b4), [a], 4)
    with pytest.raises(ArgumentError, match="outside"):
        glue_plan(a, [a, b4], 4)


def test_glue_plan_on_vertex_stars():
    S = cross_polytope(4)
    H = skeleton(S, 2)
    parts = vertex_star_parts(S, 2)
    plan = glue_plan(H, parts, 4)
    assert plan.ok and len(plan.merges) == len(parts) - 1
    assert plan.as_dict()["groups"] == [list(H.vertices)]


def test_glue_order_does_not_matter():
    S = cross_polytope(4)
    H = skeleton(S, 2)
    parts = vertex_star_parts(S, 2)
    rng = random.Random(0)
    for _ in range(5):
        rng.shuffle(parts)
        assert glue_plan(H, parts, 4).ok


def test_glue_certification_is_sound():
    rng = random.Random(4)
    base = [skeleton(cross_polytope(4), 2), complete_uniform(7, 3), skeleton(cone(octahedron(),
                                                                             ["z"]), 2)]
    for H in base:
        V = list(H.vertices)
        for _ in range(3):
            # parts: edges split at random among three vertex-star-like pieces
            parts = [[], [], []]
            for e in H.edges:
                parts[rng.randrange(3)].append(e)
            parts = [Hypergraph([], P) for P in parts if P]
            plan = glue_certify(H, parts, 4)
            if plan.ok:
                assert rigidity_report(H, 4).rigid
        plan = glue_certify(H, [H], 4)
        assert plan.ok == rigidity_report(H, 4).rigid


@pytest.mark.parametrize("case", sorted(CASES))
def test_reproduction_cases(case):
    rep = verify_paper(case)
    assert rep["pass"], rep
    for key in ("case", "target_rank", "achieved_rank", "field", "seed", "pass"):
        assert key in rep
    assert rep == verify_paper(case)


def test_reproduction_all_and_unknown():
    rep = verify_paper("all", seed=3)
    assert rep["pass"] and [c["case"] for c in rep["cases"]] == sorted(CASES)
    with pytest.raises(ArgumentError):
        verify_paper("z")


def test_bipyramid_cone_counts():
    assert len(bipyramid_cone_skeleton(5).edges) == 21
    assert len(bipyramid_cone_skeleton(6).edges) == 27
