"""Triangle-graph dynamics: branch steps, the correspondence, monodromy, extension."""

import math

import networkx as nx
import numpy as np
import pytest

from grapholo.core import is_holomorphic
from grapholo.exceptions import MissingDataError, NumericalFailureError, SizeCapError
from grapholo.moments import solve_pair2
from grapholo.triangles import (
    BranchSelector,
    CorrespondencePoint,
    MarkedTriangle,
    SINGULAR_GENERATOR,
    ball_image_cloud,
    branch_monodromy,
    branch_roots,
    circle_class_loop,
    correspondence_residual,
    discriminant,
    extend_tr3,
    graph_point,
    involution_check,
    marked_state,
    parent_others,
    projective_fixed_points,
    projective_step,
    sample_equivalent_states,
    singular_locus_distance,
    step_m,
    t3_line_graph,
    tr3_ball,
    triangle_codes,
)

T_SING_S = (-1 - 2j * math.sqrt(2)) / 3  # class of the first singular line in the e/f chart
T_SING_N = (-1 + 2j * math.sqrt(2)) / 3


def test_step_m_example():
    out = step_m(MarkedTriangle(0, 1, -1), 1)
    assert abs(out.p - (-1j)) < 1e-14
    assert abs(out.e - (-1j)) < 1e-14
    assert abs(out.f - (-2j)) < 1e-14
    # discriminant -4, principal root 2i
    assert discriminant(1, -1) == -4
    out2 = step_m(MarkedTriangle(0, 1, -1), 2)
    assert abs(out2.p - 1j) < 1e-14


def test_step_m_fixes_zero_oscillations():
    for branch in (1, 2):
        out = step_m(MarkedTriangle(3 + 4j, 0, 0), branch)
        assert out == MarkedTriangle(3 + 4j, 0, 0)


def test_step_m_branches_coincide_on_singular_line():
    rng = np.random.default_rng(0)
    e0, f0 = SINGULAR_GENERATOR
    for _ in range(10):
        lam = complex(*rng.standard_normal(2))
        o1 = step_m(MarkedTriangle(0, lam * e0, lam * f0), 1)
        o2 = step_m(MarkedTriangle(0, lam * e0, lam * f0), 2)
        assert abs(o1.e - o2.e) < 1e-6 * max(1, abs(lam))
        assert abs(o1.f - o2.f) < 1e-6 * max(1, abs(lam))


def test_step_m_agrees_with_pair_solver():
    rng = np.random.default_rng(1)
    for _ in range(300):
        p, e, f = (complex(*rng.standard_normal(2)) for _ in range(3))
        scale = max(1.0, abs(e), abs(f))
        u1, u2 = branch_roots(e, f)
        v1, v2 = solve_pair2(e, f)
        match = min(
            max(abs(u1 - v1), abs(u2 - v2)), max(abs(u1 - v2), abs(u2 - v1))
        )
        assert match < 1e-8 * scale
        # recombination (p - u, -u, -u + v) reproduces both branches
        for branch, u, v in ((1, u1, u2), (2, u2, u1)):
            out = step_m(MarkedTriangle(p, e, f), branch)
            assert abs(out.p - (p - u)) < 1e-9 * max(1, abs(p), scale)
            assert abs(out.e - (-u)) < 1e-9 * scale
            assert abs(out.f - (v - u)) < 1e-9 * scale


def test_correspondence_residual_examples():
    pt = CorrespondencePoint(0, 1, -1, -1j, -1j, -2j)
    assert all(abs(r) < 1e-14 for r in correspondence_residual(pt))
    pt = CorrespondencePoint(5 - 2j, 0, 0, 5 - 2j, 0, 0)
    assert all(abs(r) < 1e-14 for r in correspondence_residual(pt))


def test_correspondence_closure_property():
    rng = np.random.default_rng(2)
    for _ in range(2000):
        p, e, f = (complex(*rng.standard_normal(2)) for _ in range(3))
        for branch in (1, 2):
            pt = graph_point(MarkedTriangle(p, e, f), branch)
            scale = max(1.0, abs(e), abs(f)) ** 2
            assert all(abs(r) <= 1e-9 * scale for r in correspondence_residual(pt))


def test_involution():
    assert involution_check(1, -1)
    assert involution_check(0, 0)
    rng = np.random.default_rng(3)
    assert all(
        involution_check(complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        for _ in range(3000)
    )


def test_singular_locus_distance():
    assert singular_locus_distance(*SINGULAR_GENERATOR) < 1e-12
    swapped = (SINGULAR_GENERATOR[1], SINGULAR_GENERATOR[0])
    assert singular_locus_distance(*swapped) < 1e-12
    assert singular_locus_distance(1, 1) == pytest.approx(4.0)
    rng = np.random.default_rng(4)
    for _ in range(50):
        e, f = (complex(*rng.standard_normal(2)) for _ in range(2))
        lam = complex(*rng.standard_normal(2))
        if abs(lam) < 1e-3 or (abs(e) < 1e-6 and abs(f) < 1e-6):
            continue
        assert singular_locus_distance(lam * e, lam * f) == pytest.approx(
            singular_locus_distance(e, f), rel=1e-6
        )
    with pytest.raises(ValueError):
        singular_locus_distance(0, 0)


def test_monodromy_around_singular_class():
    loop = circle_class_loop(T_SING_S, 0.4, 1000)
    assert branch_monodromy(loop) == "transposition"
    loop = circle_class_loop(T_SING_N, 0.4, 1000)
    assert branch_monodromy(loop) == "transposition"


def test_monodromy_trivial_loops():
    assert branch_monodromy(circle_class_loop(2 + 2j, 0.5, 400)) == "identity"
    # a loop around both singular classes composes two transpositions
    assert branch_monodromy(circle_class_loop(-1 / 3 + 0j, 1.5, 2000)) == "identity"


def test_monodromy_ambiguity_guard():
    # 3 steps around a singular point cannot be continued unambiguously
    with pytest.raises(NumericalFailureError):
        branch_monodromy(circle_class_loop(T_SING_S, 0.5, 3))


def test_tr3_ball_structure():
    ball = tr3_ball(2)
    g = ball.graph
    assert len(triangle_codes(2)) == 9
    inner = [v for v in g.vertices if v not in g.boundary]
    assert all(g.valency(v) == 4 for v in inner)
    # each vertex lies in exactly two ball triangles unless it is boundary
    counts = {v: 0 for v in g.vertices}
    for tri in ball.triangles.values():
        for v in tri:
            counts[v] += 1
    for v in g.vertices:
        assert counts[v] == (1 if v in g.boundary else 2)


def test_tr3_matches_t3_line_graph():
    for radius in (1, 2, 3):
        ball = tr3_ball(radius)
        dual = t3_line_graph(radius)
        g1 = nx.Graph(ball.graph.edges())
        g2 = nx.Graph(dual.edges())
        assert len(ball.graph) == len(dual)
        assert nx.is_isomorphic(g1, g2)


def test_extend_constant_triangle():
    f = extend_tr3(MarkedTriangle(2 - 1j, 0, 0), 3, BranchSelector.canonical(3))
    assert all(abs(z - (2 - 1j)) < 1e-14 for z in f.values.values())


def test_extend_is_holomorphic():
    rng = np.random.default_rng(5)
    for k in range(6):
        p, e, f0 = (complex(*rng.standard_normal(2)) for _ in range(3))
        f = extend_tr3(MarkedTriangle(p, e, f0), 3, BranchSelector.random(3, k))
        rep = is_holomorphic(f)
        assert rep.verdict


def test_selectors_change_generic_extensions():
    start = MarkedTriangle(0, 1, 2j)
    f0 = extend_tr3(start, 2, BranchSelector.from_pattern(2, 0))
    f1 = extend_tr3(start, 2, BranchSelector.from_pattern(2, 1))
    assert max(abs(f0.values[v] - f1.values[v]) for v in f0.values) > 1e-6


def test_missing_selector_entry():
    with pytest.raises(MissingDataError, match="'2'"):
        extend_tr3(MarkedTriangle(0, 1, -1), 1, BranchSelector({"1": 0, "3": 1}))


def test_two_triangle_determination_radius2():
    # exhaustively: the map selector -> function is injective, and extensions
    # agreeing on the central triangle and its direction-1 neighbor share the
    # branch bit there
    start = MarkedTriangle(0, 1, 2j)
    codes = triangle_codes(2)
    by_pattern = {}
    for pattern in range(1 << len(codes)):
        sel = BranchSelector.from_pattern(2, pattern)
        f = extend_tr3(start, 2, sel)
        key = tuple(
            (v, round(z.real, 9), round(z.imag, 9)) for v, z in sorted(f.values.items())
        )
        assert key not in by_pattern
        by_pattern[key] = (pattern, sel, f)
    tri1 = ("1", "a1", "b1")
    groups = {}
    for key, (pattern, sel, f) in by_pattern.items():
        k1 = tuple((v, round(f.values[v].real, 9), round(f.values[v].imag, 9)) for v in tri1)
        groups.setdefault(k1, set()).add(sel.bits["1"])
    for bits in groups.values():
        assert len(bits) == 1


def test_first_ring_depends_only_on_its_own_bits():
    # over every selector, the values on the central triangle and its three
    # neighbors take exactly 2**3 distinct tuples: the deeper switch bits
    # cannot reach back inward
    start = MarkedTriangle(0, 1, 2j)
    ring = ("1", "2", "3", "a1", "b1", "a2", "b2", "a3", "b3")
    codes = triangle_codes(2)
    seen = set()
    for pattern in range(1 << len(codes)):
        f = extend_tr3(start, 2, BranchSelector.from_pattern(2, pattern))
        seen.add(tuple((round(f.values[v].real, 9), round(f.values[v].imag, 9)) for v in ring))
    assert len(seen) == 8


def test_step_m_homogeneity_unordered():
    rng = np.random.default_rng(12)
    for _ in range(200):
        p, e, f = (complex(*rng.standard_normal(2)) for _ in range(3))
        lam = complex(*rng.standard_normal(2))
        scale = max(1.0, abs(lam)) * max(1.0, abs(p), abs(e), abs(f))
        direct = {b: step_m(MarkedTriangle(lam * p, lam * e, lam * f), b) for b in (1, 2)}
        scaled = {}
        for b in (1, 2):
            out = step_m(MarkedTriangle(p, e, f), b)
            scaled[b] = MarkedTriangle(lam * out.p, lam * out.e, lam * out.f)

        def close(a, b):
            return max(abs(a.p - b.p), abs(a.e - b.e), abs(a.f - b.f)) < 1e-8 * scale

        assert (close(direct[1], scaled[1]) and close(direct[2], scaled[2])) or (
            close(direct[1], scaled[2]) and close(direct[2], scaled[1])
        )


def test_projective_step_homogeneous():
    rng = np.random.default_rng(6)
    for _ in range(100):
        e, f = (complex(*rng.standard_normal(2)) for _ in range(2))
        lam = complex(*rng.standard_normal(2))
        if abs(lam) < 1e-3:
            continue
        pairs = {projective_step(e, f, b) for b in (1, 2)}
        pairs_scaled = {projective_step(lam * e, lam * f, b) for b in (1, 2)}
        # compare as unordered pairs of classes
        def classes(ps):
            out = set()
            for e2, f2 in ps:
                out.add(round((e2 / f2).real, 6) + 1j * round((e2 / f2).imag, 6) if f2 != 0 else "inf")
            return out

        assert classes(pairs) == classes(pairs_scaled)


def test_projective_orbit_stays_on_quadric():
    e, f = 1.0 + 0j, -1.0 + 0j
    rng = np.random.default_rng(7)
    for _ in range(100):
        branch = int(rng.integers(1, 3))
        pt = graph_point(MarkedTriangle(0, e, f), branch)
        assert all(abs(r) < 1e-7 * max(1, abs(e), abs(f)) ** 2 for r in correspondence_residual(pt))
        e, f = projective_step(e, f, branch)
        scale = max(abs(e), abs(f))
        e, f = e / scale, f / scale


def test_projective_fixed_points():
    # under the principal-root convention all four fixed classes of the
    # two-valued step are fixed by branch 2
    fps = projective_fixed_points(2, seed=1)
    assert len(fps) >= 2
    for t in fps:
        e2, f2 = projective_step(t, 1.0 + 0j, 2)
        assert abs(e2 / f2 - t) < 1e-9 * max(1, abs(t))
    known = complex(0.4851447101297762, 0.3541413426668929)
    assert any(abs(t - known) < 1e-6 or abs(t - known.conjugate()) < 1e-6 for t in fps)


def test_ball_image_cloud():
    start = MarkedTriangle(0, 1, -1)
    assert len(ball_image_cloud(start, 0)) == 3
    pts = ball_image_cloud(start, 2, mode="exhaustive")
    assert len(pts) == (1 << 9) * len(tr3_ball(2).graph.vertices)
    with pytest.raises(SizeCapError):
        ball_image_cloud(start, 4, mode="exhaustive")
    sampled = ball_image_cloud(start, 4, mode="sampled", samples=10, seed=0)
    assert len(sampled) == 10 * len(tr3_ball(4).graph.vertices)


def test_sampled_equivalent_states_read_back():
    pairs = sample_equivalent_states(MarkedTriangle(0, 1, -1), 3, seed=2, count=8)
    assert len(pairs) == 8
    ball = tr3_ball(3)
    f = extend_tr3(MarkedTriangle(0, 1, -1), 3, BranchSelector.canonical(3))
    st = marked_state(f, ball, "")
    assert abs(st.p - 0) < 1e-14 and abs(st.e - 1) < 1e-14 and abs(st.f + 1) < 1e-14


def test_parent_others_convention():
    assert parent_others("2") == ("1", "3")
    assert parent_others("a1") == ("1", "b1")
    assert parent_others("ba2") == ("a2", "aa2")


def test_marked_triangle_json_round_trip():
    t = MarkedTriangle(1 + 2j, -0.5j, 3.0)
    assert MarkedTriangle.from_json_dict(t.to_json_dict()) == t
