"""Conjugate parts of real harmonic functions on trees."""

import math

import numpy as np
import pytest

from grapholo.core import is_harmonic, is_holomorphic
from grapholo.exceptions import InfeasibleStepError, InputFormatError
from grapholo import trees
from grapholo.conjugate import (
    RealVertexFunction,
    SphereConstraint,
    bounded_holomorphic_t4,
    combine,
    complete_gradient,
    conjugate_step,
    constant_norm_harmonic,
    find_conjugate,
    forced_propagation_infeasibility,
    no_conjugate_instance,
    perturb_harmonic,
    projection_range,
    random_harmonic_tree,
    solve_decay_parameters,
)

SQ3 = math.sqrt(3)


def sample_constraint_sphere(delta, n_samples, rng):
    """Uniform points of {sum=0, <a,delta>=0, |a|=|delta|} via an orthonormal
    basis of the constraint plane: the independent route for the projection
    bound."""
    delta = np.asarray(delta, float)
    n = delta.size
    a_mat = np.vstack([np.ones(n), delta])
    _, svals, vt = np.linalg.svd(a_mat, full_matrices=True)
    basis = vt[2:]  # orthonormal rows spanning the constraint plane
    coords = rng.standard_normal((n_samples, basis.shape[0]))
    coords /= np.linalg.norm(coords, axis=1, keepdims=True)
    return np.linalg.norm(delta) * coords @ basis


def test_projection_range_degenerate_direction():
    # the direction that pins one component to zero
    delta = np.array([SQ3 / 2, -SQ3 / 6, -SQ3 / 6, -SQ3 / 6])
    kind, alpha = projection_range(delta, 0)
    assert kind == "interval"
    assert alpha == 0.0


def test_projection_range_half():
    kind, alpha = projection_range(np.array([2**-0.5, -(2**-0.5), 0, 0]), 0)
    assert kind == "interval"
    assert alpha == pytest.approx(0.5, abs=1e-12)


def test_projection_range_three_valent():
    kind, alpha = projection_range(np.array([0.0, 2**-0.5, -(2**-0.5)]), 0)
    assert kind == "points"
    assert alpha == pytest.approx(math.sqrt(2 / 3), abs=1e-12)


def test_projection_range_validates():
    with pytest.raises(ValueError):
        projection_range(np.array([1.0, 1.0, 1.0, 1.0]), 0)  # not sum-zero
    with pytest.raises(ValueError):
        projection_range(np.zeros(4), 0)


def test_projection_matches_brute_force():
    rng = np.random.default_rng(0)
    for n in (4, 5, 6):
        for _ in range(5):
            delta = rng.standard_normal(n)
            delta -= delta.mean()
            delta /= np.linalg.norm(delta)
            k = int(rng.integers(0, n))
            _, alpha = projection_range(delta, k)
            pts = sample_constraint_sphere(delta, 200_000, rng)
            assert pts[:, k].max() == pytest.approx(alpha, abs=2e-3)
            assert pts[:, k].min() == pytest.approx(-alpha, abs=2e-3)


def test_complete_gradient_boundary_point_unique():
    delta = np.array([2**-0.5, -(2**-0.5), 0, 0])
    a = complete_gradient(delta, fixed=(0, 0.5), norm_target=1.0)
    sc = SphereConstraint(None, (), delta)
    r_sum, r_dot, r_norm = sc.residuals(a)
    assert max(r_sum, r_dot, r_norm) < 1e-9
    assert a[0] == pytest.approx(0.5)
    # both modes give the unique boundary point
    b = complete_gradient(delta, fixed=(0, 0.5), norm_target=1.0, mode="seeded",
                          rng=np.random.default_rng(3))
    assert np.allclose(a, b, atol=1e-9)


def test_complete_gradient_infeasible_reports_bound():
    delta = np.array([2**-0.5, -(2**-0.5), 0, 0])
    with pytest.raises(InfeasibleStepError) as err:
        complete_gradient(delta, fixed=(0, 0.6), norm_target=1.0)
    assert err.value.alpha == pytest.approx(0.5)
    assert err.value.a1 == 0.6


def test_conjugate_step_zero_gradient():
    g = trees.tree_ball(4, 1)
    f = RealVertexFunction(g, {v: 0.0 for v in g.vertices})
    a = conjugate_step(f, trees.ROOT, 0.0)
    assert np.allclose(a, 0.0)
    with pytest.raises(InfeasibleStepError):
        conjugate_step(f, trees.ROOT, 0.3)


def test_degrees_of_freedom_by_valency():
    # valency 4: the completion set is two points; valency 5: a circle
    rng = np.random.default_rng(1)

    def distinct_completions(n, trials=60):
        delta = rng.standard_normal(n)
        delta -= delta.mean()
        delta /= np.linalg.norm(delta)
        _, alpha = projection_range(delta, 0)
        a1 = 0.4 * alpha
        seen = set()
        for s in range(trials):
            a = complete_gradient(delta, (0, a1), 1.0, mode="seeded",
                                  rng=np.random.default_rng(s))
            seen.add(tuple(np.round(a, 8)))
        return len(seen)

    assert distinct_completions(4) == 2
    assert distinct_completions(5) > 10


def test_find_conjugate_constant_norm():
    for seed in range(5):
        f = constant_norm_harmonic(4, 4, seed=seed)
        norms = [np.linalg.norm(f.gradient(v)[1]) for v in f.interior]
        assert max(norms) - min(norms) < 1e-9
        res = find_conjugate(f, mode="seeded", seed=seed + 100)
        assert res.kind == "found"
        phi = combine(f, res.g)
        rep = is_holomorphic(phi)
        assert rep.verdict and rep.max_residual < 1e-8


def test_conjugate_conditions_equal_holomorphy():
    f = constant_norm_harmonic(4, 3, seed=9)
    res = find_conjugate(f, mode="seeded", seed=9)
    g = res.g
    for v in f.interior:
        _, df = f.gradient(v)
        _, dg = g.gradient(v)
        assert abs(np.linalg.norm(df) - np.linalg.norm(dg)) < 1e-9
        assert abs(df @ dg) < 1e-9
        assert abs(dg.sum()) < 1e-9


def test_conjugate_constant_function():
    g = trees.tree_ball(4, 3)
    f = RealVertexFunction(g, {v: 7.5 for v in g.vertices})
    res = find_conjugate(f)
    assert res.kind == "found"
    assert all(abs(x) < 1e-12 for x in res.g.values.values())


def test_multiple_conjugates_differ():
    f = constant_norm_harmonic(4, 4, seed=3)
    g1 = find_conjugate(f, mode="seeded", seed=1).g
    g2 = find_conjugate(f, mode="seeded", seed=2).g
    diff = {v: g1.values[v] - g2.values[v] for v in g1.values}
    assert max(diff.values()) - min(diff.values()) > 1e-6


def test_three_valent_iff_constant_norm():
    # constant gradient norm on the 3-valent tree: conjugate exists
    for seed in range(4):
        f = constant_norm_harmonic(3, 4, seed=seed)
        res = find_conjugate(f)
        assert res.kind == "found"
        assert is_holomorphic(combine(f, res.g)).verdict
    # non-constant norm: the two-point projection sets mismatch somewhere
    failures = 0
    for seed in range(6):
        f = random_harmonic_tree(3, 4, seed=seed)
        norms = [np.linalg.norm(f.gradient(v)[1]) for v in f.interior]
        if max(norms) - min(norms) < 1e-9:
            continue
        res = find_conjugate(f)
        assert res.kind == "sweep-failed"
        failures += 1
    assert failures >= 4


def test_find_conjugate_rejects_non_harmonic():
    g = trees.tree_ball(4, 2)
    f = RealVertexFunction(g, {v: float(i) for i, v in enumerate(g.vertices)})
    with pytest.raises(InputFormatError):
        find_conjugate(f)


def test_no_conjugate_instance_certified():
    f = no_conjugate_instance()
    assert is_harmonic(f.as_complex()).verdict
    norms = {v: np.linalg.norm(f.gradient(v)[1]) for v in f.interior}
    assert norms["T"] == pytest.approx(math.sqrt(2))
    cert = forced_propagation_infeasibility(f)
    assert cert is not None
    assert cert.vertex == "T"
    assert cert.required_norm == pytest.approx(math.sqrt(2))
    assert cert.available_norm < 1e-6
    # the greedy sweep fails on it too
    assert find_conjugate(f).kind == "sweep-failed"


def test_forced_propagation_never_false_positive():
    for seed in range(8):
        f = constant_norm_harmonic(4, 3, seed=seed)
        assert forced_propagation_infeasibility(f) is None
    g = trees.tree_ball(4, 2)
    const = RealVertexFunction(g, {v: 1.0 for v in g.vertices})
    assert forced_propagation_infeasibility(const) is None


def test_perturbed_instances_still_infeasible():
    f = no_conjugate_instance()
    for seed in range(25):
        p = perturb_harmonic(f, seed, 1e-3)
        assert is_harmonic(p.as_complex()).verdict
        assert max(abs(p.values[v] - f.values[v]) for v in f.values) <= 1e-3
        assert forced_propagation_infeasibility(p) is not None


def test_decay_parameters():
    params = solve_decay_parameters()
    assert 0 < params.r1 < 1 and 0 < params.r2 < 1
    assert max(params.residuals) < 1e-10


def test_bounded_holomorphic_function():
    out = bounded_holomorphic_t4(6, seed=11)
    f = out.function
    rep = is_holomorphic(f)
    assert rep.verdict
    r = out.params.r
    by_depth = {}
    for u, v in f.graph.edges():
        d = min(trees.depth(u), trees.depth(v))
        by_depth[d] = max(by_depth.get(d, 0.0), abs(f.values[u] - f.values[v]))
    for d, m in by_depth.items():
        assert m <= r**d + 1e-12
    assert max(abs(z) for z in f.values.values()) <= out.sup_bound
