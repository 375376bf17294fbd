"""Pair solutions, power-sum systems, and the polynomial root kernel."""

import math

import numpy as np
import pytest

from grapholo.moments import (
    J,
    J2,
    MomentSystem,
    cluster_roots,
    find_roots,
    poly_from_power_sums,
    power_sums,
    solve_pair,
    solve_pair2,
    solve_power_sums,
)


def pair_close(got, expected, tol=1e-9):
    a, b = got
    c, d = expected
    return min(max(abs(a - c), abs(b - d)), max(abs(a - d), abs(b - c))) <= tol


def test_solve_pair_examples():
    u, v = solve_pair(1)
    assert pair_close((u, v), (complex(-0.5, math.sqrt(3) / 2), complex(-0.5, -math.sqrt(3) / 2)))
    assert solve_pair(0) == (0, 0)
    u, v = solve_pair(2j)
    assert pair_close((u, v), (complex(-math.sqrt(3), -1), complex(math.sqrt(3), -1)))
    assert abs(2j + u + v) < 1e-12 and abs((2j) ** 2 + u * u + v * v) < 1e-12


def test_solve_pair_is_cube_root_rotation():
    rng = np.random.default_rng(0)
    for _ in range(200):
        e = complex(*rng.standard_normal(2))
        u, v = solve_pair(e)
        assert pair_close((u, v), (J * e, J2 * e), tol=1e-12 * max(1, abs(e)))


def test_solve_pair2_examples():
    assert pair_close(solve_pair2(1, -1), (1j, -1j))
    assert solve_pair2(0, 0) == (0, 0)
    e, f = complex(1, -math.sqrt(2)), complex(1, math.sqrt(2))
    u, v = solve_pair2(e, f)
    assert abs(u + 1) < 1e-6 and abs(v + 1) < 1e-6  # double root; ill-conditioned
    assert abs(e + f + u + v) < 1e-9
    assert abs(e * e + f * f + u * u + v * v) < 1e-9


def test_solve_pair2_properties():
    rng = np.random.default_rng(1)
    for _ in range(500):
        e, f = (complex(*rng.standard_normal(2)) for _ in range(2))
        u, v = solve_pair2(e, f)
        scale = max(1.0, abs(e), abs(f)) ** 2
        assert abs(e + f + u + v) < 1e-10 * scale
        assert abs(e * e + f * f + u * u + v * v) < 1e-10 * scale
        # symmetry in (e, f)
        assert pair_close(solve_pair2(f, e), (u, v), tol=1e-9 * scale)
        # involution
        assert pair_close(solve_pair2(u, v), (e, f), tol=1e-8 * scale)
        # homogeneity
        lam = complex(*rng.standard_normal(2))
        assert pair_close(solve_pair2(lam * e, lam * f), (lam * u, lam * v), tol=1e-8 * (1 + abs(lam)) * scale)


def test_find_roots_examples():
    assert pair_close(find_roots([1, 0, 1]), (1j, -1j), tol=1e-10)
    roots = sorted(find_roots([1, 0, 0, -1]), key=lambda z: z.imag)
    expect = sorted([1 + 0j, J, J2], key=lambda z: z.imag)
    assert max(abs(a - b) for a, b in zip(roots, expect)) < 1e-10
    # (t - (1+i))^2 (t - 3) expanded
    a = 1 + 1j
    coeffs = [1, -(2 * a + 3), a * a + 6 * a, -3 * a * a]
    roots = find_roots(coeffs)
    clusters = sorted(cluster_roots(roots), key=lambda c: c[1])
    assert [m for _, m in clusters] == [1, 2]
    assert abs(clusters[0][0] - 3) < 1e-6
    assert abs(clusters[1][0] - a) < 1e-6


def test_find_roots_validates():
    with pytest.raises(ValueError):
        find_roots([2, 0, 1])
    with pytest.raises(ValueError):
        find_roots([1])


def test_poly_from_power_sums():
    coeffs = poly_from_power_sums([0, 0, 3])
    assert max(abs(c - e) for c, e in zip(coeffs, [1, 0, 0, -1])) < 1e-12


def test_solve_power_sums_determined():
    out = solve_power_sums(MomentSystem((), 3, 3, raw_targets=(0, 0, 3)))
    assert out.kind == "unique-up-to-permutation"
    got = sorted(out.roots, key=lambda z: z.imag)
    expect = sorted([1 + 0j, J, J2], key=lambda z: z.imag)
    assert max(abs(a - b) for a, b in zip(got, expect)) < 1e-8
    assert max(out.certificate) < 1e-8


def test_solve_power_sums_matches_pair2():
    rng = np.random.default_rng(2)
    for _ in range(100):
        e, f = (complex(*rng.standard_normal(2)) for _ in range(2))
        out = solve_power_sums(MomentSystem((e, f), 2, 2))
        assert out.kind in ("unique-up-to-permutation", "trivial-zero")
        assert pair_close(out.roots, solve_pair2(e, f), tol=1e-6 * max(1, abs(e), abs(f)) ** 2)


def test_solve_power_sums_overdetermined():
    out = solve_power_sums(MomentSystem((1, 0), 1, 2))
    assert out.kind == "infeasible"
    out = solve_power_sums(MomentSystem((0, 0), 2, 3))
    assert out.kind == "trivial-zero"
    assert all(abs(r) < 1e-9 for r in out.roots)


def test_solve_power_sums_underdetermined():
    out = solve_power_sums(MomentSystem((1 + 1j,), 4, 2))
    assert out.kind == "parametrized"
    assert len(out.roots) == 4
    assert max(out.certificate) < 1e-8
    assert out.extras == (0j, 0j)
    seeded = solve_power_sums(MomentSystem((1 + 1j,), 4, 2), mode="random", seed=3)
    assert seeded.kind == "parametrized"
    assert max(seeded.certificate) < 1e-7
    assert any(abs(x) > 1e-3 for x in seeded.extras)


def test_round_trip_recovers_multiset():
    rng = np.random.default_rng(4)
    for trial in range(60):
        m = int(rng.integers(1, 7))
        roots = [complex(*rng.standard_normal(2)) for _ in range(m)]
        sums = power_sums(roots, m)
        out = solve_power_sums(MomentSystem((), m, m, raw_targets=tuple(sums)))
        assert out.kind in ("unique-up-to-permutation", "trivial-zero")
        got = sorted(out.roots, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
        expect = sorted(roots, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
        scale = max(1.0, max(abs(r) for r in roots)) ** m
        assert max(abs(a - b) for a, b in zip(got, expect)) < 1e-5 * scale


def test_moment_system_validation():
    with pytest.raises(ValueError):
        MomentSystem((), 2, 0)
    with pytest.raises(ValueError):
        MomentSystem((), -1, 2)
    with pytest.raises(ValueError):
        MomentSystem((), 2, 2, raw_targets=(1,))
