"""Shared test scaffolding: small graph builders and fitting utilities."""

import numpy as np

from grapholo.core import Graph, VertexFunction


def path_graph(values):
    n = len(values)
    g = Graph(range(n), [(i, i + 1) for i in range(n - 1)])
    return VertexFunction(g, {i: values[i] for i in range(n)})


def star_graph(center_value, leaf_values):
    leaves = list(range(1, len(leaf_values) + 1))
    g = Graph([0] + leaves, [(0, v) for v in leaves])
    vals = {0: center_value}
    vals.update({v: leaf_values[v - 1] for v in leaves})
    return VertexFunction(g, vals)


def k4():
    return Graph("abcd", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")])


def cube_graph():
    verts = list(range(8))
    edges = [(i, i ^ b) for i in verts for b in (1, 2, 4) if i < (i ^ b)]
    return Graph(verts, edges)


def random_connected_graph(rng, n_min=5, n_max=30):
    """Random tree plus a few extra edges; no self loops or duplicates."""
    n = int(rng.integers(n_min, n_max + 1))
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    present = {frozenset(e) for e in edges}
    for _ in range(int(rng.integers(0, n))):
        u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
        if u != v and frozenset((u, v)) not in present:
            present.add(frozenset((u, v)))
            edges.append((u, v))
    return Graph(range(n), edges)


def random_values(rng, graph, scale=1.0):
    vals = {}
    for v in graph.vertices:
        re, im = rng.standard_normal(2) * scale
        vals[v] = complex(re, im)
    return vals


def similarity_fit_error(points, values, conj=False):
    """Max deviation of values from the best a*z+b (or a*conj(z)+b) fit."""
    pts = np.conj(points) if conj else np.asarray(points)
    a_mat = np.column_stack([pts, np.ones_like(pts)])
    coef, *_ = np.linalg.lstsq(a_mat, np.asarray(values), rcond=None)
    return float(np.abs(a_mat @ coef - np.asarray(values)).max())
