"""Vertex-centered balls in homogeneous trees.

Vertex ids are address strings: the root is "T"; children append a digit, so
"T02" is the 2nd child of the 0th child of the root.  The root has `valency`
children and every other vertex has `valency - 1`, so every interior vertex of
the ball has exactly `valency` neighbors.  The outermost sphere is marked as
boundary.
"""

from __future__ import annotations

from .core import Graph

ROOT = "T"


def tree_ball(valency: int, radius: int) -> Graph:
    if valency < 2:
        raise ValueError("valency must be >= 2")
    if radius < 1:
        raise ValueError("radius must be >= 1")
    verts = [ROOT]
    edges = []
    frontier = [ROOT]
    for _ in range(radius):
        new = []
        for v in frontier:
            n_children = valency if v == ROOT else valency - 1
            for c in range(n_children):
                w = v + str(c)
                verts.append(w)
                edges.append((v, w))
                new.append(w)
        frontier = new
    return Graph(verts, edges, boundary=frontier)


def parent(v: str) -> str | None:
    return None if v == ROOT else v[:-1]


def depth(v: str) -> int:
    return len(v) - 1


def spheres(g: Graph):
    """Vertices grouped by distance from the root, innermost first."""
    by_depth: dict[int, list[str]] = {}
    for v in g.vertices:
        by_depth.setdefault(depth(v), []).append(v)
    return [by_depth[d] for d in sorted(by_depth)]
