"""Finite graphs, vertex functions, and the harmonicity / holomorphy checkers.

The Laplacian used throughout is the mean-value one,

    lap(f)(x) = (1/valency(x)) * sum(f(y) for y ~ x) - f(x),

and a function is holomorphic when both it and its square are harmonic.
Equivalently, at every checked vertex the oscillations d_i = f(y_i) - f(x)
satisfy sum(d_i) = sum(d_i**2) = 0.

Residuals reported by the checkers are Laplacian-normalized, i.e. the mean of
the relevant power of the oscillations; a tolerance accepts a residual r at a
vertex when r <= eps_abs + eps_rel * scale, with scale the size of the values
involved near that vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exceptions import InputFormatError, MissingDataError


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-9
    eps_rel: float = 1e-9

    def __post_init__(self):
        if self.eps_abs <= 0 or self.eps_rel <= 0:
            raise ValueError("tolerances must be strictly positive")

    def bound(self, scale: float) -> float:
        return self.eps_abs + self.eps_rel * scale


class Graph:
    """Undirected finite graph with opaque hashable vertex ids.

    Neighbor order is stored (it fixes the coordinate order of oscillation
    vectors) but carries no meaning: every predicate in this package is
    invariant under permuting it.  `boundary` marks vertices exempt from
    local checks, e.g. the outer ring of a ball cut out of an infinite graph.
    """

    def __init__(self, vertices, edges, boundary=()):
        self._vertices = tuple(vertices)
        vertex_set = set(self._vertices)
        if len(vertex_set) != len(self._vertices):
            raise InputFormatError("duplicate vertex ids")
        adj = {v: [] for v in self._vertices}
        seen = set()
        for u, v in edges:
            if u == v:
                raise InputFormatError(f"self-loop at {u!r}")
            if u not in vertex_set or v not in vertex_set:
                raise InputFormatError(f"edge ({u!r}, {v!r}) uses unknown vertex")
            key = frozenset((u, v))
            if key in seen:
                raise InputFormatError(f"duplicate edge ({u!r}, {v!r})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(ns) for v, ns in adj.items()}
        self.boundary = frozenset(boundary)
        if not self.boundary <= vertex_set:
            raise InputFormatError("boundary contains unknown vertices")
        self._check_connected()

    def _check_connected(self):
        if not self._vertices:
            raise InputFormatError("empty graph")
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        while stack:
            for n in self._adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        if len(seen) != len(self._vertices):
            raise InputFormatError("graph is not connected")

    @property
    def vertices(self):
        return self._vertices

    def neighbors(self, v):
        return self._adj[v]

    def valency(self, v) -> int:
        return len(self._adj[v])

    def edges(self):
        out = []
        seen = set()
        for v in self._vertices:
            for n in self._adj[v]:
                key = frozenset((v, n))
                if key not in seen:
                    seen.add(key)
                    out.append((v, n))
        return out

    def __contains__(self, v):
        return v in self._adj

    def __len__(self):
        return len(self._vertices)

    def to_json_dict(self):
        d = {
            "vertices": [str(v) for v in self._vertices],
            "edges": [[str(u), str(v)] for u, v in self.edges()],
        }
        if self.boundary:
            d["boundary"] = sorted(str(v) for v in self.boundary)
        return d

    @classmethod
    def from_json_dict(cls, d):
        try:
            return cls(d["vertices"], d["edges"], d.get("boundary", ()))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad graph document: {exc}") from exc


class VertexFunction:
    """Complex values attached to (some) vertices of a graph.

    Values may be partial; the interior is the set of valued, non-boundary
    vertices whose neighbors all carry values.  Valency-1 vertices are
    extremal (tripod arms, the cut leaves of a ball) and are never checked.
    Checkers only look at the interior and report everything else as
    unchecked.
    """

    def __init__(self, graph: Graph, values):
        self.graph = graph
        self.values = {v: complex(z) for v, z in values.items()}
        for v in self.values:
            if v not in graph:
                raise InputFormatError(f"value on unknown vertex {v!r}")
        self._interior = None

    @property
    def interior(self):
        if self._interior is None:
            self._interior = tuple(
                v
                for v in self.graph.vertices
                if v in self.values
                and v not in self.graph.boundary
                and self.graph.valency(v) >= 2
                and all(n in self.values for n in self.graph.neighbors(v))
            )
        return self._interior

    def __getitem__(self, v):
        return self.values[v]

    def local_scale(self, v) -> float:
        s = abs(self.values[v])
        for n in self.graph.neighbors(v):
            s = max(s, abs(self.values[n]))
        return s

    def to_json_dict(self):
        d = self.graph.to_json_dict()
        d["values"] = {
            str(v): [self.values[v].real, self.values[v].imag]
            for v in self.graph.vertices
            if v in self.values
        }
        return d

    @classmethod
    def from_json_dict(cls, d):
        g = Graph.from_json_dict(d)
        try:
            raw = d["values"]
            values = {}
            for v, z in raw.items():
                if isinstance(z, (int, float)):
                    values[v] = complex(z)
                else:
                    re, im = z
                    values[v] = complex(re, im)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad values document: {exc}") from exc
        return cls(g, values)


@dataclass(frozen=True)
class OscillationVector:
    """Oscillations d_i = f(y_i) - f(x) along the edges at x, in stored neighbor order.

    The order is an artifact convention only; use the entries as a multiset.
    """

    base: object
    neighbors: tuple
    entries: tuple

    @property
    def norm(self) -> float:
        return sum(abs(d) ** 2 for d in self.entries) ** 0.5


@dataclass
class CheckReport:
    verdict: bool
    max_residual: float
    at_vertex: object
    unchecked: tuple = ()
    extras: dict = field(default_factory=dict)

    def to_json_dict(self):
        d = {
            "verdict": self.verdict,
            "max_residual": self.max_residual,
            "at_vertex": None if self.at_vertex is None else str(self.at_vertex),
        }
        d.update(self.extras)
        return d


def _require_interior(f: VertexFunction, v):
    if v not in f.values:
        raise MissingDataError(f"no value at vertex {v!r}")
    for n in f.graph.neighbors(v):
        if n not in f.values:
            raise MissingDataError(f"vertex {v!r} is not interior: neighbor {n!r} has no value")


def laplacian(f: VertexFunction, v) -> complex:
    """Mean of neighbor values minus the value at v."""
    _require_interior(f, v)
    ns = f.graph.neighbors(v)
    return sum(f.values[n] for n in ns) / len(ns) - f.values[v]


def oscillation(f: VertexFunction, v) -> OscillationVector:
    _require_interior(f, v)
    ns = f.graph.neighbors(v)
    z0 = f.values[v]
    return OscillationVector(v, tuple(ns), tuple(f.values[n] - z0 for n in ns))


def power_mean(f: VertexFunction, v, p: int) -> complex:
    """(1/valency) * sum of p-th powers of the oscillations at v."""
    _require_interior(f, v)
    ns = f.graph.neighbors(v)
    z0 = f.values[v]
    return sum((f.values[n] - z0) ** p for n in ns) / len(ns)


def gradient_inner(f: VertexFunction, g: VertexFunction, v) -> complex:
    """(1/valency) * sum d_i(f) * d_i(g), the graph gradient pairing at v."""
    if f.graph is not g.graph and f.graph.vertices != g.graph.vertices:
        raise MissingDataError("functions live on different graphs")
    _require_interior(f, v)
    _require_interior(g, v)
    ns = f.graph.neighbors(v)
    zf, zg = f.values[v], g.values[v]
    return sum((f.values[n] - zf) * (g.values[n] - zg) for n in ns) / len(ns)


def _unchecked(f: VertexFunction):
    interior = set(f.interior)
    return tuple(v for v in f.graph.vertices if v not in interior)


def is_harmonic(f: VertexFunction, tol: Tolerance = Tolerance()) -> CheckReport:
    """True when the mean oscillation vanishes at every interior vertex."""
    if not f.interior:
        raise MissingDataError("function has empty interior")
    worst, worst_v, ok = -1.0, None, True
    for v in f.interior:
        r = abs(laplacian(f, v))
        if r > tol.bound(f.local_scale(v)):
            ok = False
        if r > worst:
            worst, worst_v = r, v
    return CheckReport(ok, worst, worst_v, _unchecked(f))


def is_holomorphic(f: VertexFunction, tol: Tolerance = Tolerance()) -> CheckReport:
    """True when mean oscillation and mean quadratic oscillation both vanish.

    The report also carries, in extras["square_identity_residual"], the worst
    gap between lap(f**2) computed directly and the mean quadratic oscillation
    over vertices where f is harmonic; the two agree whenever sum(d_i) = 0.
    """
    if not f.interior:
        raise MissingDataError("function has empty interior")
    f2 = VertexFunction(f.graph, {v: z * z for v, z in f.values.items()})
    worst, worst_v, ok = -1.0, None, True
    sq_worst = 0.0
    for v in f.interior:
        s = f.local_scale(v)
        r1 = abs(power_mean(f, v, 1))
        r2 = abs(power_mean(f, v, 2))
        if r1 > tol.bound(s) or r2 > tol.bound(s * s):
            ok = False
        r = max(r1, r2)
        if r > worst:
            worst, worst_v = r, v
        if r1 <= tol.bound(s):
            sq_worst = max(sq_worst, abs(laplacian(f2, v) - power_mean(f, v, 2)))
    return CheckReport(
        ok, worst, worst_v, _unchecked(f), {"square_identity_residual": sq_worst}
    )


def is_n_holomorphic(f: VertexFunction, n: int, tol: Tolerance = Tolerance()) -> CheckReport:
    """True when lap(f**p) = 0 for all p = 1..n at every interior vertex.

    Implemented through the Laplacian of the actual powers, not through
    oscillation power sums (those agree only once the lower sums vanish).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not f.interior:
        raise MissingDataError("function has empty interior")
    powers = [f]
    for p in range(2, n + 1):
        powers.append(VertexFunction(f.graph, {v: z**p for v, z in f.values.items()}))
    worst, worst_v, ok = -1.0, None, True
    for v in f.interior:
        s = f.local_scale(v)
        for p in range(1, n + 1):
            r = abs(laplacian(powers[p - 1], v))
            if r > tol.bound(max(s, 1.0) ** p):
                ok = False
            if r > worst:
                worst, worst_v = r, v
    return CheckReport(ok, worst, worst_v, _unchecked(f))


def grid_patch(half_width: int) -> Graph:
    """Square-lattice patch on [-k, k]^2 with the outer ring marked as boundary.

    Vertex ids are (x, y) integer pairs; the embedding x + i*y is the one used
    by the z**k examples.
    """
    k = half_width
    verts = [(x, y) for x in range(-k, k + 1) for y in range(-k, k + 1)]
    edges = []
    for x, y in verts:
        if x < k:
            edges.append(((x, y), (x + 1, y)))
        if y < k:
            edges.append(((x, y), (x, y + 1)))
    boundary = [(x, y) for x, y in verts if abs(x) == k or abs(y) == k]
    return Graph(verts, edges, boundary)


def grid_function(graph: Graph, fn) -> VertexFunction:
    """Apply fn(z) to the embedding z = x + i*y of a grid_patch graph."""
    return VertexFunction(graph, {v: fn(complex(v[0], v[1])) for v in graph.vertices})


def load_function(path) -> VertexFunction:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("top-level JSON must be an object")
    return VertexFunction.from_json_dict(doc)
