"""Hexagonal tilings as exact vertex sets, and the covering checks.

The fundamental hexagon on base alpha with edge w has vertices

    alpha, alpha+w, alpha+w-jw, alpha+w-jw+j2w, alpha+w-jw+j2w-w,
    alpha+w-jw+j2w-w+jw,

i.e. successive edge steps w * (-j)**k.  The full tiling is grown by
reflecting hexagons across their edges; reflecting across the edge (p, q)
is the point reflection v -> p + q - v, which stays inside Q[j].

Vertices are 2-colored by adjacency parity: at a class-0 vertex the three
edge directions are {w, jw, j2w}, at a class-1 vertex their negatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import eisenstein as ei
from .core import Graph
from .exceptions import InputFormatError
from .tree3 import O_LEFT, O_RIGHT


@dataclass
class HexLattice:
    alpha: ei.Eisenstein
    w: ei.Eisenstein
    radius: int
    distance: dict  # vertex -> graph distance from alpha
    klass: dict  # vertex -> 0/1 adjacency parity

    @property
    def vertices(self):
        return self.distance.keys()

    def __contains__(self, z):
        return z in self.distance

    def directions(self, klass: int):
        dirs = (self.w, ei.J * self.w, ei.J2 * self.w)
        return dirs if klass == 0 else tuple(-d for d in dirs)

    def ball(self, rho: int):
        return {v for v, d in self.distance.items() if d <= rho}


def _fundamental_hexagon(alpha, w):
    verts = [alpha]
    step = w
    for _ in range(5):
        verts.append(verts[-1] + step)
        step = ei.MINUS_J * step
    return verts


def build_hex_lattice(alpha, beta, radius: int) -> HexLattice:
    """Vertices of the tiling with base alpha and edge w = beta - alpha, out to
    the given graph distance from alpha.  Exact arithmetic throughout."""
    alpha, beta = ei.as_eisenstein(alpha), ei.as_eisenstein(beta)
    w = beta - alpha
    if not w:
        raise ValueError("degenerate tiling: alpha == beta")
    hexes_seen = set()
    verts = set()
    frontier = [_fundamental_hexagon(alpha, w)]
    hexes_seen.add(frozenset(frontier[0]))
    verts.update(frontier[0])
    # each reflection ring extends the reachable distance by at least one edge
    for _ in range(radius + 1):
        new_frontier = []
        for hexagon in frontier:
            for i in range(6):
                p, q = hexagon[i], hexagon[(i + 1) % 6]
                mirrored = [p + q - v for v in hexagon]
                key = frozenset(mirrored)
                if key not in hexes_seen:
                    hexes_seen.add(key)
                    new_frontier.append(mirrored)
                    verts.update(mirrored)
        frontier = new_frontier

    dirs = (w, ei.J * w, ei.J2 * w, -w, -(ei.J * w), -(ei.J2 * w))
    distance = {alpha: 0}
    klass = {alpha: 0}
    queue = [alpha]
    while queue:
        nxt = []
        for v in queue:
            for d in dirs:
                u = v + d
                if u in verts and u not in distance:
                    distance[u] = distance[v] + 1
                    klass[u] = 1 - klass[v]
                    nxt.append(u)
        queue = nxt
    distance = {v: d for v, d in distance.items() if d <= radius}
    klass = {v: klass[v] for v in distance}
    return HexLattice(alpha, w, radius, distance, klass)


@dataclass
class CoveringReport:
    on_lattice: bool
    locally_surjective: bool
    attained_radius: int
    off_lattice: tuple = ()


def normalize_root_edge(values: dict) -> dict:
    """Apply the unique similarity sending the root-edge values to (0, 1)."""
    a, b = values[O_RIGHT], values[O_LEFT]
    if a == b:
        raise ValueError("constant on the root edge; no normalizing similarity")
    return {v: (z - a) / (b - a) for v, z in values.items()}


def hex_covering_check(f, lattice: HexLattice, graph=None) -> CoveringReport:
    """Verify the covering behavior of an extension with exact values.

    f is a VertexFunction with `exact_values`, or a plain address -> Eisenstein
    map (then pass the ball graph too).  It must already be normalized so that
    (O', O) carry (lattice.alpha, lattice.alpha + lattice.w).

    Checks: (i) every value is a lattice vertex (exact membership);
    (ii) at each interior tree vertex the three oscillations are exactly the
    three tiling edge directions at the image point; (iii) how far the image
    exhausts the lattice: the largest rho with the whole distance-rho ball
    attained.
    """
    if graph is None:
        graph = f.graph
        exact = getattr(f, "exact_values", None)
        if exact is None:
            raise InputFormatError("covering checks need exact (Eisenstein) values")
    else:
        exact = f
    if exact[O_RIGHT] != lattice.alpha or exact[O_LEFT] != lattice.alpha + lattice.w:
        raise InputFormatError(
            "input is not normalized: apply normalize_root_edge so the root edge "
            "maps to (alpha, alpha + w)"
        )

    off = tuple(v for v, z in exact.items() if z not in lattice)
    on_lattice = not off

    locally_surjective = True
    if on_lattice:
        for v in graph.vertices:
            if v in graph.boundary or graph.valency(v) < 3:
                continue
            z = exact[v]
            oscs = {exact[n] - z for n in graph.neighbors(v)}
            if oscs != set(lattice.directions(lattice.klass[z])):
                locally_surjective = False
                break
    else:
        locally_surjective = False

    image = set(exact.values())
    rho = -1
    while True:
        ball = lattice.ball(rho + 1)
        if ball and ball <= image and rho + 1 <= lattice.radius:
            rho += 1
        else:
            break
    return CoveringReport(on_lattice, locally_surjective, rho, off)


def hex_patch_graph(radius: int):
    """Finite patch of the (0, 1) tiling as a Graph, plus its exact embedding.

    Vertices are the lattice points within the given distance of 0; points
    that lost tiling neighbors to the cut are marked as boundary and carry no
    constraint.  Ids are strings; the embedding maps them back to Eisenstein
    points.
    """
    lattice = build_hex_lattice(0, 1, radius)
    pts = sorted(lattice.vertices, key=lambda z: (z.x, z.y))
    ids = {z: f"h{i}" for i, z in enumerate(pts)}
    edges = []
    degree = {z: 0 for z in pts}
    for z in pts:
        for d in lattice.directions(lattice.klass[z]):
            u = z + d
            if u in lattice:
                degree[z] += 1
                if (z.x, z.y) < (u.x, u.y):
                    edges.append((ids[z], ids[u]))
    boundary = [ids[z] for z in pts if degree[z] < 3]
    g = Graph([ids[z] for z in pts], edges, boundary=boundary)
    embedding = {ids[z]: z for z in pts}
    return g, embedding
