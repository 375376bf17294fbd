"""The triangle graph: valency-4 vertices, 3-cycles, and its two-valued dynamics.

The graph is a countable family of triangles, each glued to exactly one other
triangle at each of its vertices; equivalently it is the edge-adjacency graph
of the 3-valent tree.  A holomorphic function is determined by its values on
one triangle up to a binary branch switch per further triangle: if a triangle
carries the marked state (p, e, f) = (value at the gluing vertex, oscillations
to its two other vertices), the two new values across the gluing vertex are
p + u and p + v where {u, v} solve

    e + f + u + v = 0,    e**2 + f**2 + u**2 + v**2 = 0.

The branch step in (p, e, f) coordinates, with discriminant
D = -3*(e**2 + f**2) - 2*e*f and s a square root of D, is

    M_1,2(p, e, f) = ((2p + (e+f) -/+ s) / 2, ((e+f) -/+ s) / 2, -/+ s),

the graph of which is the quadric cut out by

    e + f - y + (-y + z) = 0
    e**2 + f**2 + y**2 + (-y + z)**2 = 0
    x - (p + y) = 0.

The two branches coalesce exactly on the two lines spanned by
(1 - i*sqrt(2), 1 + i*sqrt(2)) and its swap; circling one of them in the
space of conformal classes [e : f] swaps the branches (the root pair is a
non-orientable double cover there).

Triangle codes: the central triangle has vertices "1", "2", "3"; every other
triangle is a word over {a, b} prepended to a direction digit.  The triangle
with code c is glued to its parent at vertex c and its two free vertices are
"a"+c and "b"+c, where its own children attach.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core import Graph, VertexFunction
from .exceptions import MissingDataError, NumericalFailureError, SizeCapError
from .moments import solve_pair2


@dataclass(frozen=True)
class MarkedTriangle:
    """Base value at the marked vertex plus the two oscillations from it.

    Degenerate triangles (e = 0, f = 0 or e = f) are allowed."""

    p: complex
    e: complex
    f: complex

    def to_json_dict(self):
        return {
            "p": [complex(self.p).real, complex(self.p).imag],
            "e": [complex(self.e).real, complex(self.e).imag],
            "f": [complex(self.f).real, complex(self.f).imag],
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(*(complex(d[k][0], d[k][1]) for k in ("p", "e", "f")))


@dataclass(frozen=True)
class CorrespondencePoint:
    p: complex
    e: complex
    f: complex
    x: complex
    y: complex
    z: complex


def discriminant(e: complex, f: complex) -> complex:
    return -3.0 * (e * e + f * f) - 2.0 * e * f


def step_m(t: MarkedTriangle, branch: int) -> MarkedTriangle:
    """One branch of the triangle-to-triangle step in (p, e, f) coordinates.

    Branch 1 takes the principal square root s of the discriminant, branch 2
    its negative.  The output satisfies the correspondence equations exactly;
    the oscillation pair of the output recombines with solve_pair2.
    """
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    s = cmath.sqrt(discriminant(t.e, t.f))
    if branch == 2:
        s = -s
    b = t.e + t.f
    return MarkedTriangle((2.0 * t.p + b - s) / 2.0, (b - s) / 2.0, -s)


def branch_roots(e: complex, f: complex):
    """(u1, u2): the pair solution ordered by the step_m branch convention.

    Branch k of step_m corresponds to the new value p + u_k across the gluing
    vertex: u_k = -(output oscillation e') of branch k."""
    out1 = step_m(MarkedTriangle(0j, e, f), 1)
    out2 = step_m(MarkedTriangle(0j, e, f), 2)
    return -out1.e, -out2.e


def correspondence_residual(pt: CorrespondencePoint):
    """The three defining equations of the correspondence quadric, as stated."""
    r1 = pt.e + pt.f - pt.y + (-pt.y + pt.z)
    r2 = pt.e**2 + pt.f**2 + pt.y**2 + (-pt.y + pt.z) ** 2
    r3 = pt.x - (pt.p + pt.y)
    return (r1, r2, r3)


def graph_point(t: MarkedTriangle, branch: int) -> CorrespondencePoint:
    out = step_m(t, branch)
    return CorrespondencePoint(t.p, t.e, t.f, out.p, out.e, out.f)


def involution_check(e: complex, f: complex, tol: float = 1e-9) -> bool:
    """Applying the pair solution twice returns the original unordered pair."""
    u, v = solve_pair2(e, f)
    e2, f2 = solve_pair2(u, v)
    scale = max(1.0, abs(e), abs(f))
    direct = max(abs(e2 - e), abs(f2 - f))
    swapped = max(abs(e2 - f), abs(f2 - e))
    return min(direct, swapped) <= tol * scale


SINGULAR_GENERATOR = complex(1, -2**0.5), complex(1, 2**0.5)


def singular_locus_distance(e: complex, f: complex) -> float:
    """|D| / (|e|**2 + |f|**2): zero exactly on the branch-coalescence lines."""
    n2 = abs(e) ** 2 + abs(f) ** 2
    if n2 == 0.0:
        raise ValueError("(e, f) must be nonzero")
    return abs(discriminant(e, f)) / n2


def circle_class_loop(center: complex, radius: float, steps: int):
    """Closed discretized loop of classes [t : 1] on a circle in the t-chart."""
    pts = [
        (center + radius * cmath.exp(2j * cmath.pi * k / steps), 1.0 + 0j)
        for k in range(steps)
    ]
    pts.append(pts[0])
    return pts


def branch_monodromy(loop, guard: float = 0.5) -> str:
    """Continue the root pair along a closed loop of classes; returns
    "identity" or "transposition".

    Matching is nearest-root continuation; if a step moves a root by more than
    `guard` times the current root separation the continuation is ambiguous
    and a finer discretization is required.
    """
    loop = list(loop)
    if len(loop) < 3:
        raise ValueError("loop needs at least 3 points")
    e0, f0 = loop[0]
    pair = list(branch_roots(e0, f0))
    start = tuple(pair)
    sep0 = abs(pair[0] - pair[1])
    if sep0 == 0.0:
        raise NumericalFailureError("loop starts on the singular locus")
    for e, f in loop[1:]:
        q = solve_pair2(e, f)
        sep = abs(q[0] - q[1])
        cost_id = max(abs(q[0] - pair[0]), abs(q[1] - pair[1]))
        cost_sw = max(abs(q[1] - pair[0]), abs(q[0] - pair[1]))
        best = min(cost_id, cost_sw)
        if sep == 0.0 or best > guard * sep:
            raise NumericalFailureError(
                "ambiguous root continuation; use more steps on the loop",
                residuals=(best, sep),
            )
        pair = list(q) if cost_id <= cost_sw else [q[1], q[0]]
    if abs(pair[0] - start[0]) <= abs(pair[0] - start[1]):
        return "identity"
    return "transposition"


def projective_step(e: complex, f: complex, branch: int):
    """The induced step on conformal classes [e : f]; returns a representative."""
    out = step_m(MarkedTriangle(0j, e, f), branch)
    return (out.e, out.f)


def _chart(t):
    return (t, 1.0 + 0j)


def projective_fixed_points(
    branch: int, seed=0, n_starts: int = 120, iters: int = 300, tol: float = 1e-10
):
    """Fixed classes of one branch map, found by sampled iteration plus a
    secant polish in the t = e/f chart.  Returns distinct t values.

    The two-valued step has four fixed classes in total; which branch map
    fixes each of them depends on the square-root convention (with the
    principal branch they all land on branch 2)."""

    def step_t(t):
        e2, f2 = projective_step(*_chart(t), branch)
        if f2 == 0:
            return complex("inf")
        return e2 / f2

    def polish(t):
        # secant iteration on g(t) = step(t) - t; works on repelling points too
        a, b = t, t * (1 + 1e-6) + 1e-6
        ga, gb = step_t(a) - a, step_t(b) - b
        for _ in range(80):
            if gb == ga or not cmath.isfinite(gb):
                return None
            c = b - gb * (b - a) / (gb - ga)
            a, ga = b, gb
            b, gb = c, step_t(c) - c
            if abs(gb) <= tol * max(1.0, abs(b)):
                return b
        return None

    def record(t):
        if t is None:
            return
        if abs(step_t(t) - t) <= 1e-9 * max(1.0, abs(t)):
            if not any(abs(t - s) <= 1e-6 * max(1.0, abs(s)) for s in found):
                found.append(t)

    rng = np.random.default_rng(seed)
    found = []
    for _ in range(n_starts):
        start = complex(*rng.standard_normal(2)) * 1.5
        record(polish(start))  # catches repelling fixed points near the start
        t = start
        for _ in range(iters):
            t2 = step_t(t)
            if not cmath.isfinite(t2) or abs(t2) > 1e6:
                break
            if abs(t2 - t) <= 1e-12 * max(1.0, abs(t)):
                break
            t = t2
        record(polish(t))
    return found


# --- the triangle-graph ball ------------------------------------------------

CENTER_VERTICES = ("1", "2", "3")


def triangle_codes(radius: int):
    """Codes of the non-central triangles out to the given depth, ordered.

    A child triangle prepends its letter to the parent's word: the children of
    code c are "a"+c and "b"+c."""
    words, frontier = [""], [""]
    for _ in range(max(radius - 1, 0)):
        frontier = [x + w for w in frontier for x in "ab"]
        words += frontier
    codes = [w + d for d in "123" for w in words] if radius >= 1 else []
    return sorted(codes, key=lambda c: (len(c), c))


@dataclass
class Tr3Ball:
    radius: int
    graph: Graph
    triangles: dict  # code ("" for the central triangle) -> vertex triple


def tr3_ball(radius: int) -> Tr3Ball:
    """Triangles within `radius` gluing steps of the central one.

    Every vertex belongs to exactly two triangles of the full graph; vertices
    whose outer triangle falls outside the ball are the boundary."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    triangles = {"": CENTER_VERTICES}
    for c in triangle_codes(radius):
        triangles[c] = (c, "a" + c, "b" + c)
    verts, edges, seen = [], [], set()
    for tri in triangles.values():
        for v in tri:
            if v not in seen:
                seen.add(v)
                verts.append(v)
        a, b, c = tri
        edges += [(a, b), (a, c), (b, c)]
    boundary = [v for v in verts if len(v) == radius + 1]
    return Tr3Ball(radius, Graph(verts, edges, boundary=boundary), triangles)


def parent_code(code: str) -> str:
    """Code of the triangle glued to this one at its parent vertex."""
    return code[1:] if code[0] in "ab" else ""


def parent_others(code: str):
    """The parent triangle's two non-shared vertices, in the documented order:
    central codes use ascending order, deeper ones (grandparent vertex, sibling)."""
    if len(code) == 1:
        return tuple(v for v in CENTER_VERTICES if v != code)
    t = code[1:]
    sibling = ("b" + t) if code[0] == "a" else ("a" + t)
    return (t, sibling)


class BranchSelector:
    """Per-triangle branch switch: bit 0 gives the a-side free vertex the
    branch-1 root, bit 1 swaps.  Keyed by triangle code."""

    def __init__(self, bits: dict):
        self.bits = dict(bits)

    def __getitem__(self, code: str) -> int:
        try:
            return self.bits[code]
        except KeyError:
            raise MissingDataError(f"no branch entry for triangle {code!r}") from None

    @classmethod
    def canonical(cls, radius: int):
        return cls({c: 0 for c in triangle_codes(radius)})

    @classmethod
    def random(cls, radius: int, seed):
        rng = np.random.default_rng(seed)
        codes = triangle_codes(radius)
        return cls({c: int(b) for c, b in zip(codes, rng.integers(0, 2, len(codes)))})

    @classmethod
    def from_pattern(cls, radius: int, pattern: int):
        codes = triangle_codes(radius)
        return cls({c: (pattern >> i) & 1 for i, c in enumerate(codes)})


def extend_tr3(start: MarkedTriangle, radius: int, selector: BranchSelector) -> VertexFunction:
    """Propagate a holomorphic function outward triangle by triangle.

    The two free vertices of each new triangle receive p + u and p + v where
    p is the value at the gluing vertex and u, v the branch roots there (read
    off the step outputs); every interior valency-4 vertex then has the four
    oscillations (e, f, u, v) with both power sums zero by construction.
    """
    ball = tr3_ball(radius)
    values = {
        "1": complex(start.p),
        "2": complex(start.p) + complex(start.e),
        "3": complex(start.p) + complex(start.f),
    }
    for code in triangle_codes(radius):
        o1, o2 = parent_others(code)
        p = values[code]
        e, f = values[o1] - p, values[o2] - p
        u1, u2 = branch_roots(e, f)
        if selector[code] == 1:
            u1, u2 = u2, u1
        values["a" + code] = p + u1
        values["b" + code] = p + u2
    return VertexFunction(ball.graph, values)


def marked_state(f: VertexFunction, ball: Tr3Ball, code: str) -> MarkedTriangle:
    """Read the marked state of a ball triangle off a vertex function; the
    mark is the gluing vertex toward the center."""
    tri = ball.triangles[code]
    m = tri[0] if code else "1"
    others = [v for v in tri if v != m]
    return MarkedTriangle(
        f.values[m], f.values[others[0]] - f.values[m], f.values[others[1]] - f.values[m]
    )


def ball_image_cloud(
    start: MarkedTriangle,
    radius: int,
    mode: str = "sampled",
    samples: int = 200,
    seed=0,
    cap: int = 1 << 14,
):
    """Vertex values of many extensions, tagged with vertex depth, for rendering."""
    if radius == 0:
        return [(complex(start.p), 0), (complex(start.p + start.e), 0), (complex(start.p + start.f), 0)]
    n_bits = len(triangle_codes(radius))
    points = []

    def collect(selector):
        f = extend_tr3(start, radius, selector)
        for v, z in f.values.items():
            points.append((z, len(v) - 1))

    if mode == "exhaustive":
        total = 1 << n_bits
        if total > cap:
            raise SizeCapError(
                f"exhaustive mode needs {total} extensions (cap {cap})", estimate=total
            )
        for k in range(total):
            collect(BranchSelector.from_pattern(radius, k))
    else:
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            collect(BranchSelector.random(radius, rng.integers(0, 2**63)))
    return points


def sample_equivalent_states(start: MarkedTriangle, radius: int, seed, count: int = 10):
    """Pairs of marked states read off one random extension: such pairs are
    images of two triangles under a single holomorphic function, i.e. related
    by the orbit relation the dynamics generates."""
    rng = np.random.default_rng(seed)
    selector = BranchSelector.random(radius, rng.integers(0, 2**63))
    f = extend_tr3(start, radius, selector)
    ball = tr3_ball(radius)
    codes = [""] + triangle_codes(radius)
    out = []
    for _ in range(count):
        c1, c2 = rng.choice(codes, 2)
        out.append((marked_state(f, ball, str(c1)), marked_state(f, ball, str(c2))))
    return out


def t3_line_graph(radius: int) -> Graph:
    """Edge-adjacency ("dual") graph of the 3-valent tree, matching a
    triangle-graph ball of the same radius; used to cross-check the code
    construction by isomorphism."""
    from . import trees

    tree = trees.tree_ball(3, radius + 1)
    ids = [v for v in tree.vertices if v != trees.ROOT]  # edge <-> its lower endpoint
    edges = []
    for u in ids:
        pu = trees.parent(u)
        for v in ids:
            if v <= u:
                continue
            if trees.parent(v) == pu or trees.parent(v) == u or pu == v:
                edges.append((u, v))
    return Graph(ids, edges)
