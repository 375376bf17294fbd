"""Real harmonic functions on trees and their conjugate parts.

A real g is a conjugate part of a real harmonic f when f + i*g is holomorphic.
At a vertex s of valency n this pins the gradient of g to the set

    C^f_s = { a in R^n : sum(a) = 0, <a, grad f> = 0, |a| = |grad f| },

an (n-3)-sphere when grad f != 0.  Its projection onto the coordinate of one
edge is the segment [-alpha, alpha] with

    alpha = |grad f| * sqrt((n-1)/n - (d_k / |grad f|)**2),

depending only on that edge's own oscillation d_k (for n = 3 the projection
degenerates to the two points +/- alpha).  Because the projection is the same
seen from either endpoint of an edge when |grad f| is constant, a ball-by-ball
sweep from a root never gets stuck: that is the existence argument for
conjugates of constant-gradient-norm harmonic functions, implemented here.

The module also builds the classical counterexample on the 4-valent tree (zero
almost everywhere, two opposite values on two edges) together with a sound
interval-propagation certificate of infeasibility, and the bounded nonconstant
holomorphic function on the 4-valent tree obtained from step ratios r1, r2 < 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import trees
from .core import Graph, Tolerance, VertexFunction, is_harmonic
from .exceptions import InfeasibleStepError, InputFormatError

_EDGE_MARGIN = 0.85  # keep |components| below sqrt(3)/4-ish so sweeps never stall


class RealVertexFunction:
    """Real values on the vertices of a finite tree ball."""

    def __init__(self, graph: Graph, values):
        self.graph = graph
        self.values = {v: float(x) for v, x in values.items()}
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

    def gradient(self, v):
        ns = self.graph.neighbors(v)
        x0 = self.values[v]
        return ns, np.array([self.values[n] - x0 for n in ns])

    def as_complex(self) -> VertexFunction:
        return VertexFunction(self.graph, {v: complex(x) for v, x in self.values.items()})

    def to_json_dict(self):
        d = self.graph.to_json_dict()
        d["values"] = {str(v): self.values[v] for v in self.graph.vertices if v in self.values}
        return d

    @classmethod
    def from_json_dict(cls, d):
        g = Graph.from_json_dict(d)
        try:
            values = {v: float(x) for v, x in d["values"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad values document: {exc}") from exc
        return cls(g, values)


def combine(f: RealVertexFunction, g: RealVertexFunction) -> VertexFunction:
    """The complex function f + i*g."""
    return VertexFunction(
        f.graph, {v: complex(f.values[v], g.values[v]) for v in f.values if v in g.values}
    )


def require_tree(graph: Graph):
    if len(graph.edges()) != len(graph) - 1:
        raise InputFormatError("graph is not a tree")


# --- the sphere constraint and its projection --------------------------------


@dataclass
class SphereConstraint:
    """The constraint set for grad g at one vertex, in stored neighbor order."""

    base: object
    neighbors: tuple
    delta: np.ndarray  # grad f at the vertex
    norm: float = field(init=False)

    def __post_init__(self):
        self.delta = np.asarray(self.delta, dtype=float)
        self.norm = float(np.linalg.norm(self.delta))

    def residuals(self, a):
        a = np.asarray(a, dtype=float)
        return (
            float(abs(a.sum())),
            float(abs(a @ self.delta)),
            float(abs(np.linalg.norm(a) - self.norm)),
        )


def projection_range(delta, k: int, tol: float = 1e-7):
    """Range of the k-th coordinate over the constraint sphere of `delta`.

    Returns ("interval", alpha) for n >= 4 (the segment [-alpha, alpha]) and
    ("points", alpha) for n = 3 (the two points +/- alpha), with

        alpha = |delta| * sqrt(max(0, (n-1)/n - (delta_k/|delta|)**2)).

    Requires sum(delta) = 0 up to tol; alpha is reported in the input's scale.
    """
    delta = np.asarray(delta, dtype=float)
    n = delta.size
    if n < 3:
        raise ValueError("valency must be >= 3")
    norm = float(np.linalg.norm(delta))
    if norm == 0.0:
        raise ValueError("zero gradient has no projection range")
    if abs(delta.sum()) > tol * max(1.0, norm):
        raise ValueError("delta must sum to zero (harmonic gradient)")
    dhat_k = delta[k] / norm
    alpha_sq = (n - 1) / n - dhat_k * dhat_k
    if alpha_sq < 1e-12:  # snap the degenerate case to an exact zero
        alpha_sq = 0.0
    return ("interval" if n >= 4 else "points", norm * math.sqrt(alpha_sq))


def complete_gradient(
    delta,
    fixed=None,
    norm_target=None,
    mode: str = "deterministic",
    rng=None,
    tol: float = 1e-9,
    vertex=None,
):
    """A vector a with sum(a) = 0, <a, delta> = 0, |a| = norm_target and,
    optionally, a fixed coordinate a[k] = a1 given as fixed=(k, a1).

    The solution set is a sphere inside the affine slice; the least-squares
    particular solution is its center (it is orthogonal to the slice's
    directions), so feasibility is exactly norm(center) <= norm_target and the
    returned point is center + radius * direction.  Deterministic mode picks
    the direction by projecting the first usable coordinate axis onto the
    slice directions; seeded mode samples the direction uniformly.
    """
    delta = np.asarray(delta, dtype=float)
    n = delta.size
    rho = float(np.linalg.norm(delta)) if norm_target is None else float(norm_target)
    rows = [np.ones(n), delta]
    rhs = [0.0, 0.0]
    if fixed is not None:
        k, a1 = fixed
        ek = np.zeros(n)
        ek[k] = 1.0
        rows.append(ek)
        rhs.append(float(a1))
    a_mat = np.vstack(rows)
    b = np.array(rhs)
    center, *_ = np.linalg.lstsq(a_mat, b, rcond=None)
    if np.linalg.norm(a_mat @ center - b) > tol * max(1.0, abs(b).max()):
        raise InfeasibleStepError(
            "linear constraints are inconsistent", vertex=vertex, a1=rhs[-1] if fixed else None
        )
    _, svals, vt = np.linalg.svd(a_mat)
    rank = int((svals > 1e-12 * max(svals[0], 1.0)).sum())
    nullspace = vt[rank:]

    rad2 = rho * rho - float(center @ center)
    slack = tol * max(1.0, rho * rho)
    if rad2 < -slack:
        alpha = None
        if fixed is not None and np.linalg.norm(delta) > 0:
            alpha = projection_range(delta, fixed[0])[1]
        raise InfeasibleStepError(
            "no completion: fixed component exceeds the projection bound",
            alpha=alpha,
            a1=fixed[1] if fixed else None,
            vertex=vertex,
        )
    rad = math.sqrt(max(rad2, 0.0))
    if nullspace.shape[0] == 0 or rad == 0.0:
        return center
    if mode == "seeded":
        if rng is None:
            rng = np.random.default_rng(0)
        coords = rng.standard_normal(nullspace.shape[0])
    else:
        coords = None
        for axis in range(n):
            c = nullspace[:, axis]
            if np.linalg.norm(c) > 1e-8:
                coords = c
                break
        if coords is None:
            return center
    direction = nullspace.T @ coords
    direction /= np.linalg.norm(direction)
    return center + rad * direction


def conjugate_step(
    f: RealVertexFunction,
    s,
    a1: float,
    toward=None,
    mode: str = "deterministic",
    rng=None,
    tol: float = 1e-9,
):
    """Complete grad g at s given its already-determined component a1 along the
    edge to `toward` (default: the first stored neighbor).  Returns the full
    gradient vector in stored neighbor order."""
    ns, delta = f.gradient(s)
    if toward is None:
        toward = ns[0]
    k = ns.index(toward)
    rho = float(np.linalg.norm(delta))
    if rho == 0.0:
        if abs(a1) > tol:
            raise InfeasibleStepError(
                "zero gradient forces a zero completion", alpha=0.0, a1=a1, vertex=s
            )
        return np.zeros(len(ns))
    return complete_gradient(delta, fixed=(k, a1), norm_target=rho, mode=mode, rng=rng, vertex=s)


# --- the sweep ----------------------------------------------------------------


@dataclass
class ConjugateResult:
    kind: str  # "found" | "sweep-failed"
    g: RealVertexFunction | None = None
    vertex: object = None
    alpha: float | None = None
    a1: float | None = None

    def to_json_dict(self):
        if self.kind == "found":
            return {"kind": "found", "g": self.g.to_json_dict()}
        return {
            "kind": "sweep-failed",
            "vertex": None if self.vertex is None else str(self.vertex),
            "alpha": self.alpha,
            "a1": self.a1,
        }


def find_conjugate(
    f: RealVertexFunction,
    mode: str = "deterministic",
    seed=None,
    root=None,
    tol: Tolerance = Tolerance(),
) -> ConjugateResult:
    """Ball-by-ball sweep for a conjugate part of a harmonic f on a tree ball.

    g(root) = 0; at each vertex the component of grad g along the edge back to
    the root is already determined and the rest is completed on the constraint
    sphere.  When the gradient norm of f is constant the projection bounds
    match edge by edge and the sweep cannot get stuck, so a failure is then a
    certificate of nonexistence; otherwise a failure only means this greedy
    sweep failed (see forced_propagation_infeasibility for genuine
    certificates in that case).
    """
    require_tree(f.graph)
    if not is_harmonic(f.as_complex(), tol).verdict:
        raise InputFormatError("input function is not harmonic")
    if root is None:
        root = trees.ROOT if trees.ROOT in f.graph else f.graph.vertices[0]
    rng = np.random.default_rng(seed)

    parent = {root: None}
    order = [root]
    for v in order:
        for n in f.graph.neighbors(v):
            if n not in parent:
                parent[n] = v
                order.append(n)

    interior = set(f.interior)
    g = {root: 0.0}
    for s in order:
        if s not in interior:
            continue
        ns = f.graph.neighbors(s)
        try:
            if parent[s] is None:
                _, delta = f.gradient(s)
                rho = float(np.linalg.norm(delta))
                a = (
                    np.zeros(len(ns))
                    if rho == 0.0
                    else complete_gradient(delta, None, rho, mode, rng, vertex=s)
                )
            else:
                a1 = g[parent[s]] - g[s]
                a = conjugate_step(f, s, a1, toward=parent[s], mode=mode, rng=rng)
        except InfeasibleStepError as err:
            return ConjugateResult("sweep-failed", None, s, err.alpha, err.a1)
        for n, comp in zip(ns, a):
            if n != parent[s]:
                g[n] = g[s] + float(comp)
    return ConjugateResult("found", RealVertexFunction(f.graph, g))


# --- generators ---------------------------------------------------------------


def constant_norm_harmonic(
    valency: int, radius: int, seed, norm: float = 1.0
) -> RealVertexFunction:
    """A harmonic function on the tree ball whose gradient norm is `norm` at
    every interior vertex.  Components are kept away from the projection
    bound so the function extends (and admits conjugates) without sticking."""
    if valency < 3:
        raise ValueError("valency must be >= 3")
    rng = np.random.default_rng(seed)
    g = trees.tree_ball(valency, radius)
    cap = _EDGE_MARGIN * norm
    values = {trees.ROOT: 0.0}
    order = [trees.ROOT]
    parent = {trees.ROOT: None}
    for v in order:
        for n in g.neighbors(v):
            if n not in parent:
                parent[n] = v
                order.append(n)
    for s in order:
        if s in g.boundary:
            continue
        ns = g.neighbors(s)
        if parent[s] is None:
            a = _sum_zero_sphere_point(valency, norm, rng, cap)
        else:
            a1 = values[parent[s]] - values[s]
            a = _harmonic_completion(valency, norm, a1, ns.index(parent[s]), rng, cap)
        for n, comp in zip(ns, a):
            if n != parent[s]:
                values[n] = values[s] + float(comp)
    return RealVertexFunction(g, values)


def _sum_zero_sphere_point(n, norm, rng, cap):
    for _ in range(500):
        a = rng.standard_normal(n)
        a -= a.mean()
        a *= norm / np.linalg.norm(a)
        if np.max(np.abs(a)) <= cap:
            return a
    raise RuntimeError("could not sample a sum-zero point within the margin")


def _harmonic_completion(n, norm, a1, k, rng, cap):
    """Point of {sum = 0, |a| = norm, a_k = a1}, sampled within the margin."""
    rest = n - 1
    target_sum = -a1
    target_sq = norm * norm - a1 * a1
    if target_sq < 0:
        raise InfeasibleStepError("component exceeds the gradient norm", a1=a1)
    # center of the slice circle/sphere and its radius
    center = np.full(rest, target_sum / rest)
    rad2 = target_sq - target_sum * target_sum / rest
    if rad2 < -1e-12:
        raise InfeasibleStepError("no harmonic completion", a1=a1)
    rad = math.sqrt(max(rad2, 0.0))
    for _ in range(500):
        d = rng.standard_normal(rest)
        d -= d.mean()
        nd = np.linalg.norm(d)
        if nd < 1e-12:
            continue
        b = center + rad * d / nd
        a = np.empty(n)
        a[:k] = b[:k]
        a[k] = a1
        a[k + 1 :] = b[k:]
        if np.max(np.abs(a)) <= cap:
            return a
    return a


def random_harmonic_tree(valency: int, radius: int, seed, scale: float = 1.0) -> RealVertexFunction:
    """A harmonic function with no norm constraint: child oscillations are
    random subject only to the zero-sum condition.  Generic instances have a
    nonconstant gradient norm."""
    rng = np.random.default_rng(seed)
    g = trees.tree_ball(valency, radius)
    values = {trees.ROOT: 0.0}
    order = [trees.ROOT]
    parent = {trees.ROOT: None}
    for v in order:
        for n in g.neighbors(v):
            if n not in parent:
                parent[n] = v
                order.append(n)
    for s in order:
        if s in g.boundary:
            continue
        ns = g.neighbors(s)
        children = [n for n in ns if n != parent[s]]
        incoming = 0.0 if parent[s] is None else values[parent[s]] - values[s]
        oscs = rng.standard_normal(len(children)) * scale
        oscs -= (oscs.sum() + incoming) / len(children)
        for n, d in zip(children, oscs):
            values[n] = values[s] + float(d)
    return RealVertexFunction(g, values)


def no_conjugate_instance() -> RealVertexFunction:
    """Harmonic function on the 4-valent radius-2 ball with no conjugate part.

    Zero on the root, on two of its children and on their subtrees; the other
    two children carry the values 1 and -1, harmonically spread onto their
    own children.  The zero gradients force any candidate conjugate to be
    locally constant around the zero part, which contradicts the norm
    condition at the root."""
    g = trees.tree_ball(4, 2)
    values = {v: 0.0 for v in g.vertices}
    values["T2"] = 1.0
    values["T3"] = -1.0
    for c in range(3):
        values[f"T2{c}"] = 4.0 / 3.0
        values[f"T3{c}"] = -4.0 / 3.0
    return RealVertexFunction(g, values)


def perturb_harmonic(f: RealVertexFunction, seed, sup: float) -> RealVertexFunction:
    """f plus a random harmonic function of sup norm at most `sup` (harmonicity
    at interior vertices is preserved exactly up to rounding)."""
    rng = np.random.default_rng(seed)
    g = f.graph
    values = {v: 0.0 for v in g.vertices}
    root = trees.ROOT if trees.ROOT in g else g.vertices[0]
    parent = {root: None}
    order = [root]
    for v in order:
        for n in g.neighbors(v):
            if n not in parent:
                parent[n] = v
                order.append(n)
    values[root] = rng.uniform(-1, 1)
    interior = set(f.interior)
    for s in order:
        if s not in interior:
            continue
        ns = g.neighbors(s)
        children = [n for n in ns if n != parent[s]]
        incoming = 0.0 if parent[s] is None else values[parent[s]] - values[s]
        oscs = rng.uniform(-1, 1, len(children))
        oscs -= (oscs.sum() + incoming) / len(children)
        for n, d in zip(children, oscs):
            values[n] = values[s] + float(d)
    top = max(abs(x) for x in values.values())
    if top > 0:
        factor = sup / top * rng.uniform(0.3, 1.0)
        values = {v: x * factor for v, x in values.items()}
    return RealVertexFunction(g, {v: f.values[v] + values[v] for v in f.values})


# --- forced propagation: sound infeasibility certificates ----------------------


@dataclass
class InfeasibilityCertificate:
    vertex: object
    required_norm: float
    available_norm: float
    detail: str

    def to_json_dict(self):
        return {
            "kind": "infeasible",
            "vertex": str(self.vertex),
            "required_norm": self.required_norm,
            "available_norm": self.available_norm,
            "detail": self.detail,
        }


def forced_propagation_infeasibility(
    f: RealVertexFunction, slack: float = 1e-9
) -> InfeasibilityCertificate | None:
    """Try to certify that no conjugate part exists, by propagating upper
    bounds on |g(u) - g(v)| per edge and checking each vertex's norm demand.

    Every bound is valid for any true conjugate: a vertex with gradient norm
    rho caps each of its edge components at rho * sqrt((n-1)/n - dhat_k**2)
    (the projection lemma), zero-gradient vertices cap everything at 0, and
    the linear constraints cap a component by its complementary sums.  If at
    some vertex the capped components cannot reach the required norm, no
    conjugate exists: the check is sound, never certifying a function that
    has one.  Returns None when inconclusive.
    """
    require_tree(f.graph)
    interior = list(f.interior)
    info = {}
    for s in interior:
        ns, delta = f.gradient(s)
        rho = float(np.linalg.norm(delta))
        dhat = delta / rho if rho > 0 else delta
        info[s] = (ns, dhat, rho)

    bound = {}

    def edge(u, v):
        return (u, v) if str(u) <= str(v) else (v, u)

    for s in interior:
        ns, dhat, rho = info[s]
        n = len(ns)
        for k, nb in enumerate(ns):
            cap = rho * math.sqrt(max(0.0, (n - 1) / n - dhat[k] ** 2)) if rho > 0 else 0.0
            key = edge(s, nb)
            bound[key] = min(bound.get(key, math.inf), cap)

    for _ in range(100):
        changed = False
        for s in interior:
            ns, dhat, rho = info[s]
            bs = [bound.get(edge(s, nb), math.inf) for nb in ns]
            for k in range(len(ns)):
                others = bs[:k] + bs[k + 1 :]
                cap = sum(others) if all(math.isfinite(x) for x in others) else math.inf
                if abs(dhat[k]) > 1e-9:
                    dots = sum(
                        abs(dhat[m]) * bs[m] for m in range(len(ns)) if m != k
                    )
                    if math.isfinite(dots):
                        cap = min(cap, dots / abs(dhat[k]))
                key = edge(s, ns[k])
                if cap < bound[key] - 1e-15 * max(1.0, bound[key] if math.isfinite(bound[key]) else 1.0):
                    bound[key] = cap
                    bs[k] = cap
                    changed = True
        if not changed:
            break

    for s in interior:
        ns, dhat, rho = info[s]
        bs = [bound.get(edge(s, nb), math.inf) for nb in ns]
        if not all(math.isfinite(x) for x in bs):
            continue
        total = sum(x * x for x in bs)
        margin = slack * max(1.0, rho * rho)
        if total < rho * rho - margin:
            return InfeasibilityCertificate(
                s, rho, math.sqrt(total), "edge bounds cannot reach the required gradient norm"
            )
        for k in range(len(ns)):
            lower = rho * rho - (total - bs[k] * bs[k])
            if lower > bs[k] * bs[k] + margin:
                return InfeasibilityCertificate(
                    s,
                    rho,
                    math.sqrt(total),
                    "one component is forced above its projection bound",
                )
    return None


# --- bounded holomorphic functions on the 4-valent tree ------------------------


@dataclass
class DecayParameters:
    r1: float
    r2: float
    theta: float
    residuals: tuple

    @property
    def r(self):
        return max(self.r1, self.r2)


def solve_decay_parameters(target: float = 0.93) -> DecayParameters:
    """Continuation from (r1, r2, theta) = (1, 1, pi/2) along decreasing theta,
    Newton-solving  2 r1 cos(theta) + r2 = 1,  2 r1^2 cos(2 theta) + r2^2 = -1
    at each step, until both ratios drop below `target`."""
    r1, r2 = 1.0, 1.0
    sol = None
    for c in np.linspace(0.0, 0.4, 81):
        theta = math.acos(c)
        for _ in range(50):
            g1 = 2 * r1 * c + r2 - 1.0
            g2 = 2 * r1 * r1 * math.cos(2 * theta) + r2 * r2 + 1.0
            if abs(g1) < 1e-14 and abs(g2) < 1e-14:
                break
            jac = np.array([[2 * c, 1.0], [4 * r1 * math.cos(2 * theta), 2 * r2]])
            step = np.linalg.solve(jac, np.array([g1, g2]))
            r1, r2 = r1 - step[0], r2 - step[1]
        if 0 < r1 <= target and 0 < r2 <= target:
            sol = (r1, r2, theta)
            break
    if sol is None:
        raise InfeasibleStepError("continuation found no contracting solution")
    r1, r2, theta = sol
    res = (
        abs(2 * r1 * math.cos(theta) + r2 - 1.0),
        abs(2 * r1 * r1 * math.cos(2 * theta) + r2 * r2 + 1.0),
    )
    return DecayParameters(r1, r2, theta, res)


@dataclass
class BoundedHolomorphic:
    function: VertexFunction
    params: DecayParameters

    @property
    def sup_bound(self):
        """|phi(root)| + |root oscillation| / (1 - r)."""
        return 1.0 / (1.0 - self.params.r)


def bounded_holomorphic_t4(radius: int, seed=None) -> BoundedHolomorphic:
    """Nonconstant holomorphic function on the 4-valent tree ball whose edge
    oscillations decay like r**depth, hence bounded on the infinite tree.

    At each vertex the incoming oscillation d is answered by the outgoing ones
    d rotated to (-r1 e^{i theta}, -r1 e^{-i theta}, -r2) (times -d), which
    kills both power sums by the construction of (r1, r2, theta)."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    params = solve_decay_parameters()
    r1, r2, theta = params.r1, params.r2, params.theta
    rng = np.random.default_rng(seed)
    w0 = cmath.exp(2j * math.pi * rng.uniform()) if seed is not None else 1.0 + 0j
    ratios = (r1 * cmath.exp(1j * theta), r1 * cmath.exp(-1j * theta), r2)

    g = trees.tree_ball(4, radius)
    values = {trees.ROOT: 0j}
    # root: one edge plays the incoming role with oscillation w0
    first, *rest_children = g.neighbors(trees.ROOT)
    values[first] = w0
    stack = [(first, -w0)]
    for child, ratio in zip(rest_children, ratios):
        osc = -w0 * ratio
        values[child] = osc
        stack.append((child, -osc))
    while stack:
        v, incoming = stack.pop()
        if v in g.boundary:
            continue
        lam = -incoming
        children = [n for n in g.neighbors(v) if n not in values]
        for child, ratio in zip(children, ratios):
            osc = lam * ratio
            values[child] = values[v] + osc
            stack.append((child, -osc))
    return BoundedHolomorphic(VertexFunction(g, values), params)
