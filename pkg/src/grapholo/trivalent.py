"""Decision procedure for holomorphic functions on graphs of valency at most 3.

At a 3-valent vertex, once the value and one neighbor value are known, the two
remaining oscillations are forced to {j*e, j2*e} up to a binary switch.  The
search pins one edge to the values (0, 1) -- legitimate because any nonconstant
holomorphic function on a fully 3-valent connected graph has no vanishing
oscillation, so the similarity freedom normalizes any edge to (0, 1) -- and
backtracks over switch patterns, checking consistency around cycles.
Exponential in the number of switches; meant for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Graph, Tolerance, VertexFunction, is_holomorphic
from .exceptions import SizeCapError
from .moments import J, J2


@dataclass
class FeasibilityResult:
    kind: str  # "constant-only" | "witness"
    witness: VertexFunction | None = None
    explored: int = 0


def _constraint_vertices(g: Graph):
    """Vertices carrying the holomorphy constraint: non-boundary with valency
    3 (the switch rule) or 2 (zero oscillation forced: d + e = d**2 + e**2 = 0
    has only d = e = 0).  Valency-1 vertices are extremal."""
    out = set()
    for v in g.vertices:
        d = g.valency(v)
        if d > 3:
            raise ValueError(f"vertex {v!r} has valency {d}; only valency <= 3 is supported")
        if d >= 2 and v not in g.boundary:
            out.add(v)
    return out


def _check_cycle_rank(g: Graph, cap: int):
    rank = len(g.edges()) - (len(g) - 1)
    if rank > cap:
        raise SizeCapError(
            f"cycle rank {rank} above cap {cap}", estimate=2**rank
        )


def _fill_free_component(values, g: Graph):
    """Complete unvalued regions (reachable only through boundary vertices)
    with a locally constant value; constants satisfy every local constraint.
    Each region copies the value of an adjacent valued vertex when one exists."""
    missing = [v for v in g.vertices if v not in values]
    while missing:
        comp, stack = {missing[0]}, [missing[0]]
        fill = 0j
        while stack:
            for n in g.neighbors(stack.pop()):
                if n in values:
                    fill = values[n]
                elif n not in comp:
                    comp.add(n)
                    stack.append(n)
        for v in comp:
            values[v] = fill
        missing = [v for v in missing if v not in comp]
    return values


def _search(g: Graph, pin, tol: Tolerance, find_all: bool, cap: int | None):
    constrained = _constraint_vertices(g)
    u0, v0 = pin
    witnesses = []
    explored = 0

    def close(values, v):
        """Constraint state at a constrained vertex with known value: returns
        ('branch', e, (n1, n2)) | ('force', ...) | 'ok' | 'dead' | 'wait'."""
        ns = g.neighbors(v)
        known = [n for n in ns if n in values]
        if not known:
            return "wait"
        z0 = values[v]
        if len(ns) == 2:
            # zero oscillation is forced through a constrained 2-valent vertex
            scale = max(1.0, abs(z0))
            if any(abs(values[n] - z0) > tol.bound(scale) for n in known):
                return "dead"
            if len(known) == 2:
                return "ok"
            (missing,) = [n for n in ns if n not in values]
            return ("force", missing, z0)
        if len(known) == 3:
            d = [values[n] - z0 for n in ns]
            s1 = d[0] + d[1] + d[2]
            s2 = d[0] ** 2 + d[1] ** 2 + d[2] ** 2
            scale = max(1.0, max(abs(values[n]) for n in ns), abs(z0))
            if abs(s1) <= 3 * tol.bound(scale) and abs(s2) <= 3 * tol.bound(scale * scale):
                return "ok"
            return "dead"
        if len(known) == 2:
            e = values[known[0]] - z0
            f = values[known[1]] - z0
            u = -(e + f)
            scale = max(1.0, abs(z0), abs(e), abs(f))
            if abs(e * e + f * f + u * u) > 3 * tol.bound(scale * scale):
                return "dead"
            (missing,) = [n for n in ns if n not in values]
            return ("force", missing, z0 + u)
        e = values[known[0]] - z0
        n1, n2 = [n for n in ns if n not in values]
        return ("branch", (n1, n2), (z0 + J * e, z0 + J2 * e))

    def assign(values, v, z):
        if v in values:
            scale = max(1.0, abs(z), abs(values[v]))
            return abs(values[v] - z) <= tol.bound(scale)
        values[v] = z
        return True

    def propagate(values):
        """Run all forced assignments/checks; returns (alive, branch or None)."""
        while True:
            progress = False
            pending_branch = None
            for v in g.vertices:
                if v not in values or v not in constrained:
                    continue
                state = close(values, v)
                if state == "dead":
                    return False, None
                if state in ("ok", "wait"):
                    continue
                if state[0] == "force":
                    _, n, z = state
                    if not assign(values, n, z):
                        return False, None
                    progress = True
                elif pending_branch is None:
                    pending_branch = state
            if not progress:
                return True, pending_branch

    def rec(values):
        nonlocal explored
        alive, branch = propagate(values)
        if not alive:
            return False
        if branch is None:
            explored += 1
            full = _fill_free_component(dict(values), g)
            witnesses.append(VertexFunction(g, full))
            return True
        _, (n1, n2), (za, zb) = branch
        for first, second in ((za, zb), (zb, za)):
            trial = dict(values)
            if assign(trial, n1, first) and assign(trial, n2, second):
                if rec(trial) and not find_all:
                    return True
            if cap is not None and explored >= cap:
                break
        return bool(witnesses) and not find_all

    rec({u0: 0j, v0: 1.0 + 0j})
    return witnesses, explored


def trivalent_feasibility(
    g: Graph,
    tol: Tolerance = Tolerance(),
    cycle_rank_cap: int = 16,
    pin=None,
) -> FeasibilityResult:
    """Decide whether g carries a nonconstant holomorphic function.

    Returns a witness VertexFunction when one exists, else the exhaustion flag
    "constant-only".  The witness fixes the pinned edge to the values (0, 1).
    Refuses graphs whose cycle rank exceeds the cap.
    """
    _check_cycle_rank(g, cycle_rank_cap)
    if pin is None:
        pin = g.edges()[0]
    witnesses, explored = _search(g, pin, tol, find_all=False, cap=None)
    if witnesses:
        w = witnesses[0]
        report = is_holomorphic(w, tol)
        if not report.verdict:
            # search accepted something the checker rejects: treat as no witness
            return FeasibilityResult("constant-only", None, explored)
        return FeasibilityResult("witness", w, explored)
    return FeasibilityResult("constant-only", None, explored)


def enumerate_trivalent_witnesses(
    g: Graph,
    tol: Tolerance = Tolerance(),
    cycle_rank_cap: int = 16,
    pin=None,
    cap: int = 4096,
):
    """All nonconstant holomorphic functions with the pinned edge at (0, 1)."""
    _check_cycle_rank(g, cycle_rank_cap)
    if pin is None:
        pin = g.edges()[0]
    witnesses, _ = _search(g, pin, tol, find_all=True, cap=cap)
    return witnesses


def brute_force_feasibility(g: Graph, tol: Tolerance = Tolerance(), pin=None):
    """Independent oracle: enumerate every complete switch pattern without any
    pruning and keep the assignments the holomorphy checker accepts.

    Only usable on very small graphs.  Assignments are built by fixing, at each
    step, the first vertex (in vertex order) that has a value and exactly one
    valued neighbor, and trying both switch options; forced or overdetermined
    vertices are filled without checking, so the final holomorphy check is the
    only arbiter.
    """
    if pin is None:
        pin = g.edges()[0]
    u0, v0 = pin
    results = []

    def rec(values):
        target = None
        for v in g.vertices:
            if v not in values or v in g.boundary:
                continue
            if g.valency(v) == 2:
                ns = g.neighbors(v)
                unknown = [n for n in ns if n not in values]
                if unknown:
                    trial = dict(values)
                    for n in unknown:
                        trial[n] = values[v]
                    rec(trial)
                    return
                continue
            if g.valency(v) != 3:
                continue
            ns = g.neighbors(v)
            known = [n for n in ns if n in values]
            if len(known) == 3:
                continue
            if len(known) == 2:
                e = values[known[0]] - values[v]
                f = values[known[1]] - values[v]
                (missing,) = [n for n in ns if n not in values]
                trial = dict(values)
                trial[missing] = values[v] - (e + f)
                rec(trial)
                return
            if len(known) == 1:
                target = v
                break
        if target is None:
            full = _fill_free_component(dict(values), g)
            f = VertexFunction(g, full)
            if is_holomorphic(f, tol).verdict:
                results.append(f)
            return
        ns = g.neighbors(target)
        known = [n for n in ns if n in values][0]
        e = values[known] - values[target]
        n1, n2 = [n for n in ns if n not in values]
        for za, zb in (
            (values[target] + J * e, values[target] + J2 * e),
            (values[target] + J2 * e, values[target] + J * e),
        ):
            trial = dict(values)
            trial[n1], trial[n2] = za, zb
            rec(trial)

    rec({u0: 0j, v0: 1.0 + 0j})
    return results
