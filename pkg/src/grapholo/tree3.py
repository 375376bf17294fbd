"""Holomorphic extension dynamics on the 3-valent tree and its generalizations.

The rooted tree has an extremal vertex O' joined to a root O; every vertex
below O is a word over {a, b}.  Addresses carry a side tag so the full tree
(two rooted copies glued along the O'O edge) can reuse the same ids: "L:" is
O, "R:" is O', "L:ab" is the word ab on the O side.

Given values alpha at O' and beta at O, a holomorphic extension is built
step by step: if S' -> S is an oriented edge and X is a child letter,

    phi(S X) = phi(S) + m_S(X) * (phi(S) - phi(S')),

where m_S is a bijection {a, b} -> {-j, -j2}.  The per-vertex switch of that
bijection is the only freedom; a ChoiceAssignment records it, and the constant
assignment (a -> -j everywhere) gives the canonical extension whose image is
the vertex set of a hexagonal tiling.

When alpha and beta are exact (ints or Eisenstein numbers) the recursion runs
in Q[j] and extensions carry an `exact_values` map next to the float ones.

The same machinery at order N builds functions on the (N+1)-valent tree whose
powers up to N are all harmonic: the child oscillations are the incoming one
times the nontrivial (N+1)-th roots of unity, negated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import eisenstein as ei
from .core import Graph, VertexFunction
from .exceptions import MissingDataError, SizeCapError

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def address(side: str, word: str = "") -> str:
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    return f"{side}:{word}"

O_LEFT = address("L")
O_RIGHT = address("R")


def _split(addr: str):
    side, _, word = addr.partition(":")
    return side, word


def rooted_ball(radius: int, branching: int = 2) -> Graph:
    """Ball of the rooted tree: O' ("R:"), O ("L:"), words of length <= radius.

    O' is genuinely extremal (valency 1) so it never carries a constraint;
    the words at full length form the boundary sphere.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    verts = [O_RIGHT, O_LEFT]
    edges = [(O_RIGHT, O_LEFT)]
    frontier = [""]
    for d in range(radius):
        new = []
        for w in frontier:
            for x in LETTERS[:branching]:
                verts.append(address("L", w + x))
                edges.append((address("L", w), address("L", w + x)))
                new.append(w + x)
        frontier = new
    return Graph(verts, edges, boundary=[address("L", w) for w in frontier])


def full_ball(radius: int) -> Graph:
    """Ball of the full 3-valent tree around the root edge: words of length
    <= radius on both sides, glued along O'O."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    verts = [O_LEFT, O_RIGHT]
    edges = [(O_LEFT, O_RIGHT)]
    boundary = []
    for side in ("L", "R"):
        frontier = [""]
        for d in range(radius):
            new = []
            for w in frontier:
                for x in "ab":
                    verts.append(address(side, w + x))
                    edges.append((address(side, w), address(side, w + x)))
                    new.append(w + x)
            frontier = new
        boundary.extend(address(side, w) for w in frontier)
    return Graph(verts, edges, boundary=boundary)


class ChoiceAssignment:
    """Per-vertex switch: bit 0 sends a -> -j, b -> -j2; bit 1 swaps them.

    Keys are addresses of the vertices whose children the switch controls."""

    def __init__(self, bits: dict):
        self.bits = dict(bits)

    def __getitem__(self, addr: str) -> int:
        try:
            return self.bits[addr]
        except KeyError:
            raise MissingDataError(f"no choice entry for address {addr!r}") from None

    def __contains__(self, addr):
        return addr in self.bits

    @staticmethod
    def interior_addresses(radius: int, sides=("L",)):
        """Addresses needing an entry to cover a ball of the given radius."""
        out = []
        for side in sides:
            words = [""]
            for d in range(radius - 1):
                words += [w + x for w in words if len(w) == d for x in "ab"]
            out.extend(address(side, w) for w in words)
        return out

    @classmethod
    def canonical(cls, radius: int, sides=("L",)):
        return cls({a: 0 for a in cls.interior_addresses(radius, sides)})

    @classmethod
    def random(cls, radius: int, seed, sides=("L",)):
        rng = np.random.default_rng(seed)
        addrs = cls.interior_addresses(radius, sides)
        return cls({a: int(b) for a, b in zip(addrs, rng.integers(0, 2, len(addrs)))})

    @classmethod
    def from_bit_pattern(cls, radius: int, pattern: int, sides=("L",)):
        addrs = cls.interior_addresses(radius, sides)
        return cls({a: (pattern >> i) & 1 for i, a in enumerate(addrs)})


def _multipliers(exact: bool):
    if exact:
        return ei.MINUS_J, ei.MINUS_J2
    from .moments import J, J2

    return -J, -J2


def _extend_side(values, side, root_addr, parent_addr, radius, choices, exact):
    mj, mj2 = _multipliers(exact)
    frontier = [("", values[root_addr], values[root_addr] - values[parent_addr])]
    for d in range(radius):
        new = []
        for word, z, osc in frontier:
            bit = choices[address(side, word)]
            for x, mult in zip("ab", (mj, mj2) if bit == 0 else (mj2, mj)):
                step = mult * osc
                child = address(side, word + x)
                values[child] = z + step
                new.append((word + x, z + step, step))
        frontier = new


def _finalize(graph, raw_values, exact):
    if exact:
        f = VertexFunction(graph, {v: complex(z) for v, z in raw_values.items()})
        f.exact_values = dict(raw_values)
    else:
        f = VertexFunction(graph, raw_values)
        f.exact_values = None
    return f


def extend_rooted(alpha, beta, radius: int, choices: ChoiceAssignment) -> VertexFunction:
    """Holomorphic extension on the rooted ball with phi(O') = alpha, phi(O) = beta."""
    exact = ei.is_exact(alpha) and ei.is_exact(beta)
    if exact:
        alpha, beta = ei.as_eisenstein(alpha), ei.as_eisenstein(beta)
    g = rooted_ball(radius)
    values = {O_RIGHT: alpha, O_LEFT: beta}
    _extend_side(values, "L", O_LEFT, O_RIGHT, radius, choices, exact)
    return _finalize(g, values, exact)


def extend_full(alpha, beta, radius: int, choices: ChoiceAssignment) -> VertexFunction:
    """Extension over the full-tree ball: two rooted runs with swapped roles."""
    exact = ei.is_exact(alpha) and ei.is_exact(beta)
    if exact:
        alpha, beta = ei.as_eisenstein(alpha), ei.as_eisenstein(beta)
    g = full_ball(radius)
    values = {O_RIGHT: alpha, O_LEFT: beta}
    _extend_side(values, "L", O_LEFT, O_RIGHT, radius, choices, exact)
    _extend_side(values, "R", O_RIGHT, O_LEFT, radius, choices, exact)
    return _finalize(g, values, exact)


def canonical_phi(alpha, beta, radius: int, tree: str = "rooted") -> VertexFunction:
    """The extension with the constant choice assignment.

    For alpha != beta it is conformal and locally injective, and its image is
    exactly the vertex set of the hexagonal tiling with base alpha and edge
    beta - alpha (exact when alpha, beta are Eisenstein values).
    """
    sides = ("L",) if tree == "rooted" else ("L", "R")
    choices = ChoiceAssignment.canonical(radius, sides)
    builder = extend_rooted if tree == "rooted" else extend_full
    return builder(alpha, beta, radius, choices)


def chain_eval(w, mults):
    """Value after following a geodesic from O' with given step multipliers.

    Normalized to phi(O') = 0: returns w + m0*w + (m1*m0)*w + ... ; with no
    multipliers this is phi(O) = w.  Equal multipliers -j walk around a
    hexagon: after six edges the partial products exhaust the sixth roots of
    unity and the sum closes up to 0.
    """
    total = w
    prod = 1
    for m in mults:
        prod = prod * m
        total = total + prod * w
    return total


def geodesic_values(f: VertexFunction, word: str, side: str = "L"):
    """Values of f along O', O, then the prefixes of `word`."""
    vals = [f.values[O_RIGHT], f.values[O_LEFT]]
    for i in range(1, len(word) + 1):
        vals.append(f.values[address(side, word[:i])])
    return vals


def enumerate_holomorphic(alpha, beta, radius: int, tree: str = "rooted", cap: int = 1 << 16):
    """One extension per choice assignment; 2**(interior count) functions."""
    sides = ("L",) if tree == "rooted" else ("L", "R")
    n_addr = len(ChoiceAssignment.interior_addresses(radius, sides))
    total = 1 << n_addr
    if total > cap:
        raise SizeCapError(
            f"enumeration would produce {total} functions (cap {cap})", estimate=total
        )
    builder = extend_rooted if tree == "rooted" else extend_full
    return [
        builder(alpha, beta, radius, ChoiceAssignment.from_bit_pattern(radius, k, sides))
        for k in range(total)
    ]


def reachable_states(alpha, beta, radius: int):
    """Per-depth sets of (value, incoming oscillation) over ALL choice assignments.

    By symmetry every vertex at depth d below O sees the same reachable set, so
    these sets decide properties quantified over every extension at once:
    depth 0 is the state (beta, beta - alpha) at O, and a state (z, e) spawns
    (z - j*e, -j*e) and (z - j2*e, -j2*e) one level down.  Exact when the
    root values are.
    """
    exact = ei.is_exact(alpha) and ei.is_exact(beta)
    if exact:
        alpha, beta = ei.as_eisenstein(alpha), ei.as_eisenstein(beta)
    mj, mj2 = _multipliers(exact)
    levels = [{(beta, beta - alpha)}]
    for _ in range(radius):
        nxt = set()
        for z, e in levels[-1]:
            for m in (mj, mj2):
                nxt.add((z + m * e, m * e))
        levels.append(nxt)
    return levels


def extend_by_power_sums(alpha, beta, radius: int, order: int, cap: int = 4096):
    """Enumerate functions on the rooted ball whose oscillation power sums
    vanish up to `order` at every interior vertex, driving each step through
    the moment solver rather than the closed-form switch rule.

    At order 2 each vertex contributes the unique-up-to-swap pair, so the
    enumeration reproduces the choice dynamics (2**interior functions).  At
    order 3 the per-vertex system is overdetermined with two unknowns: it is
    infeasible unless the incoming oscillation vanishes, so only constants
    come back."""
    from .moments import MomentSystem, solve_power_sums

    g = rooted_ball(radius)
    results = []

    def rec(values, frontier):
        if len(results) >= cap:
            return
        if not frontier:
            results.append(VertexFunction(g, values))
            return
        (word, z, osc), rest = frontier[0], frontier[1:]
        out = solve_power_sums(MomentSystem((-osc,), 2, order))
        if out.kind == "infeasible":
            return
        u, v = out.roots
        swaps = ((u, v),) if abs(u - v) < 1e-12 else ((u, v), (v, u))
        for du, dv in swaps:
            vals = dict(values)
            vals[address("L", word + "a")] = z + du
            vals[address("L", word + "b")] = z + dv
            nxt = list(rest)
            if len(word) + 1 < radius:
                nxt += [(word + "a", z + du, du), (word + "b", z + dv, dv)]
            rec(vals, nxt)

    alpha, beta = complex(alpha), complex(beta)
    rec({O_RIGHT: alpha, O_LEFT: beta}, [("", beta, beta - alpha)])
    return results


@dataclass
class NHoloChoices:
    """Per-vertex permutation assigning root multipliers to child letters."""

    perms: dict

    def perm_at(self, addr: str, n: int):
        if self.perms is None:
            return tuple(range(n))
        try:
            return self.perms[addr]
        except KeyError:
            raise MissingDataError(f"no choice entry for address {addr!r}") from None


def nholo_multipliers(n: int):
    """Step multipliers for order n: minus the nontrivial (n+1)-th roots of unity.

    For n = 2 these are -j and -j2, reproducing the 3-valent rule.  They are
    the unique-up-to-permutation solution of the vertex power-sum system with
    one given oscillation.
    """
    zeta = cmath.exp(2j * math.pi / (n + 1))
    return tuple(-(zeta**m) for m in range(1, n + 1))


def nholo_extend(
    n: int, alpha, beta, radius: int, choices: NHoloChoices | None = None
) -> VertexFunction:
    """Extension on the (n+1)-valent rooted tree ball satisfying (*)_n.

    Nonconstant outputs satisfy lap(f**p) = 0 for p <= n at interior vertices
    and fail it at p = n + 1.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    alpha, beta = complex(alpha), complex(beta)
    mults = nholo_multipliers(n)
    g = rooted_ball(radius, branching=n)
    if choices is None:
        choices = NHoloChoices(None)
    values = {O_RIGHT: alpha, O_LEFT: beta}
    frontier = [("", beta, beta - alpha)]
    for _ in range(radius):
        new = []
        for word, z, osc in frontier:
            perm = choices.perm_at(address("L", word), n)
            for k, letter in enumerate(LETTERS[:n]):
                step = mults[perm[k]] * osc
                values[address("L", word + letter)] = z + step
                new.append((word + letter, z + step, step))
        frontier = new
    return _finalize(g, values, exact=False)
