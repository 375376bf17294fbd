"""Rigidity on (<= 3)-valent graphs: the switch-propagation decision procedure."""

import networkx as nx
import pytest

from grapholo.core import Graph, is_holomorphic
from grapholo.exceptions import SizeCapError
from grapholo.hexlattice import hex_patch_graph
from grapholo.trivalent import (
    brute_force_feasibility,
    enumerate_trivalent_witnesses,
    trivalent_feasibility,
)
from helpers import cube_graph, k4, similarity_fit_error


def test_k4_constant_only():
    assert trivalent_feasibility(k4()).kind == "constant-only"


def test_cube_constant_only():
    assert trivalent_feasibility(cube_graph()).kind == "constant-only"


def test_hex_patch_has_similarity_witness():
    g, emb = hex_patch_graph(3)
    res = trivalent_feasibility(g)
    assert res.kind == "witness"
    w = res.witness
    assert is_holomorphic(w).verdict
    pts = [complex(emb[v]) for v in g.vertices]
    vals = [w.values[v] for v in g.vertices]
    assert similarity_fit_error(pts, vals) < 1e-9
    # the pinned edge is normalized
    u0, v0 = g.edges()[0]
    assert w.values[u0] == 0 and w.values[v0] == 1


def test_hex_patch_witnesses_are_all_plane_similarities():
    g, emb = hex_patch_graph(3)
    wits = enumerate_trivalent_witnesses(g)
    assert len(wits) == 2
    pts = [complex(emb[v]) for v in g.vertices]
    kinds = set()
    for w in wits:
        vals = [w.values[v] for v in g.vertices]
        if similarity_fit_error(pts, vals) < 1e-9:
            kinds.add("direct")
        elif similarity_fit_error(pts, vals, conj=True) < 1e-9:
            kinds.add("mirror")
    assert kinds == {"direct", "mirror"}


def test_agreement_with_brute_force():
    # small graphs of valency <= 3, some rigid, some floppy
    cases = [k4(), cube_graph()]
    g = nx.random_regular_graph(3, 8, seed=4)
    cases.append(Graph(list(g.nodes), list(g.edges)))
    g = nx.random_regular_graph(3, 10, seed=7)
    cases.append(Graph(list(g.nodes), list(g.edges)))
    # a 6-cycle with pendant edges: all interior vertices trivalent
    cyc = [(i, (i + 1) % 6) for i in range(6)]
    pend = [(i, 6 + i) for i in range(6)]
    cases.append(Graph(range(12), cyc + pend))
    for g in cases:
        if not nx.is_connected(nx.Graph(g.edges())):
            continue
        fast = trivalent_feasibility(g)
        slow = brute_force_feasibility(g)
        assert (fast.kind == "witness") == bool(slow), f"disagreement on {len(g)} vertices"
        if fast.kind == "witness":
            key = lambda f: tuple(
                (str(v), round(f.values[v].real, 6), round(f.values[v].imag, 6))
                for v in g.vertices
            )
            assert key(fast.witness) in {key(w) for w in slow}


def test_hexagon_with_pendants_is_similarity_rigid_up_to_mirror():
    # single hexagon whose vertices all carry a pendant edge: the unique cycle
    # forces the two plane embeddings only
    cyc = [(i, (i + 1) % 6) for i in range(6)]
    pend = [(i, 6 + i) for i in range(6)]
    g = Graph(range(12), cyc + pend)
    wits = enumerate_trivalent_witnesses(g)
    assert len(wits) >= 2
    for w in wits:
        assert is_holomorphic(w).verdict


def test_valency_cap():
    g = Graph(range(5), [(0, i) for i in range(1, 5)])
    with pytest.raises(ValueError, match="valency"):
        trivalent_feasibility(g)


def test_cycle_rank_cap():
    g = nx.random_regular_graph(3, 24, seed=1)
    graph = Graph(list(g.nodes), list(g.edges))
    with pytest.raises(SizeCapError):
        trivalent_feasibility(graph, cycle_rank_cap=3)


def test_boundary_vertices_are_exempt():
    # path of 2-valent vertices: with ends as boundary a nonconstant linear
    # ramp would still fail interior zero-oscillation forcing
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3)], boundary=[0, 3])
    res = trivalent_feasibility(g)
    assert res.kind == "constant-only"
