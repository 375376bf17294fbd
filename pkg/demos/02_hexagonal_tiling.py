"""The canonical extension of the 3-valent tree covers a hexagonal tiling.

Starting from the values 0 and 1 on one edge, the constant-switch extension
lands exactly (in Q[j] arithmetic) on the vertex set of the honeycomb tiling
with that edge as a tile edge, and every other extension lands on the same
vertex set.  The drawing writes the radius-6 image with tree edges.
"""

import os

from grapholo import build_hex_lattice, canonical_phi, hex_covering_check
from grapholo.render import RenderSpec, function_cloud, function_edges, svg_cloud

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

phi = canonical_phi(0, 1, 6, tree="full")
lattice = build_hex_lattice(0, 1, 8)
report = hex_covering_check(phi, lattice)

print("image on the lattice (exact):", report.on_lattice)
print("three oscillations = three tile edges at every interior vertex:",
      report.locally_surjective)
print("lattice ball fully attained out to distance:", report.attained_radius)

depth = lambda v: len(v) - 2
svg = svg_cloud(
    function_cloud(phi, depth), RenderSpec(color_by="depth", point_radius=3.0),
    edges=function_edges(phi),
)
path = os.path.join(OUT, "hexagonal_tiling.svg")
with open(path, "w", encoding="utf-8") as fh:
    fh.write(svg)
print("wrote", path)
