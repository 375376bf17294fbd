"""Locally injective walks on the honeycomb as a subshift of finite type.

Tree geodesics map to tiling paths that never immediately backtrack; with the
six oriented tile edges as the alphabet, each symbol has exactly two
successors, so there are 2^n admissible continuations.  A sampled trajectory
is drawn and the growth of |S_n| printed.
"""

import os

from grapholo import build_walk_shift, walk_sample
from grapholo.walks import count_words
from grapholo.render import RenderSpec, svg_cloud

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

shift = build_walk_shift()
print("incidence matrix:")
for row in shift.matrix:
    print("   ", row)
print("continuations of length 12 from symbol 1:", count_words(shift, 1, 12))

walk = walk_sample(shift, 4000, seed=42)
marks = [(z, min(i // 400, 9)) for i, z in enumerate(walk.points)]
svg = svg_cloud(marks, RenderSpec(color_by="depth", point_radius=1.4))
path = os.path.join(OUT, "walk_trajectory.svg")
with open(path, "w", encoding="utf-8") as fh:
    fh.write(svg)
print("wrote", path)

for n in (10, 100, 1000, 4000):
    print(f"|S_{n}| = {abs(walk.points[n]):.2f}")
