"""The two-valued dynamics on the triangle graph.

Extending a holomorphic function across a shared triangle vertex solves a
quadratic, so every triangle adds one branch switch; iterating the step map
over random switch patterns scatters the images of a ball into clouds.  The
two branches coalesce along two singular lines, and carrying the root pair
around one of them in the space of triangle shapes swaps the branches.
"""

import os

from grapholo import MarkedTriangle, ball_image_cloud, branch_monodromy
from grapholo.triangles import circle_class_loop
from grapholo.render import RenderSpec, svg_cloud

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

start = MarkedTriangle(0, 1, -1)
for radius, samples in [(3, 400), (5, 200)]:
    pts = ball_image_cloud(start, radius, mode="sampled", samples=samples, seed=1)
    svg = svg_cloud(pts, RenderSpec(color_by="depth", point_radius=1.6))
    path = os.path.join(OUT, f"triangle_ball_{radius}.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"radius {radius}: {len(pts)} image points ->", path)

t_singular = (-1 - 2j * 2**0.5) / 3
print("loop around a singular class:",
      branch_monodromy(circle_class_loop(t_singular, 0.4, 1000)))
print("loop around nothing:        ",
      branch_monodromy(circle_class_loop(2 + 2j, 0.4, 1000)))
