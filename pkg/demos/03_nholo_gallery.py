"""Higher-order holomorphy on higher-valency trees.

A function is order-n holomorphic when its first n powers are all harmonic.
On the (n+1)-valent tree the step rule multiplies the incoming oscillation by
minus the nontrivial (n+1)-th roots of unity; n = 2 is the hexagonal case and
larger n produce denser piecewise-line images.  One SVG per order.
"""

import os

from grapholo import is_n_holomorphic, nholo_extend
from grapholo.render import RenderSpec, function_cloud, svg_cloud

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

for n, radius in [(2, 6), (3, 5), (4, 4), (5, 4)]:
    f = nholo_extend(n, 0, 1, radius)
    good = is_n_holomorphic(f, n).verdict
    too_far = is_n_holomorphic(f, n + 1).verdict
    print(f"order {n}: satisfies orders 1..{n}: {good}; also order {n + 1}: {too_far}")
    svg = svg_cloud(
        function_cloud(f, lambda v: len(v) - 2),
        RenderSpec(color_by="depth", point_radius=2.2),
    )
    path = os.path.join(OUT, f"nholo_{n}.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print("  wrote", path)
