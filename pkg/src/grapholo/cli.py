"""Command-line entry points.

Subcommands: check, extend-t3, extend-tr3, nholo, conjugate, walk, render.
Exit codes: 0 success / positive verdict, 1 negative verdict or infeasible,
2 input error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import conjugate as cj
from . import render, tree3, triangles, walks
from .core import Tolerance, VertexFunction, load_function
from .exceptions import GrapholoError, InputFormatError, SizeCapError
from .core import is_harmonic, is_holomorphic, is_n_holomorphic

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise InputFormatError(f"cannot parse complex number {text!r}") from exc


def _tolerance(args) -> Tolerance:
    return Tolerance(args.tol, args.tol) if args.tol else Tolerance()


def _emit_report(report, path):
    if path:
        render.dump_json(report, path)
    else:
        import json

        print(json.dumps(render.json_ready(report), sort_keys=True))


def cmd_check(args) -> int:
    f = load_function(args.input)
    tol = _tolerance(args)
    if args.check == "harmonic":
        rep = is_harmonic(f, tol)
    elif args.check == "holomorphic":
        rep = is_holomorphic(f, tol)
    else:
        rep = is_n_holomorphic(f, args.n, tol)
    _emit_report(rep.to_json_dict(), args.json)
    return EXIT_OK if rep.verdict else EXIT_NEGATIVE


def _cloud_outputs(args, f, depth_of, extra_edges=False):
    if args.json:
        render.dump_json(f.to_json_dict(), args.json)
    if args.csv:
        rows = [
            (str(v), float(z.real), float(z.imag), depth_of(v))
            for v, z in sorted(f.values.items(), key=lambda kv: str(kv[0]))
        ]
        render.write_csv(args.csv, ["vertex", "re", "im", "depth"], rows)
    if args.svg:
        spec = render.RenderSpec(color_by="depth")
        edges = render.function_edges(f) if extra_edges else ()
        svg = render.svg_cloud(render.function_cloud(f, depth_of), spec, edges)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)


def cmd_extend_t3(args) -> int:
    alpha, beta = _parse_complex(args.alpha), _parse_complex(args.beta)
    if args.policy == "canonical":
        choices = tree3.ChoiceAssignment.canonical(args.radius)
    else:
        choices = tree3.ChoiceAssignment.random(args.radius, args.seed)
    f = tree3.extend_rooted(alpha, beta, args.radius, choices)
    depth_of = lambda v: max(len(v) - 2, 0)
    _cloud_outputs(args, f, depth_of, extra_edges=True)
    return EXIT_OK


def cmd_nholo(args) -> int:
    alpha, beta = _parse_complex(args.alpha), _parse_complex(args.beta)
    if (args.n + 1) ** args.radius > 400_000:
        raise SizeCapError("ball too large for this n and radius")
    choices = None
    if args.policy == "seeded":
        import numpy as np

        rng = np.random.default_rng(args.seed)
        choices = tree3.NHoloChoices(_nary_perms(args.n, args.radius, rng))
    f = tree3.nholo_extend(args.n, alpha, beta, args.radius, choices)
    depth_of = lambda v: max(len(v) - 2, 0)
    _cloud_outputs(args, f, depth_of, extra_edges=False)
    return EXIT_OK


def _nary_perms(n, radius, rng):
    frontier, all_words = [""], [""]
    for _ in range(radius - 1):
        frontier = [w + x for w in frontier for x in tree3.LETTERS[:n]]
        all_words += frontier
    return {
        tree3.address("L", w): tuple(int(i) for i in rng.permutation(n)) for w in all_words
    }


def cmd_extend_tr3(args) -> int:
    start = triangles.MarkedTriangle(
        _parse_complex(args.p), _parse_complex(args.e), _parse_complex(args.f)
    )
    if args.policy == "exhaustive":
        pts = triangles.ball_image_cloud(start, args.radius, "exhaustive")
    elif args.policy == "canonical":
        f = triangles.extend_tr3(start, args.radius, triangles.BranchSelector.canonical(args.radius))
        pts = [(z, len(v) - 1) for v, z in f.values.items()]
        if args.json:
            render.dump_json(f.to_json_dict(), args.json)
    else:
        pts = triangles.ball_image_cloud(start, args.radius, "sampled", args.samples, args.seed)
    if args.csv:
        rows = [(float(z.real), float(z.imag), d) for z, d in pts]
        render.write_csv(args.csv, ["re", "im", "depth"], rows)
    if args.svg:
        svg = render.svg_cloud(pts, render.RenderSpec(color_by="depth", point_radius=1.8))
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_OK


def cmd_conjugate(args) -> int:
    try:
        import json

        with open(args.input, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        f = cj.RealVertexFunction.from_json_dict(doc)
        cj.require_tree(f.graph)
    except (OSError, ValueError, KeyError) as exc:
        raise InputFormatError(f"cannot read real function: {exc}") from exc
    result = cj.find_conjugate(f, mode=args.mode, seed=args.seed)
    if result.kind == "found":
        _emit_report(result.to_json_dict(), args.json)
        return EXIT_OK
    cert = cj.forced_propagation_infeasibility(f)
    doc = cert.to_json_dict() if cert else result.to_json_dict()
    _emit_report(doc, args.json)
    return EXIT_NEGATIVE


def cmd_walk(args) -> int:
    shift = walks.build_walk_shift()
    rows = []
    endpoints = []
    import numpy as np

    rng = np.random.default_rng(args.seed)
    for w in range(args.walks):
        walk = walks.walk_sample(shift, args.length, rng.integers(0, 2**63))
        endpoints.append(walk.points[-1])
        for step, sym in enumerate(walk.symbols, start=1):
            z = walk.points[step]
            rows.append((w, step, sym, float(z.real), float(z.imag), float(abs(z))))
    if args.csv:
        render.write_csv(args.csv, ["walk", "step", "symbol", "re", "im", "abs"], rows)
    moduli = [abs(z) for z in endpoints]
    grid = _endpoint_grid(endpoints)
    summary = {
        "walks": args.walks,
        "length": args.length,
        "mean_abs": sum(moduli) / len(moduli),
        "max_abs": max(moduli),
        "endpoint_grid": grid,
    }
    _emit_report(summary, args.json)
    return EXIT_OK


def _endpoint_grid(endpoints, bins: int = 11):
    top = max(max(abs(z.real), abs(z.imag)) for z in endpoints) or 1.0
    cells = [[0] * bins for _ in range(bins)]
    for z in endpoints:
        i = min(int((z.imag + top) / (2 * top) * bins), bins - 1)
        j = min(int((z.real + top) / (2 * top) * bins), bins - 1)
        cells[i][j] += 1
    return cells


def cmd_render(args) -> int:
    f = load_function(args.input)
    spec = render.RenderSpec(color_by=args.color_by, point_radius=args.point_radius)
    edges = render.function_edges(f) if args.edges else ()
    svg = render.svg_cloud(render.function_cloud(f), spec, edges)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grapholo", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed_default=None):
        sp.add_argument("--radius", type=int, default=4)
        sp.add_argument("--seed", type=int, default=seed_default)
        sp.add_argument("--policy", choices=["canonical", "seeded", "exhaustive"], default="canonical")
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--svg")
        sp.add_argument("--csv")
        sp.add_argument("--json")

    sp = sub.add_parser("check", help="run holomorphy checkers on a function file")
    sp.add_argument("input")
    sp.add_argument("--check", choices=["harmonic", "holomorphic", "nholo"], default="holomorphic")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("extend-t3", help="holomorphic extension on the 3-valent tree")
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--beta", default="1")
    common(sp)
    sp.set_defaults(func=cmd_extend_t3)

    sp = sub.add_parser("nholo", help="order-n extension on the (n+1)-valent tree")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--beta", default="1")
    common(sp)
    sp.set_defaults(func=cmd_nholo)

    sp = sub.add_parser("extend-tr3", help="extension dynamics on the triangle graph")
    sp.add_argument("--p", default="0")
    sp.add_argument("--e", default="1")
    sp.add_argument("--f", default="-1")
    sp.add_argument("--samples", type=int, default=120)
    common(sp, seed_default=0)
    sp.set_defaults(func=cmd_extend_tr3)

    sp = sub.add_parser("conjugate", help="find a conjugate part or a certificate")
    sp.add_argument("input")
    sp.add_argument("--mode", choices=["deterministic", "seeded"], default="deterministic")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_conjugate)

    sp = sub.add_parser("walk", help="sample locally injective tiling walks")
    sp.add_argument("--length", type=int, default=1000)
    sp.add_argument("--walks", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_walk)

    sp = sub.add_parser("render", help="draw a dumped function as an SVG cloud")
    sp.add_argument("input")
    sp.add_argument("--svg", required=True)
    sp.add_argument("--color-by", choices=["depth", "branch", "none"], default="none")
    sp.add_argument("--point-radius", type=float, default=2.5)
    sp.add_argument("--edges", action="store_true")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "policy", None) == "seeded" and args.seed is None:
        print("error: --policy seeded requires --seed", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputFormatError, GrapholoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
