"""Numerical search harness for holomorphic functions on square-lattice patches.

On the standard lattice Z + iZ the affine maps a*z + b and a*conj(z) + b are
holomorphic, and whether anything else is remains open.  This harness runs a
least-squares descent on the stacked holomorphy residuals from random starts
and measures how far each converged solution lies from the two affine
families.

A finite patch proves nothing by itself: boundary vertices carry no
constraint, so the patch has far more holomorphic functions than the affine
ones (the constraint count 4 * interior is well below the 2 * vertices
unknowns), and they simply need not extend to the full lattice.  Distances
are therefore reported twice: over the whole patch, and over the core
(vertices all of whose neighbors are interior), where constraints accumulate
as the patch grows.  Evidence for or against the affine answer comes from
watching the core distance as half_width increases, not from any single run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .core import grid_patch


@dataclass
class SearchRecord:
    residual: float  # final holomorphy residual (2-norm of all constraints)
    affine_distance: float  # rms distance to the best a*z + b over the patch
    conj_affine_distance: float  # same for a*conj(z) + b
    core_affine_distance: float  # min of the two fits restricted to the core
    core_size: int


def _fit_distance(points, values, conj: bool):
    basis = np.conj(points) if conj else points
    a_mat = np.column_stack([basis, np.ones_like(basis)])
    coef, *_ = np.linalg.lstsq(a_mat, values, rcond=None)
    resid = a_mat @ coef - values
    return float(np.sqrt(np.mean(np.abs(resid) ** 2)))


def square_patch_search(half_width: int = 3, attempts: int = 10, seed=0):
    """Random-start searches on the [-k, k]^2 patch; returns SearchRecords."""
    g = grid_patch(half_width)
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    interior = [v for v in verts if v not in g.boundary]
    interior_set = set(interior)
    core = [
        v for v in interior if all(n in interior_set for n in g.neighbors(v))
    ]
    points = np.array([complex(v[0], v[1]) for v in verts])

    def unpack(x):
        return x[: len(verts)] + 1j * x[len(verts) :]

    def residuals(x):
        z = unpack(x)
        out = []
        for v in interior:
            i = index[v]
            osc = [z[index[n]] - z[i] for n in g.neighbors(v)]
            s1 = sum(osc)
            s2 = sum(d * d for d in osc)
            out += [s1.real, s1.imag, s2.real, s2.imag]
        return np.array(out)

    core_idx = [index[v] for v in core]
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(attempts):
        x0 = rng.standard_normal(2 * len(verts))
        sol = least_squares(residuals, x0, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        z = unpack(sol.x)
        res = float(np.linalg.norm(residuals(sol.x)))
        core_dist = min(
            _fit_distance(points[core_idx], z[core_idx], conj=False),
            _fit_distance(points[core_idx], z[core_idx], conj=True),
        )
        records.append(
            SearchRecord(
                res,
                _fit_distance(points, z, conj=False),
                _fit_distance(points, z, conj=True),
                core_dist,
                len(core),
            )
        )
    return records
