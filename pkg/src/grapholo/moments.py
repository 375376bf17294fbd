"""Power-sum systems behind every holomorphic extension step.

Given some oscillations at a vertex, the remaining ones must make the power
sums sum(d_i**p) vanish for p = 1..N.  The determined case (as many unknowns
as constrained orders) is solved by converting the prescribed power sums to
elementary symmetric polynomials with Newton's identities and extracting all
roots of the resulting monic polynomial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalFailureError

J = complex(-0.5, math.sqrt(3.0) / 2.0)
J2 = J * J


def solve_pair(e: complex):
    """The unique-up-to-swap pair {u, v} with e+u+v = 0 and e^2+u^2+v^2 = 0.

    The pair is always {j*e, j2*e} for the cube roots of unity j, j2.
    """
    return (J * e, J2 * e)


def solve_pair2(e: complex, f: complex):
    """The unique-up-to-swap pair {u, v} with e+f+u+v = 0, e^2+f^2+u^2+v^2 = 0.

    u and v are the roots of t**2 + (e+f)t + (e**2+f**2+e*f), computed with the
    cancellation-safe form of the quadratic formula.  A double root is allowed.
    """
    b = e + f
    c = e * e + f * f + e * f
    disc = b * b - 4.0 * c
    s = cmath.sqrt(disc)
    # pick the sign that avoids cancellation in b + s
    if (b.conjugate() * s).real < 0.0:
        s = -s
    q = -(b + s) / 2.0
    if q == 0:
        return (0j, -b)
    return (q, c / q)


def power_sums(roots, order: int):
    return [sum(r**p for r in roots) for p in range(1, order + 1)]


def poly_from_power_sums(sums):
    """Monic coefficients (descending) of the polynomial whose roots have the
    given power sums p_1..p_m, via Newton's identities."""
    m = len(sums)
    elem = [1.0 + 0j]
    for k in range(1, m + 1):
        acc = 0j
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * elem[k - i] * sums[i - 1]
        elem.append(acc / k)
    return [1.0 + 0j] + [(-1) ** k * elem[k] for k in range(1, m + 1)]


def find_roots(coeffs, tol: float = 1e-9, max_iter: int = 2000):
    """All roots (with multiplicity) of a monic complex polynomial.

    Runs the Durand-Kerner simultaneous iteration; accepts once every
    iterate satisfies |p(z)| <= tol * max|coefficient|.  Raises
    NumericalFailureError (carrying the residuals) if the iteration cap is
    reached first.
    """
    coeffs = [complex(c) for c in coeffs]
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree >= 1")
    if abs(coeffs[0] - 1.0) > 1e-12:
        raise ValueError("polynomial must be monic")
    m = len(coeffs) - 1
    if m == 1:
        return [-coeffs[1]]

    def p(z):
        acc = 0j
        for c in coeffs:
            acc = acc * z + c
        return acc

    scale = max(abs(c) for c in coeffs)
    radius = 1.0 + max(abs(c) for c in coeffs[1:])  # Cauchy root bound
    z = [radius * cmath.exp(2j * math.pi * k / m + 0.37j) for k in range(m)]
    target = tol * scale
    for _ in range(max_iter):
        moved = 0.0
        for i in range(m):
            den = 1.0 + 0j
            for k in range(m):
                if k != i:
                    d = z[i] - z[k]
                    if d == 0:
                        d = 1e-14 * (1 + 1j)
                    den *= d
            step = p(z[i]) / den
            z[i] -= step
            moved = max(moved, abs(step))
        if moved <= 1e-14 * max(1.0, max(abs(w) for w in z)):
            break
    residuals = [abs(p(w)) for w in z]
    if max(residuals) > target:
        raise NumericalFailureError(
            f"root iteration did not reach residual {target:.3g}", residuals=residuals
        )
    return z


def cluster_roots(roots, rel_tol: float = 1e-6):
    """Group near-coincident roots; returns (representative, multiplicity) pairs.

    The clustering tolerance is deliberately looser than residual tolerances
    because multiple roots are ill-conditioned.
    """
    scale = max([abs(r) for r in roots] + [1.0])
    remaining = list(roots)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        rest = []
        for r in remaining:
            if abs(r - seed) <= rel_tol * scale:
                members.append(r)
            else:
                rest.append(r)
        remaining = rest
        center = sum(members) / len(members)
        clusters.append((center, len(members)))
    return clusters


@dataclass
class MomentSystem:
    """Prescribed power sums: `given` oscillations are fixed, `unknown_count`
    more must be found so that all power sums up to `order` vanish.

    `raw_targets` overrides the derived targets when the sums are prescribed
    directly rather than through given oscillations."""

    given: tuple
    unknown_count: int
    order: int
    raw_targets: tuple | None = None

    def __post_init__(self):
        self.given = tuple(complex(g) for g in self.given)
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.unknown_count < 0:
            raise ValueError("unknown_count must be >= 0")
        if self.raw_targets is not None and len(self.raw_targets) != self.order:
            raise ValueError("need one target per order")

    @property
    def targets(self):
        """s_p = -sum(given**p) for p = 1..order, unless prescribed directly."""
        if self.raw_targets is not None:
            return [complex(t) for t in self.raw_targets]
        return [-sum(g**p for g in self.given) for p in range(1, self.order + 1)]


@dataclass
class SolutionSet:
    kind: str  # unique-up-to-permutation | parametrized | infeasible | trivial-zero
    roots: tuple = ()
    certificate: tuple = ()  # residuals of all `order` power sums
    extras: tuple = ()  # values assigned to surplus unknowns in the parametrized case


def solve_power_sums(
    system: MomentSystem,
    mode: str = "zero",
    seed: int | None = None,
    tol: float = 1e-8,
) -> SolutionSet:
    """Solve the prescribed power-sum system.

    Determined (order == unknowns): Newton identities + root finding; the
    answer is unique up to permutation.  Underdetermined (order < unknowns):
    the surplus unknowns get a reproducible default (zero, or seeded samples
    in mode="random") and the rest is solved as a determined system.
    Overdetermined (order > unknowns): the first `unknowns` power sums
    determine a candidate which is then verified against all remaining sums;
    when the given oscillations vanish this is the all-zero solution.
    """
    m, n = system.unknown_count, system.order
    targets = system.targets
    scale = max([abs(t) for t in targets] + [abs(g) for g in system.given] + [1.0])

    def residuals_for(roots):
        res = []
        for p in range(1, n + 1):
            res.append(abs(sum(r**p for r in roots) - targets[p - 1]))
        return tuple(res)

    def verdict(roots, kind):
        res = residuals_for(roots)
        ok = all(r <= tol * max(1.0, scale ** min(p, 6)) for p, r in enumerate(res, start=1))
        if not ok:
            return SolutionSet("infeasible", tuple(roots), res)
        if all(abs(r) <= tol for r in roots) and all(abs(g) <= tol for g in system.given):
            return SolutionSet("trivial-zero", tuple(roots), res)
        return SolutionSet(kind, tuple(roots), res)

    if m == 0:
        return verdict([], "unique-up-to-permutation")

    extras = []
    solve_for = m
    eff_targets = list(targets)
    if n < m:
        surplus = m - n
        if mode == "random":
            rng = np.random.default_rng(seed)
            extras = [complex(a, b) for a, b in rng.standard_normal((surplus, 2))]
        else:
            extras = [0j] * surplus
        for p in range(1, n + 1):
            eff_targets[p - 1] -= sum(x**p for x in extras)
        solve_for = n

    roots = find_roots(poly_from_power_sums(eff_targets[:solve_for]))
    roots = list(roots) + extras
    if n < m:
        out = verdict(roots, "parametrized")
        out.extras = tuple(extras)
        return out
    if n == m:
        return verdict(roots, "unique-up-to-permutation")
    return verdict(roots, "unique-up-to-permutation")
