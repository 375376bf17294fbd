"""Conjugate parts of real harmonic functions on trees.

A real harmonic f has a conjugate g (making f + i*g holomorphic) whenever its
gradient norm is constant: the sweep completes grad g sphere by sphere, and
the projection bound guarantees it never gets stuck.  Without constancy the
problem can fail outright: the classical instance (zero everywhere except two
opposite values) is certified infeasible by interval propagation, and so is
every nearby harmonic function.
"""

from grapholo import find_conjugate, forced_propagation_infeasibility, is_holomorphic
from grapholo.conjugate import (
    combine,
    constant_norm_harmonic,
    no_conjugate_instance,
    perturb_harmonic,
)

f = constant_norm_harmonic(4, 4, seed=2)
res = find_conjugate(f, mode="seeded", seed=7)
phi = combine(f, res.g)
print("conjugate found:", res.kind == "found",
      "| f + ig holomorphic:", is_holomorphic(phi).verdict)

g2 = find_conjugate(f, mode="seeded", seed=8).g
diff = [res.g.values[v] - g2.values[v] for v in res.g.values]
print("another seed gives a genuinely different conjugate:",
      max(diff) - min(diff) > 1e-6)

fx = no_conjugate_instance()
cert = forced_propagation_infeasibility(fx)
print("\nno-conjugate instance certified at vertex:", cert.vertex)
print(f"  required gradient norm {cert.required_norm:.4f}, "
      f"reachable at most {cert.available_norm:.2e}")

near = perturb_harmonic(fx, seed=0, sup=1e-3)
print("a 1e-3 harmonic perturbation is still certified:",
      forced_propagation_infeasibility(near) is not None)
