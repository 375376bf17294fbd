"""Holomorphy checkers on familiar graphs.

A function is harmonic when the mean of its oscillations vanishes at every
checked vertex, and holomorphic when the quadratic mean vanishes too.  On the
square lattice the powers z, z^2, z^3 are harmonic but z^4 is not, and only
the affine families a*z + b and a*conj(z) + b are holomorphic among them.
"""

from grapholo import grid_function, grid_patch, is_harmonic, is_holomorphic

patch = grid_patch(6)

for label, fn in [
    ("z", lambda z: z),
    ("z^2", lambda z: z * z),
    ("z^3", lambda z: z**3),
    ("z^4", lambda z: z**4),
    ("(2+i)z - 5", lambda z: (2 + 1j) * z - 5),
    ("3conj(z) + i", lambda z: 3 * z.conjugate() + 1j),
]:
    f = grid_function(patch, fn)
    ha = is_harmonic(f)
    ho = is_holomorphic(f)
    print(
        f"{label:>12}:  harmonic={str(ha.verdict):5}  holomorphic={str(ho.verdict):5}"
        f"  worst residual={max(ha.max_residual, ho.max_residual):.3g}"
    )

print()
print("The z^2 row is the interesting one: harmonic, yet its square is not --")
print("its quadratic mean oscillation equals 1 at every interior vertex.")
