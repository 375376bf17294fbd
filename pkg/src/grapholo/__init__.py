"""Discrete holomorphy on graphs.

A function on a graph is harmonic when its mean oscillation vanishes at every
vertex, and holomorphic when both it and its square are harmonic.  This
package provides the checkers, the solvers for the power-sum systems behind
them, holomorphic extension dynamics on the 3-valent tree (with its hexagonal
tiling image and walk subshift), the two-valued dynamics on the triangle
graph, and the conjugate-part machinery for real harmonic functions on trees.
"""

from .core import (
    CheckReport,
    Graph,
    Tolerance,
    VertexFunction,
    grid_function,
    grid_patch,
    is_harmonic,
    is_holomorphic,
    is_n_holomorphic,
    laplacian,
    load_function,
    oscillation,
)
from .eisenstein import Eisenstein
from .moments import (
    MomentSystem,
    SolutionSet,
    find_roots,
    solve_pair,
    solve_pair2,
    solve_power_sums,
)
from .tree3 import (
    ChoiceAssignment,
    canonical_phi,
    chain_eval,
    enumerate_holomorphic,
    extend_full,
    extend_rooted,
    nholo_extend,
)
from .hexlattice import HexLattice, build_hex_lattice, hex_covering_check
from .walks import WalkShift, build_walk_shift, walk_sample
from .triangles import (
    BranchSelector,
    MarkedTriangle,
    ball_image_cloud,
    branch_monodromy,
    correspondence_residual,
    extend_tr3,
    involution_check,
    projective_step,
    singular_locus_distance,
    step_m,
    tr3_ball,
)
from .conjugate import (
    RealVertexFunction,
    bounded_holomorphic_t4,
    conjugate_step,
    find_conjugate,
    forced_propagation_infeasibility,
    projection_range,
)
from .trivalent import trivalent_feasibility

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
