"""Exact-arithmetic toolkit for Gomory corner polyhedra.

Corner polyhedron vertices are computed through sails of projected affine
lattices, and the proximity/sparsity transference inequalities relating
them to LP vertices are checked with machine-verifiable exact certificates.
"""

from .corner import (
    CornerVertexSet,
    Sail,
    choose_basis_prop2,
    corner_tau_vertices,
    corner_vertices,
    is_irreducible,
    orthant,
    sail_vertices,
)
from .exact import IntMatrix, MinorStats, Rat, det, extreme_rays, kernel_basis, lp_feasible, minor_stats
from .instances import (
    InstanceFile,
    gen_paper_2x4,
    gen_r1_family,
    gen_random,
    gen_sharpness,
    load_instance,
    save_instance,
)
from .knapsack import (
    KnapsackInstance,
    aho_and_sparsity_exist,
    check_theorem3,
    corner_vertex_in_P,
    in_semigroup,
    integrality_gap_report,
    ip_value,
    lp_value,
    lp_vertex,
)
from .lattice import AffineLattice, ProjectionContext, lift, lift_int, member, project_lattice
from .oracle import (
    BoxSpec,
    brute_corner_vertices,
    brute_ilp_opt,
    enumerate_integer_points,
    integer_hull_vertices,
    is_integer_hull_vertex,
)
from .sparsity import SparsityReport, bv_short_vectors, min_support_optimum, support_bound_check
from .transference import (
    TransferenceReport,
    check_product_bound,
    check_theorem1,
    check_theorem2,
    lemma4_bound,
    sum_product_holds,
)

__version__ = "0.1.0"

__all__ = [
    "AffineLattice",
    "BoxSpec",
    "CornerVertexSet",
    "InstanceFile",
    "IntMatrix",
    "KnapsackInstance",
    "MinorStats",
    "ProjectionContext",
    "Rat",
    "Sail",
    "SparsityReport",
    "TransferenceReport",
    "aho_and_sparsity_exist",
    "brute_corner_vertices",
    "brute_ilp_opt",
    "bv_short_vectors",
    "check_product_bound",
    "check_theorem1",
    "check_theorem2",
    "check_theorem3",
    "choose_basis_prop2",
    "corner_tau_vertices",
    "corner_vertex_in_P",
    "corner_vertices",
    "det",
    "enumerate_integer_points",
    "extreme_rays",
    "gen_paper_2x4",
    "gen_r1_family",
    "gen_random",
    "gen_sharpness",
    "in_semigroup",
    "integer_hull_vertices",
    "integrality_gap_report",
    "ip_value",
    "is_integer_hull_vertex",
    "is_irreducible",
    "kernel_basis",
    "lemma4_bound",
    "lift",
    "lift_int",
    "load_instance",
    "lp_feasible",
    "lp_value",
    "lp_vertex",
    "member",
    "min_support_optimum",
    "minor_stats",
    "orthant",
    "project_lattice",
    "sail_vertices",
    "save_instance",
    "sum_product_holds",
    "support_bound_check",
]
