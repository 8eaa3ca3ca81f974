"""Sails and corner polyhedra: irreducibility, vertex enumeration, lifting.

A sail is the convex hull of the points of an affine lattice inside a cone
(the nonnegative orthant unless stated). Its vertices are in bijection with
the vertices of the corner polyhedron via the coordinate-forgetting
projection, so everything here happens in the projected space and is lifted
back at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    ConeNotPointed,
    EmptySail,
    NoBasisContainsTau,
    InvalidVertex,
    PointOutsideCone,
    SailOracleMismatch,
)
from .exact import IntMatrix, det, inverse_times, lp_feasible, extreme_rays, primitive, rank
from .lattice import AffineLattice, ProjectionContext, lift_int, project_lattice


def orthant(d):
    """Inequality rows of the nonnegative orthant in R^d."""
    return tuple(tuple(1 if k == j else 0 for k in range(d)) for j in range(d))


def _cone_rows(C, d):
    if C is None:
        return orthant(d)
    rows = tuple(tuple(int(x) for x in row) for row in C)
    if any(len(r) != d for r in rows):
        raise ValueError("cone rows of wrong dimension")
    return rows


def _in_cone(p, rows):
    return all(sum(q[k] * p[k] for k in range(len(p))) >= 0 for q in rows)


@dataclass(frozen=True)
class Sail:
    """Vertex set of conv(lattice points inside the cone)."""

    lattice: AffineLattice
    cone: tuple
    vertices: tuple
    candidate_bound: int


@dataclass(frozen=True)
class CornerVertexSet:
    """Sail vertices together with their lifts into the full space."""

    ctx: ProjectionContext
    projected: Sail
    lifted: tuple


def is_irreducible(x, L: AffineLattice, C=None) -> bool:
    """Whether x cannot be split as a midpoint of lattice-congruent points.

    Equivalently, the polytope (-x + C) meet (x - C) contains no nonzero
    point of the direction lattice. The cone must contain x and, for the
    bounded enumeration below to cover the polytope, must sit inside the
    nonnegative orthant.
    """
    d = L.ambient_dim
    x = tuple(int(v) for v in x)
    rows = _cone_rows(C, d)
    if not _in_cone(x, rows):
        raise PointOutsideCone(f"{x} violates a cone inequality")
    direction = L.direction()
    # C inside the orthant confines the difference polytope to [-x, x].
    for v in direction.enumerate_box(tuple(-c for c in x), x):
        if not any(v):
            continue
        xplus = tuple(x[k] + v[k] for k in range(d))
        xminus = tuple(x[k] - v[k] for k in range(d))
        if _in_cone(xplus, rows) and _in_cone(xminus, rows):
            return False
    return True


def _product_bounded_points(L: AffineLattice, rows, bound):
    """Lattice points in the cone with prod(x_i + 1) <= bound."""
    return [p for p in L.enumerate_product_region(bound) if _in_cone(p, rows)]


def sail_vertices(L: AffineLattice, C=None, bound=None) -> Sail:
    """Exact vertex set of the sail of L inside the cone C.

    Candidates are the lattice points in the cone whose coordinate product
    prod(x_i + 1) stays within the bound (the lattice determinant by default,
    which is complete for the orthant). Reducible candidates are discarded,
    and a candidate survives iff an exact LP shows it is outside the convex
    hull of the others plus the recession cone.
    """
    d = L.ambient_dim
    if L.basis.n != d or L.determinant is None:
        raise ValueError("sail needs a full-dimensional lattice")
    rows = _cone_rows(C, d)
    if bound is None:
        if C is not None:
            raise ValueError("a candidate bound is required for a general cone")
        bound = L.determinant
    candidates = _product_bounded_points(L, rows, bound)
    if not candidates:
        raise EmptySail(f"no lattice point in the cone with product bound {bound}")
    irreducible = [x for x in candidates if is_irreducible(x, L, rows)]
    rays = extreme_rays(rows, d)
    verts = []
    for x in irreducible:
        others = [y for y in irreducible if y != x]
        if not others:
            verts.append(x)
            continue
        eq = [[p[i] for p in others] + [r[i] for r in rays] for i in range(d)]
        eq.append([1] * len(others) + [0] * len(rays))
        rhs = list(x) + [1]
        if not lp_feasible(eq, rhs).feasible:
            verts.append(x)
    return Sail(lattice=L, cone=rows, vertices=tuple(sorted(verts)), candidate_bound=bound)


def corner_vertices(ctx: ProjectionContext) -> CornerVertexSet:
    """Vertices of the corner polyhedron for the basis in ctx.

    Sail vertices of the projected affine lattice in the orthant, lifted
    back through the basic coordinates.
    """
    L = project_lattice(ctx)
    sail = sail_vertices(L)
    lifted = tuple(lift_int(u, ctx) for u in sail.vertices)
    return CornerVertexSet(ctx=ctx, projected=sail, lifted=lifted)


def choose_basis_prop2(A, z_star, tau):
    """Basis gamma containing tau maximizing |det A_gamma| * prod(z*_i + 1).

    The product runs over gamma minus tau (the tau factors are common to all
    admissible bases, and keeping them out makes the rule well defined even
    when some z*_i with i in tau is negative). Ties break lexicographically.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    z = tuple(int(v) for v in z_star)
    tau = tuple(sorted(tau))
    rest = [j for j in range(M.n) if j not in tau]
    best = None
    best_key = None
    for extra in combinations(rest, M.m - len(tau)):
        gamma = tuple(sorted(tau + extra))
        dg = det(M.cols(gamma))
        if dg == 0:
            continue
        score = abs(dg)
        for i in gamma:
            if i not in tau:
                score *= z[i] + 1
        if best is None or score > best_key or (score == best_key and gamma < best):
            best, best_key = gamma, score
    if best is None:
        raise NoBasisContainsTau("no nonsingular basis contains tau")
    return best


def careful_choice_holds(A, z_star, tau, gamma):
    """The row-sum inequality the maximizing basis is guaranteed to satisfy.

    For i in gamma minus tau:  z*_i + 1 >= (1/r) sum_j |q_ij| (z*_j + 1)
    with q = -A_gamma^{-1} A_gammabar and r the support size of z* off gamma.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    z = tuple(int(v) for v in z_star)
    gamma = tuple(sorted(gamma))
    gbar = [j for j in range(M.n) if j not in gamma]
    if not gbar:
        return True
    r = sum(1 for j in gbar if z[j] != 0)
    if r == 0:
        return True
    q = inverse_times(M.cols(gamma), M.cols(gbar))
    for k, i in enumerate(gamma):
        if i in tau:
            continue
        total = sum(abs(q[k][jj]) * (z[j] + 1) for jj, j in enumerate(gbar))
        if (z[i] + 1) * r < total:
            return False
    return True


def tau_cone_rows(ctx: ProjectionContext, tau):
    """Cone inequalities for the Gomory relaxation with respect to tau.

    In the projected space the nonnegativity of the basic coordinates in
    gamma minus tau becomes q_i . x >= 0; the rows come out integral after
    clearing |det A_gamma|.
    """
    A, gamma = ctx.A, ctx.gamma
    gbar = ctx.gamma_bar
    d = len(gbar)
    rows = list(orthant(d))
    q = inverse_times(A.cols(gamma), A.cols(gbar))
    for k, i in enumerate(gamma):
        if i in tau:
            continue
        lcm = 1
        for x in q[k]:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        rows.append(primitive([int(-q[k][j] * lcm) for j in range(d)]))
    return tuple(rows)


def vertex_from_support(A, b, tau):
    """The basic solution whose support is tau, validated as a vertex."""
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    tau = tuple(sorted(tau))
    if tau:
        sub = M.cols(tau)
        if rank(sub) < len(tau):
            raise InvalidVertex("tau columns are dependent")
        res = lp_feasible(
            [[sub[i, j] for j in range(len(tau))] for i in range(M.m)],
            list(b),
            nonneg_vars=(),
        )
        if not res.feasible:
            raise InvalidVertex("A_tau x = b is inconsistent")
        x_tau = res.witness
    else:
        x_tau = ()
        if any(v != 0 for v in b):
            raise InvalidVertex("empty tau requires b = 0")
    if any(v <= 0 for v in x_tau):
        raise InvalidVertex("tau is not the exact support of a feasible vertex")
    x = [Fraction(0)] * M.n
    for k, j in enumerate(tau):
        x[j] = Fraction(x_tau[k])
    return tuple(x)


def corner_tau_vertices(A, b, tau, box=None) -> CornerVertexSet:
    """Vertices of the corner polyhedron of the Gomory relaxation w.r.t. tau.

    Fast path: sail of the projected lattice inside the tau cone for a
    basis picked by the maximizing rule, enumerated within the worst-case
    product bound. The result is cross-validated against the box-growing
    oracle; a mismatch raises rather than being patched, since either side
    being wrong is a bug.
    """
    from . import oracle

    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    b = tuple(int(v) for v in b)
    tau = tuple(sorted(tau))
    vertex_from_support(M, b, tau)  # validates the precondition

    brute, cert = oracle.brute_corner_vertices(M, b, tau=tau, box=box)
    z0 = brute[0]
    gamma = choose_basis_prop2(M, z0, tau)
    ctx = ProjectionContext(M, b, gamma)
    L = project_lattice(ctx)
    d = M.n - M.m
    bound = (d ** (M.m - len(tau))) * L.determinant

    try:
        rows = tau_cone_rows(ctx, tau)
        sail = sail_vertices(L, rows, bound)
        lifted = tuple(lift_int(u, ctx) for u in sail.vertices)
    except (EmptySail, ConeNotPointed):
        sail = None
        lifted = None

    if lifted is not None and sorted(lifted) != sorted(brute):
        raise SailOracleMismatch(
            f"sail path {sorted(lifted)} != oracle {sorted(brute)} (tau={tau}, gamma={gamma})"
        )
    if sail is None:
        # Certified fallback: rebuild the sail object from the oracle result.
        proj = tuple(sorted(tuple(v[j] for j in ctx.gamma_bar) for v in brute))
        sail = Sail(lattice=L, cone=tau_cone_rows(ctx, tau), vertices=proj, candidate_bound=bound)
        lifted = tuple(lift_int(u, ctx) for u in sail.vertices)
    return CornerVertexSet(ctx=ctx, projected=sail, lifted=lifted)
