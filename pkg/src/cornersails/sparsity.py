"""Sparsity bounds: minimum-support optima versus the minimum nonzero
entry, the support-size log bound, and constructive short kernel vectors.

The right sides involve sqrt(det(A A^T))/gcd(A), which is irrational in
general; every comparison against it is done on squares with exact
integers, never on floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import oracle
from .errors import DimensionTooLarge, Infeasible, SearchBudgetExceeded, SearchSpaceTooLarge
from .exact import IntMatrix, det, lp_feasible, minor_stats, rank
from .lattice import ProjectionContext, lift_int, project_lattice


def gram_det(A) -> int:
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    return det(M.mat_mul(M.T))


@dataclass(frozen=True)
class SparsityReport:
    """(rho+1)^(s-m) against sqrt(det(A A^T))/gcd(A), compared by squares."""

    z_star: tuple
    s: int
    rho: int
    exponent: int  # s - m
    lhs: int  # (rho+1)^max(s-m, 0)
    det_gram: int
    gcd: int
    holds: bool
    details: dict = field(default_factory=dict, compare=False)


def _squared_bound_holds(rho, exponent, det_gram, g):
    """(rho+1)^exponent <= sqrt(det_gram)/g, exactly, any exponent sign."""
    if exponent >= 0:
        return g * g * (rho + 1) ** (2 * exponent) <= det_gram
    return g * g <= det_gram * (rho + 1) ** (-2 * exponent)


def _row_basis(M: IntMatrix):
    """Row subset forming a basis of the row space (dependent rows dropped)."""
    keep = []
    for i in range(M.m):
        trial = keep + [i]
        if rank(M.row_subset(trial)) == len(trial):
            keep.append(i)
    return M.row_subset(keep)


def sparsity_report(z_star, A) -> SparsityReport:
    """Evaluate the support/minimum-entry bound for an integer point.

    Runs through the full-support reduction: restrict to the support
    columns, drop dependent rows, check the bound there, and assert the
    monotonicity that carries it back to the original matrix.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    z = tuple(int(v) for v in z_star)
    supp = [j for j in range(M.n) if z[j] != 0]
    s = len(supp)
    rho = min((abs(z[j]) for j in supp), default=0)
    stats = minor_stats(M)
    g = stats.gcd_minors
    dg = gram_det(M)
    holds = _squared_bound_holds(rho, s - M.m, dg, g)
    details = {}
    if supp and s < M.n:
        reduced = _row_basis(M.cols(supp))
        rstats = minor_stats(reduced)
        rdg = gram_det(reduced)
        details["reduced_m"] = reduced.m
        details["reduced_holds"] = _squared_bound_holds(rho, s - reduced.m, rdg, rstats.gcd_minors)
        # Monotonicity: sqrt(det)/gcd may only grow back in the full matrix.
        details["monotone"] = rdg * g * g <= dg * rstats.gcd_minors**2
    return SparsityReport(
        z_star=z,
        s=s,
        rho=rho,
        exponent=s - M.m,
        lhs=(rho + 1) ** max(s - M.m, 0),
        det_gram=dg,
        gcd=g,
        holds=holds,
        details=details,
    )


def min_support_optimum(A, b, c, box_cap=200):
    """A minimum-support optimal solution of max c.x over P(A,b) integer.

    The feasible set is enumerated exactly (it must be finite: a nonzero
    nonnegative kernel direction raises SearchSpaceTooLarge, as does a
    feasible point touching the box cap). Among the optima of minimum
    support, integer-hull vertices are preferred (the bound is proved for
    those, and one always exists); ties break lexicographically.

    Returns (z_star, SparsityReport).
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    b = tuple(int(v) for v in b)
    c = tuple(int(v) for v in c)
    rec = lp_feasible(
        [[M[i, j] for j in range(M.n)] for i in range(M.m)] + [[1] * M.n],
        [0] * M.m + [1],
    )
    if rec.feasible:
        raise SearchSpaceTooLarge("polyhedron is unbounded; not enumerable")
    box = oracle.BoxSpec((0,) * M.n, (box_cap,) * M.n)
    pts = oracle.enumerate_integer_points(M, b, ["nonneg"] * M.n, box)
    if not pts:
        raise Infeasible("no feasible integer point")
    if any(any(v >= box_cap for v in p) for p in pts):
        raise SearchSpaceTooLarge(f"a feasible point touches the cap {box_cap}")
    opt = max(sum(ci * xi for ci, xi in zip(c, p)) for p in pts)
    optima = [p for p in pts if sum(ci * xi for ci, xi in zip(c, p)) == opt]
    smin = min(sum(1 for v in p if v != 0) for p in optima)
    slim = [p for p in optima if sum(1 for v in p if v != 0) == smin]
    hull_vertices = [p for p in slim if oracle.is_extreme_point(p, pts)]
    pick_from = hull_vertices if hull_vertices else slim
    z = min(pick_from)
    report = sparsity_report(z, M)
    report.details["optimum"] = opt
    report.details["is_hull_vertex"] = bool(hull_vertices)
    report.details["min_support_count"] = len(slim)
    return z, report


def support_bound_check(z_star, A) -> bool:
    """Support size against m + log2(sqrt(det(A A^T))/gcd(A)), exactly.

    Equivalent squared form: 2^(2(s-m)) gcd^2 <= det(A A^T).
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    z = tuple(int(v) for v in z_star)
    s = sum(1 for v in z if v != 0)
    g = minor_stats(M).gcd_minors
    return _squared_bound_holds(1, s - M.m, gram_det(M), g)


MAX_BV_DIM = 5


def bv_short_vectors(A):
    """n-m independent kernel vectors with a small sup-norm product.

    Enumerates kernel lattice points in growing sup-norm shells and greedily
    collects independent ones; the product of the collected norms satisfies
    prod <= sqrt(det(A A^T))/gcd(A), which also caps the shell radius, so
    the search is self-terminating. Exceeding that cap is a bug signal.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    k = M.n - M.m
    if k > MAX_BV_DIM:
        raise DimensionTooLarge(f"n - m = {k} > {MAX_BV_DIM}")
    stats = minor_stats(M)
    g = stats.gcd_minors
    dg = gram_det(M)
    radius_cap = math.isqrt(dg // (g * g))

    basis = None
    for idx in _basis_candidates(M):
        basis = idx
        break
    ctx = ProjectionContext(M, (0,) * M.m, basis)
    L = project_lattice(ctx)

    chosen = []
    for radius in range(1, radius_cap + 1):
        shell = set()
        for u in L.enumerate_box((-radius,) * k, (radius,) * k):
            x = lift_int(u, ctx)
            norm = max(abs(v) for v in x) if any(x) else 0
            if norm != radius:
                continue
            # canonical sign: first nonzero entry positive
            lead = next(v for v in x if v != 0)
            shell.add(x if lead > 0 else tuple(-v for v in x))
        for x in sorted(shell):
            if rank([list(y) for y in chosen] + [list(x)]) == len(chosen) + 1:
                chosen.append(x)
                if len(chosen) == k:
                    prod = 1
                    for y in chosen:
                        prod *= max(abs(v) for v in y)
                    if prod * prod * g * g > dg:
                        raise SearchBudgetExceeded("norm product exceeds the certified bound")
                    return chosen
    raise SearchBudgetExceeded(f"no {k} independent vectors within radius {radius_cap}")


def _basis_candidates(M: IntMatrix):
    from itertools import combinations

    for idx in combinations(range(M.n), M.m):
        if det(M.cols(idx)) != 0:
            yield idx
