"""Independent brute-force reference implementations.

Everything here is allowed to be exponential; the point is that the results
are obtained by plain enumeration plus generic exact convex-position tests,
so they can validate the bound-driven fast paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    Infeasible,
    NoBasisContainsTau,
    SearchSpaceTooLarge,
    Unstable,
)
from .exact import IntMatrix, det, extreme_rays, lp_feasible, minor_stats, primitive, rank, solve_rat
from .lattice import ProjectionContext, project_lattice

POINT_CAP = 500_000


@dataclass(frozen=True)
class BoxSpec:
    """Finite enumeration window with a growth schedule."""

    lower: tuple
    upper: tuple
    growth_factor: int = 2
    max_rounds: int = 8

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(int(x) for x in self.lower))
        object.__setattr__(self, "upper", tuple(int(x) for x in self.upper))
        if len(self.lower) != len(self.upper):
            raise ValueError("lower/upper dimension mismatch")
        if any(l > u for l, u in zip(self.lower, self.upper)):
            raise ValueError("lower must be <= upper componentwise")
        if self.growth_factor < 2:
            raise ValueError("growth_factor must be >= 2")


@dataclass(frozen=True)
class StabilityCertificate:
    rounds_used: int
    final_upper: int
    region_bound: int


def enumerate_integer_points(A, b, sign_pattern, box: BoxSpec):
    """All integer points in the box with A x = b and the sign pattern.

    sign_pattern entries are 'free' or 'nonneg'. Depth-first search over
    coordinates with per-row reachable-sum pruning; output is lex sorted.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    b = tuple(int(v) for v in b)
    n = M.n
    lo = list(box.lower)
    hi = list(box.upper)
    for j, s in enumerate(sign_pattern):
        if s == "nonneg":
            lo[j] = max(lo[j], 0)
        elif s != "free":
            raise ValueError(f"bad sign pattern entry {s!r}")
    if any(l > h for l, h in zip(lo, hi)):
        return []
    # suffix_min/max[i][j]: extreme values of sum_{k>=j} A[i][k] x_k over the box
    suffix_min = [[0] * (n + 1) for _ in range(M.m)]
    suffix_max = [[0] * (n + 1) for _ in range(M.m)]
    for i in range(M.m):
        for j in range(n - 1, -1, -1):
            a = M[i, j]
            cand = (a * lo[j], a * hi[j])
            suffix_min[i][j] = suffix_min[i][j + 1] + min(cand)
            suffix_max[i][j] = suffix_max[i][j + 1] + max(cand)
    out = []

    def walk(j, partial):
        if j == n:
            if all(partial[i] == b[i] for i in range(M.m)):
                out.append(tuple(cur))
            return
        for i in range(M.m):
            rem = b[i] - partial[i]
            if not (suffix_min[i][j] <= rem <= suffix_max[i][j]):
                return
        for v in range(lo[j], hi[j] + 1):
            cur.append(v)
            walk(j + 1, [partial[i] + M[i, j] * v for i in range(M.m)])
            cur.pop()

    cur = []
    walk(0, [0] * M.m)
    return out


def brute_ilp_opt(A, b, c, sense, box: BoxSpec):
    """Exact optimum of c.x over the enumerated feasible set.

    sense is 'min' or 'max'. Returns (optimum, argmins) where argmins holds
    every optimal point in lex order.
    """
    pts = enumerate_integer_points(A, b, ["nonneg"] * len(c), box)
    if not pts:
        raise Infeasible("no feasible point in the box")
    sign = 1 if sense == "min" else -1
    best = None
    arg = []
    for p in pts:
        v = sign * sum(ci * xi for ci, xi in zip(c, p))
        if best is None or v < best:
            best, arg = v, [p]
        elif v == best:
            arg.append(p)
    return sign * best, tuple(arg)


# ---------------------------------------------------------------------------
# Exact extreme points of conv(points) + cone(rays)
# ---------------------------------------------------------------------------


def _in_hull_plus_cone(u, pts, rays):
    d = len(u)
    cols = list(pts) + list(rays)
    eq = [[(p[i] if k < len(pts) else rays[k - len(pts)][i]) for k, p in enumerate(cols)] for i in range(d)]
    eq.append([1] * len(pts) + [0] * len(rays))
    rhs = list(u) + [1]
    return lp_feasible(eq, rhs)


def _certificate_direction(cert, d):
    """Integer direction c with c.u > c.p for hull members p, from Farkas y."""
    c = [Fraction(y) for y in cert[:d]]
    lcm = 1
    for x in c:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in c)


def extreme_points(points, rays=()):
    """Extreme points of conv(points) + cone(rays), rays nonnegative.

    Incremental scheme: keep a set E of confirmed extreme points; a point
    inside conv(E) + cone is discarded, otherwise the separating direction
    from the Farkas certificate is maximized over all points and the
    lexicographically smallest maximizer (always extreme, because the rays
    are nonnegative) joins E. Every test is an exact rational LP.
    """
    pts = sorted(set(map(tuple, points)))
    if not pts:
        return []
    if any(any(x < 0 for x in r) for r in rays):
        raise ValueError("rays must be nonnegative")
    E = [pts[0]]  # lex-min point is always extreme here
    Eset = {pts[0]}
    for u in pts:
        if u in Eset:
            continue
        while True:
            res = _in_hull_plus_cone(u, E, rays)
            if res.feasible:
                break
            c = _certificate_direction(res.certificate, len(u))
            best = None
            bestval = None
            for p in pts:
                v = sum(ci * xi for ci, xi in zip(c, p))
                if bestval is None or v > bestval or (v == bestval and p < best):
                    best, bestval = p, v
            E.append(best)
            Eset.add(best)
            if best == u:
                break
    return sorted(E)


def is_extreme_point(p, points):
    """Whether p is a vertex of conv(points), by separation search.

    Scales to large point sets: the LP only ever sees the small working set
    of active points, and candidate violators are found by integer scans.
    """
    pts = [tuple(q) for q in points]
    p = tuple(p)
    others = [q for q in pts if q != p]
    if not others:
        return True
    T = [min(others)]
    while True:
        res = _in_hull_plus_cone(p, T, ())
        if res.feasible:
            return False
        c = _certificate_direction(res.certificate, len(p))
        target = sum(ci * xi for ci, xi in zip(c, p))
        best = None
        bestval = None
        for q in others:
            v = sum(ci * xi for ci, xi in zip(c, q))
            if v >= target and (bestval is None or v > bestval or (v == bestval and q < best)):
                best, bestval = q, v
        if best is None:
            return True  # c strictly separates p from every other point
        T.append(best)


# ---------------------------------------------------------------------------
# Corner polyhedron vertices by box growing
# ---------------------------------------------------------------------------


def _greedy_basis_containing(A, tau):
    cols = list(tau)
    if rank(A.cols(cols).T if cols else [[0] * A.m]) < len(cols):
        raise NoBasisContainsTau("tau columns are dependent")
    for j in range(A.n):
        if len(cols) == A.m:
            break
        if j in cols:
            continue
        trial = sorted(cols + [j])
        if rank(A.cols(trial)) == len(trial):
            cols = trial
    if len(cols) < A.m or det(A.cols(cols)) == 0:
        raise NoBasisContainsTau("tau cannot be extended to a nonsingular basis")
    return tuple(cols)


def brute_corner_vertices(A, b, gamma=None, tau=None, box: BoxSpec | None = None):
    """Stable vertices of the corner polyhedron, by brute enumeration.

    Enumerates lattice points of the projected affine lattice in a growing
    box, discards points dominated in the recession cone, and keeps the
    exact extreme points. A vertex set is returned once two consecutive
    rounds agree and the product-bound candidate region fits strictly inside
    the smaller box; otherwise Unstable is raised.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    b = tuple(int(v) for v in b)
    if (gamma is None) == (tau is None):
        raise ValueError("exactly one of gamma/tau must be given")
    if gamma is not None:
        free = tuple(sorted(gamma))
        basis = free
        if len(basis) != M.m:
            raise ValueError("gamma must be a full basis")
    else:
        free = tuple(sorted(tau))
        basis = _greedy_basis_containing(M, free)
    ctx = ProjectionContext(M, b, basis)
    L = project_lattice(ctx)
    d = M.n - M.m
    gbar = ctx.gamma_bar
    extras = tuple(i for i in basis if i not in free)  # basic coords that must stay >= 0

    D = ctx.det_gamma()
    inv_cols = [solve_rat(M.cols(basis), [1 if i == k else 0 for i in range(M.m)]) for k in range(M.m)]
    adj = [[int(inv_cols[k][i] * D) for k in range(M.m)] for i in range(M.m)]  # adj = D * A_basis^{-1}
    adj_b = [sum(adj[i][k] * b[k] for k in range(M.m)) for i in range(M.m)]
    Abar = [[M[i, j] for j in gbar] for i in range(M.m)]
    adj_Abar = [[sum(adj[i][k] * Abar[k][j] for k in range(M.m)) for j in range(d)] for i in range(M.m)]

    def lift_point(u):
        vals = []
        for i in range(M.m):
            num = adj_b[i] - sum(adj_Abar[i][j] * u[j] for j in range(d))
            if num % D != 0:
                return None
            vals.append(num // D)
        full = [0] * M.n
        for k, j in enumerate(basis):
            full[j] = vals[k]
        for k, j in enumerate(gbar):
            full[j] = u[k]
        return tuple(full)

    cone_rows = [tuple(1 if k == j else 0 for k in range(d)) for j in range(d)]
    sgn = 1 if D > 0 else -1
    for k, i in enumerate(basis):
        if i in free:
            continue
        cone_rows.append(primitive([-sgn * adj_Abar[k][j] for j in range(d)]))
    rays = extreme_rays(cone_rows, d)

    stats = minor_stats(M)
    if gamma is not None:
        region_bound = L.determinant
    else:
        region_bound = (d ** (M.m - len(free))) * stats.sigma // stats.gcd_minors

    growth = box.growth_factor if box else 2
    max_rounds = box.max_rounds if box else 8
    if box is not None:
        u0 = max(max(box.upper), region_bound, 2)
    else:
        u0 = max(region_bound, 2)

    # Box edge kept small enough to enumerate; the product-bound region
    # (which certifies candidate coverage) is walked separately, so large
    # product bounds do not force gigantic boxes.
    box_edge = u0
    while (box_edge + 1) ** d // max(L.determinant, 1) > POINT_CAP // 4 and box_edge > 4:
        box_edge //= 2

    prev = None
    prev_bound = None
    for rnd in range(max_rounds):
        bound = u0 * growth**rnd
        edge = box_edge * growth**rnd
        if (edge + 1) ** d // max(L.determinant, 1) > POINT_CAP:
            raise SearchSpaceTooLarge(f"box [0,{edge}]^{d} too large to enumerate")
        pts = set(L.enumerate_product_region(bound))
        pts.update(L.enumerate_box((0,) * d, (edge,) * d))
        if len(pts) > POINT_CAP:
            raise SearchSpaceTooLarge(f"{len(pts)} candidate points at round {rnd}")
        minimal = []  # (profile, u) with profile = u + extra basic coords
        lifted = {}
        for u in sorted(pts):
            full = lift_point(u)
            if full is None:
                continue
            if any(full[i] < 0 for i in extras):
                continue
            profile = u + tuple(full[i] for i in extras)
            if any(all(pk <= qk for pk, qk in zip(q, profile)) for q, _ in minimal):
                continue
            minimal.append((profile, u))
            lifted[u] = full
        verts_u = extreme_points([u for _, u in minimal], rays)
        verts = tuple(sorted(lifted[u] for u in verts_u))
        if prev is not None and verts == prev and prev_bound >= region_bound:
            return list(verts), StabilityCertificate(rnd + 1, bound, region_bound)
        prev, prev_bound = verts, bound
    raise Unstable(f"no stable vertex set after {max_rounds} rounds")


# ---------------------------------------------------------------------------
# Knapsack feasible sets and integer hulls
# ---------------------------------------------------------------------------


def knapsack_feasible_points(a, b, cap=POINT_CAP):
    """All z >= 0 integer with a.z = b, for positive a, in lex order."""
    a = tuple(int(x) for x in a)
    b = int(b)
    if any(x <= 0 for x in a):
        raise ValueError("positive coefficients required")
    if b < 0:
        return []
    n = len(a)
    out = []

    def rec(i, rem):
        if len(out) > cap:
            raise SearchSpaceTooLarge(f"more than {cap} feasible points")
        if i == n - 1:
            if rem % a[i] == 0:
                out.append(tuple(cur + [rem // a[i]]))
            return
        for v in range(rem // a[i] + 1):
            cur.append(v)
            rec(i + 1, rem - v * a[i])
            cur.pop()

    cur = []
    rec(0, b)
    return out


def integer_hull_vertices(a, b, cap=50_000):
    """Exact vertex list of the integer hull of the knapsack polytope."""
    pts = knapsack_feasible_points(a, b)
    if not pts:
        raise Infeasible("b is not representable")
    if len(pts) > cap:
        raise SearchSpaceTooLarge(f"{len(pts)} feasible points exceed the hull cap {cap}")
    return extreme_points(pts)


def _knapsack_argopt(a, b, c, lex_large=False):
    """(max of c.x, argmax) over {x >= 0 integer : a.x = b}, a positive.

    Value-space dynamic program; the argmax is the lexicographically
    smallest maximizer, or the largest when lex_large is set. Returns
    (None, None) when b is not representable.
    """
    n = len(a)
    if b > 2_000_000:
        raise SearchSpaceTooLarge(f"right side {b} beyond the DP cap")
    cur = [None] * (b + 1)
    cur[0] = 0
    tables = [None] * (n + 1)
    tables[n] = cur
    for i in range(n - 1, -1, -1):
        cur = tables[i + 1][:]
        ai, ci = a[i], c[i]
        for v in range(ai, b + 1):
            below = cur[v - ai]
            if below is not None and (cur[v] is None or below + ci > cur[v]):
                cur[v] = below + ci
        tables[i] = cur
    opt = tables[0][b]
    if opt is None:
        return None, None
    z = []
    rem, target = b, opt
    for i in range(n):
        nxt = tables[i + 1]
        rng = range(rem // a[i], -1, -1) if lex_large else range(rem // a[i] + 1)
        for v in rng:
            rest = rem - a[i] * v
            if nxt[rest] is not None and c[i] * v + nxt[rest] == target:
                z.append(v)
                rem, target = rest, target - c[i] * v
                break
        else:
            raise AssertionError("DP backtrack failed")
    return opt, tuple(z)


def is_integer_hull_vertex(a, b, p):
    """Membership of p in the vertex set of the knapsack integer hull.

    Separation search against the whole feasible set without enumerating
    it: violators of a candidate separating direction are produced by an
    exact knapsack DP, so feasible sets far beyond enumeration scale are
    fine. p is a vertex iff some direction makes it the unique maximizer.
    """
    a = tuple(int(x) for x in a)
    b = int(b)
    p = tuple(int(x) for x in p)
    if len(p) != len(a) or any(v < 0 for v in p) or sum(ai * vi for ai, vi in zip(a, p)) != b:
        return False
    zero = (0,) * len(a)
    _, lo = _knapsack_argopt(a, b, zero)
    _, hi = _knapsack_argopt(a, b, zero, lex_large=True)
    if lo == hi == p:
        return True  # p is the only feasible point
    T = [lo if lo != p else hi]
    while True:
        res = _in_hull_plus_cone(p, T, ())
        if res.feasible:
            return False
        c = _certificate_direction(res.certificate, len(p))
        target = sum(ci * xi for ci, xi in zip(c, p))
        opt, q = _knapsack_argopt(a, b, c)
        if opt < target:
            raise AssertionError("feasible p scores above the DP maximum")
        if opt > target:
            T.append(q)
            continue
        # Maximum ties the score of p: p is a vertex iff it is unique.
        _, q_hi = _knapsack_argopt(a, b, c, lex_large=True)
        if q == q_hi == p:
            return True
        T.append(q if q != p else q_hi)
