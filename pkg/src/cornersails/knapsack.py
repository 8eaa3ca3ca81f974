"""Knapsack specializations: semigroup membership, corner vertices inside
the knapsack polytope, the single-row transference bound, LP/IP values and
the integrality gap with its case bounds.

The privileged coordinate is the first one: the LP vertex under study is
(b/a_1) e_1 and the projected lattice is the congruence class modulo a_1.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .corner import corner_vertices
from .errors import NotInSemigroup, SearchSpaceTooLarge
from .exact import IntMatrix
from .lattice import ProjectionContext
from .transference import TransferenceReport, proximity

MAX_B = 10**6
MAX_A1 = 10**4


@dataclass(frozen=True)
class KnapsackInstance:
    """Positive primitive row a (n >= 2, gcd 1), right side b, optional costs."""

    a: tuple
    b: int
    c: tuple | None = None

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b))
        if self.c is not None:
            object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if len(a) < 2:
            raise ValueError("n >= 2 required")
        if any(x <= 0 for x in a):
            raise ValueError("entries of a must be positive")
        if math.gcd(*a) != 1:
            raise ValueError("gcd(a) must be 1")
        if self.b < 0:
            raise ValueError("b must be nonnegative")
        if self.c is not None and len(self.c) != len(a):
            raise ValueError("c has wrong length")


def _check_scale(a, b):
    if b > MAX_B or a[0] > MAX_A1:
        raise SearchSpaceTooLarge(f"b={b}, a_1={a[0]} beyond the residue DP caps")


def knapsack_context(a, b) -> ProjectionContext:
    return ProjectionContext(IntMatrix([list(a)]), (b,), (0,))


def in_semigroup(a, b):
    """Representability of b as a nonnegative integer combination of a.

    Dijkstra over residues modulo a_1 computes, per residue class, the least
    value reachable with the remaining coordinates; b is representable iff it
    is at least that threshold in its own class. Returns (flag, witness).
    """
    a = tuple(int(x) for x in a)
    b = int(b)
    if b < 0:
        return False, None
    _check_scale(a, b)
    a1 = a[0]
    dist = {0: 0}
    parent = {}
    heap = [(0, 0)]
    while heap:
        val, res = heapq.heappop(heap)
        if dist.get(res, None) != val:
            continue
        for i in range(1, len(a)):
            nres = (res + a[i]) % a1
            nval = val + a[i]
            if nval < dist.get(nres, nval + 1):
                dist[nres] = nval
                parent[nres] = (res, i)
                heapq.heappush(heap, (nval, nres))
    base = dist.get(b % a1)
    if base is None or base > b:
        return False, None
    # Greedy backtrack: every residue with a positive distance has a coin
    # whose removal lands exactly on the distance of the previous residue.
    z = [0] * len(a)
    res, val = b % a1, base
    while val > 0:
        for i in range(1, len(a)):
            prev = (res - a[i]) % a1
            if a[i] <= val and dist.get(prev) == val - a[i]:
                z[i] += 1
                res, val = prev, val - a[i]
                break
        else:
            raise AssertionError("inconsistent residue table")
    z[0] = (b - base) // a1
    return True, tuple(z)


def corner_vertex_in_P(a, b):
    """A corner vertex that survives inside the knapsack polytope.

    Among the corner vertices, the ones maximizing the first coordinate are
    nonnegative whenever b is representable; ties break lexicographically on
    the projected part.
    """
    ok, _ = in_semigroup(a, b)
    if not ok:
        raise NotInSemigroup(f"{b} is not representable by {a}")
    cv = corner_vertices(knapsack_context(a, b))
    top = max(z[0] for z in cv.lifted)
    z_star = min((z for z in cv.lifted if z[0] == top), key=lambda z: z[1:])
    if any(v < 0 for v in z_star):
        raise AssertionError("selected corner vertex left the knapsack polytope")
    return z_star


def check_theorem3(a, b) -> TransferenceReport:
    """Single-row transference at the vertex (b/a_1) e_1.

    The r >= 2 case must hold strictly; a non-strict instance would be a
    bug signal, so holds is recorded as the strict comparison.
    """
    inst = KnapsackInstance(a, b)
    a, b = inst.a, inst.b
    z = corner_vertex_in_P(a, b)
    n = len(a)
    x = tuple(Fraction(b, a[0]) if i == 0 else Fraction(0) for i in range(n))
    r = sum(1 for v in z[1:] if v != 0)
    delta = proximity(x, z)
    amax = max(a)
    if r == 0:
        rhs = Fraction(0)
        holds = all(Fraction(zi) == xi for zi, xi in zip(z, x))
        tight = holds
    elif r == 1:
        rhs = Fraction(amax - 1)
        holds = delta <= rhs
        tight = delta == rhs
    else:
        rhs = Fraction(amax)
        lhs = delta * Fraction(2**r, r)
        holds = lhs < rhs  # strict in this case
        tight = False
    return TransferenceReport(
        theorem_id="thm3",
        x_star=x,
        z_star=z,
        r=r,
        d=0,
        delta=delta,
        rhs=rhs,
        holds=holds,
        tight=tight,
        details={"a_max": amax},
    )


def lp_value(c, a, b) -> Fraction:
    """Optimal value of min c.x over the knapsack simplex."""
    return min(Fraction(ci * b, ai) for ci, ai in zip(c, a))


def lp_vertex(c, a, b) -> int:
    """Index of the minimizing simplex vertex, lex-least among ties."""
    vals = [Fraction(ci * b, ai) for ci, ai in zip(c, a)]
    return vals.index(min(vals))


def ip_value(c, a, b):
    """Exact integer optimum of min c.x over a.x = b, x >= 0.

    Shortest-path dynamic program over right-side values 0..b with arc
    costs c_i; a pure residue-space program cannot carry general signed
    costs exactly, so the values themselves are the states. Returns
    (optimum, argmin) with the lexicographically smallest argmin, recovered
    coordinate by coordinate from suffix tables.
    """
    inst = KnapsackInstance(a, b, tuple(c))
    a, b, c = inst.a, inst.b, inst.c
    _check_scale(a, b)
    ok, _ = in_semigroup(a, b)
    if not ok:
        raise NotInSemigroup(f"{b} is not representable by {a}")
    n = len(a)
    # tables[i][v] = min cost of writing v with coordinates i..n-1, None if impossible
    cur = [None] * (b + 1)
    cur[0] = 0
    tables = [None] * (n + 1)
    tables[n] = cur
    for i in range(n - 1, -1, -1):
        cur = tables[i + 1][:]
        ai, ci = a[i], c[i]
        for v in range(ai, b + 1):
            below = cur[v - ai]
            if below is not None:
                cand = below + ci
                if cur[v] is None or cand < cur[v]:
                    cur[v] = cand
        tables[i] = cur
    opt = tables[0][b]
    z = []
    rem, target = b, opt
    for i in range(n):
        nxt = tables[i + 1]
        for v in range(rem // a[i] + 1):
            rest = rem - a[i] * v
            if nxt[rest] is not None and c[i] * v + nxt[rest] == target:
                z.append(v)
                rem, target = rest, target - c[i] * v
                break
        else:
            raise AssertionError("DP backtrack failed")
    return opt, tuple(z)


@dataclass(frozen=True)
class GapVerdict:
    z_star: tuple
    r: int
    bound: Fraction
    strict: bool
    holds: bool


@dataclass(frozen=True)
class GapReport:
    """Integrality gap with the case bound for every qualifying vertex."""

    gap: Fraction
    lp: Fraction
    ip: int
    permutation: tuple  # renumbering applied so the LP optimum sits at e_1
    verdicts: tuple
    chain_holds: bool  # gap <= delta * sum of |c_i| over the moved support
    details: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self):
        return all(v.holds for v in self.verdicts) and self.chain_holds


def integrality_gap_report(c, a, b) -> GapReport:
    """Exact integrality gap and its transference-based case bounds.

    Coordinates are renumbered so the optimal LP vertex is (b/a_1) e_1 (the
    permutation is recorded). Every corner vertex that stays inside the
    knapsack polytope gets a verdict; the bound is strict for r >= 2.
    """
    inst = KnapsackInstance(a, b, tuple(c))
    a, b, c = inst.a, inst.b, inst.c
    i0 = lp_vertex(c, a, b)
    perm = (i0,) + tuple(i for i in range(len(a)) if i != i0)
    ap = tuple(a[i] for i in perm)
    cp = tuple(c[i] for i in perm)
    lp = lp_value(cp, ap, b)
    ip, _ = ip_value(cp, ap, b)
    gap = Fraction(ip) - lp
    amax = max(ap)
    cmax = max(abs(x) for x in cp) if cp else 0
    x = tuple(Fraction(b, ap[0]) if i == 0 else Fraction(0) for i in range(len(ap)))
    verdicts = []
    chain_holds = True
    cv = corner_vertices(knapsack_context(ap, b))
    for z in cv.lifted:
        if any(v < 0 for v in z):
            continue
        r = sum(1 for v in z[1:] if v != 0)
        if r == 0:
            holds = gap == 0
            verdicts.append(GapVerdict(z, r, Fraction(0), False, holds))
        elif r == 1:
            bound = Fraction(2 * (amax - 1) * cmax)
            verdicts.append(GapVerdict(z, r, bound, False, gap <= bound))
        else:
            bound = Fraction(r * (r + 1), 2**r) * amax * cmax
            verdicts.append(GapVerdict(z, r, bound, True, gap < bound))
        delta = proximity(x, z)
        moved = [i for i in range(len(ap)) if Fraction(x[i]) != z[i]]
        chain = delta * sum(abs(Fraction(cp[i])) for i in moved)
        if gap > chain:
            chain_holds = False
    return GapReport(
        gap=gap,
        lp=lp,
        ip=ip,
        permutation=perm,
        verdicts=tuple(verdicts),
        chain_holds=chain_holds,
        details={"a": ap, "c": cp},
    )


def aho_and_sparsity_exist(a, b):
    """Witnesses for the distance and sparsity existence bounds.

    Returns (z, z_sparse): an integer point within max(a) - 1 of the LP
    vertex in the sup norm, and one with support at most 1 + log2(min(a)).
    Both exist whenever b is representable; failure is a bug signal.
    """
    inst = KnapsackInstance(a, b)
    a, b = inst.a, inst.b
    _check_scale(a, b)
    ok, _ = in_semigroup(a, b)
    if not ok:
        raise NotInSemigroup(f"{b} is not representable by {a}")
    pts = oracle.knapsack_feasible_points(a, b)
    x = [Fraction(b, a[0])] + [Fraction(0)] * (len(a) - 1)
    amax = max(a)
    aho = None
    for z in pts:
        if proximity(x, z) <= amax - 1:
            aho = z
            break
    sparse = None
    for z in pts:
        s = sum(1 for v in z if v != 0)
        if 2 ** max(s - 1, 0) <= min(a):  # s <= 1 + log2(min a), compared exactly
            sparse = z
            break
    if aho is None or sparse is None:
        raise AssertionError("existence witnesses not found; bug signal")
    return aho, sparse
