"""Exact integer/rational linear algebra: determinants, minors, kernel
lattice bases, rational LP feasibility and extreme rays of small cones.

Everything here is exact. Matrices carry arbitrary-precision Python ints,
rationals are ``fractions.Fraction``. There is deliberately no floating
point anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConeNotPointed, DimensionTooLarge, RankDeficient

Rat = Fraction


def _as_rows(mat):
    """Coerce an IntMatrix or nested sequence into a list of int lists."""
    if isinstance(mat, IntMatrix):
        return [list(r) for r in mat.rows]
    rows = [list(r) for r in mat]
    for row in rows:
        for x in row:
            if not isinstance(x, int):
                raise TypeError(f"integer entry expected, got {x!r}")
    return rows


class IntMatrix:
    """Immutable integer matrix, row major, m >= 1 and n >= 1."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, rows):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("IntMatrix must have at least one row and column")
        n = len(data[0])
        if any(len(r) != n for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "m", len(data))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", data)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("IntMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self, idx):
        """Submatrix with the given column indices, in the given order."""
        return IntMatrix([[r[j] for j in idx] for r in self.rows])

    def row_subset(self, idx):
        return IntMatrix([self.rows[i] for i in idx])

    def transpose(self):
        return IntMatrix([self.col(j) for j in range(self.n)])

    @property
    def T(self):
        return self.transpose()

    @staticmethod
    def identity(n):
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def mat_vec(self, v):
        return tuple(sum(r[j] * v[j] for j in range(self.n)) for r in self.rows)

    def mat_mul(self, other):
        o = other if isinstance(other, IntMatrix) else IntMatrix(other)
        if self.n != o.m:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [sum(self.rows[i][k] * o.rows[k][j] for k in range(self.n)) for j in range(o.n)]
                for i in range(self.m)
            ]
        )


@dataclass(frozen=True)
class MinorStats:
    """Subdeterminant statistics of a full-row-rank integer matrix."""

    sigma: int
    gcd_minors: int
    basis_count: int


def det(mat) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    The 0x0 determinant is 1, which keeps empty-basis edge cases uniform.
    """
    a = [list(r) for r in _as_rows(mat)]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[-1][-1]


def rank(mat) -> int:
    """Exact rank via integer row echelon reduction."""
    a = [list(r) for r in (_as_rows(mat))]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            if a[i][c] != 0:
                g = a[r][c]
                f = a[i][c]
                a[i] = [g * a[i][j] - f * a[r][j] for j in range(n)]
        r += 1
        if r == m:
            break
    return r


def minor_stats(A) -> MinorStats:
    """Maximum absolute m x m minor, gcd of all minors and basis count.

    Enumerates all column subsets exhaustively; raises RankDeficient when
    every maximal minor vanishes.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    sigma = 0
    g = 0
    bases = 0
    for idx in combinations(range(M.n), M.m):
        d = det(M.cols(idx))
        if d != 0:
            bases += 1
            sigma = max(sigma, abs(d))
        g = math.gcd(g, d)
    if sigma == 0:
        raise RankDeficient("all maximal minors are zero")
    return MinorStats(sigma=sigma, gcd_minors=g, basis_count=bases)


def hnf_row(mat):
    """Row Hermite normal form with transform.

    Returns (H, U, pivots) with U unimodular, U * mat = H, H in row echelon
    form with positive pivots and entries above each pivot reduced into
    [0, pivot). pivots is the list of pivot column indices.
    """
    a = [list(r) for r in _as_rows(mat)]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclidean elimination within column c on rows r..m-1.
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return a, u, pivots


def kernel_basis(A) -> IntMatrix:
    """Basis of the lattice of integer kernel vectors of A.

    The columns of the returned n x (n-m) matrix G satisfy A G = 0 and
    generate every integer kernel vector over Z (the construction goes
    through the Hermite normal form, which guarantees completeness).
    The basis is canonicalized so identical inputs give identical output.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    _, u, pivots = hnf_row(M.T)
    if len(pivots) < M.m:
        raise RankDeficient(f"rank {len(pivots)} < {M.m}")
    ker_rows = u[len(pivots):]
    if not ker_rows:
        raise RankDeficient("matrix has a trivial kernel (m = n)")
    # Canonical form: the row HNF of the kernel rows spans the same lattice.
    h, _, _ = hnf_row(ker_rows)
    h = [row for row in h if any(row)]
    return IntMatrix(h).T


def solve_int(A, b):
    """One integer solution of A x = b, or None when none exists."""
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    h, u, pivots = hnf_row(M.T)
    r = len(pivots)
    # A * u^T = h^T; solve h^T y = b for y over Z, then x = u^T [y; 0].
    y = [0] * r
    col_pivot = {pivots[j]: j for j in range(r)}
    for i in range(M.m):
        partial = sum(h[j][i] * y[j] for j in range(r) if pivots[j] < i)
        if i in col_pivot:
            j = col_pivot[i]
            rem = b[i] - partial
            if rem % h[j][i] != 0:
                return None
            y[j] = rem // h[j][i]
        else:
            if partial != b[i]:
                return None
    x = [sum(u[j][i] * y[j] for j in range(r)) for i in range(M.n)]
    return tuple(x)


def solve_rat(A, b):
    """Unique rational solution of a nonsingular square system A x = b."""
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    n = M.n
    if M.m != n:
        raise ValueError("square system required")
    a = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(M.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise RankDeficient("singular system")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


def inverse_times(A, B):
    """Columns of A^{-1} B for nonsingular A, as rows of Fractions."""
    M = B if isinstance(B, IntMatrix) else IntMatrix(B)
    cols = [solve_rat(A, M.col(j)) for j in range(M.n)]
    return [tuple(cols[j][i] for j in range(M.n)) for i in range(M.m)]


def primitive(vec):
    """Divide an integer vector by the gcd of its entries, keeping sign."""
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


# ---------------------------------------------------------------------------
# Exact LP feasibility (phase-1 rational simplex, Bland's rule)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LPFeasibility:
    feasible: bool
    witness: tuple | None
    certificate: tuple | None  # Farkas vector y: y.b > 0, (y.A)_j <= 0 on x_j >= 0, = 0 on free x_j


def lp_feasible(eq_A, eq_b, nonneg_vars=None) -> LPFeasibility:
    """Decide feasibility of {A x = b, x_j >= 0 for j in nonneg_vars}.

    Rational phase-1 simplex with Bland's rule, so it always terminates and
    there are no tolerance knobs. Returns a feasible point or a Farkas
    certificate of infeasibility.

    Args:
      eq_A: rows of rational/int coefficients.
      eq_b: right sides.
      nonneg_vars: indices constrained to be nonnegative (default: all).
    """
    rows = [list(map(Fraction, r)) for r in eq_A]
    rhs = [Fraction(v) for v in eq_b]
    m = len(rows)
    nvars = len(rows[0]) if m else 0
    if any(len(r) != nvars for r in rows):
        raise ValueError("ragged constraint rows")
    if nonneg_vars is None:
        nonneg_vars = range(nvars)
    nonneg = set(nonneg_vars)
    free = [j for j in range(nvars) if j not in nonneg]

    # Columns: original variables, then negative parts for free variables,
    # then artificials. Flip rows so every right side is nonnegative.
    ncols = nvars + len(free)
    neg_part = {j: nvars + k for k, j in enumerate(free)}
    T = []
    flip = []
    for i in range(m):
        row = rows[i][:] + [Fraction(0)] * len(free)
        for j in free:
            row[neg_part[j]] = -rows[i][j]
        if rhs[i] < 0:
            row = [-x for x in row]
            bi = -rhs[i]
            flip.append(-1)
        else:
            bi = rhs[i]
            flip.append(1)
        T.append(row + [bi])
    art = list(range(ncols, ncols + m))
    for i in range(m):
        for k in range(m):
            T[i].insert(ncols + k, Fraction(1) if k == i else Fraction(0))
    total = ncols + m
    basis = art[:]

    # Phase-1 objective: minimize the sum of artificials. Row below holds
    # the current reduced costs z_j - c_j for that objective.
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] += T[i][j]
    for k in art:
        obj[k] = Fraction(0)

    def pivot(r, c):
        pv = T[r][c]
        T[r] = [x / pv for x in T[r]]
        for i in range(m):
            if i != r and T[i][c] != 0:
                f = T[i][c]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = obj[c]
        if f != 0:
            for j in range(total + 1):
                obj[j] -= f * T[r][j]
        basis[r] = c

    while True:
        enter = next((j for j in range(total) if j not in art and obj[j] > 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][total] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # Phase-1 objective is bounded below by 0, so this cannot happen.
            raise AssertionError("unbounded phase-1 objective")
        pivot(best[1], enter)

    if obj[total] > 0:
        # Infeasible. The reduced-cost row encodes a Farkas certificate:
        # y_i = flip_i * (1 + obj_on_artificial_i) satisfies y.b > 0 and
        # (y.A)_j <= 0 on nonnegative variables, = 0 on free ones.
        y = tuple(flip[i] * (Fraction(1) + obj[ncols + i]) for i in range(m))
        return LPFeasibility(False, None, y)

    x = [Fraction(0)] * ncols
    for i in range(m):
        if basis[i] < ncols:
            x[basis[i]] = T[i][total]
    witness = list(x[:nvars])
    for j in free:
        witness[j] -= x[neg_part[j]]
    return LPFeasibility(True, tuple(witness), None)


# ---------------------------------------------------------------------------
# Extreme rays of pointed rational cones (double description method)
# ---------------------------------------------------------------------------

MAX_CONE_DIM = 8


def extreme_rays(ineqs, dim=None):
    """Primitive integer generators of all extreme rays of {x : q.x >= 0}.

    Double description at small dimension: start from a nonsingular subset
    of the inequality rows and add the remaining inequalities one at a time,
    combining adjacent rays across the new hyperplane. Adjacency is decided
    algebraically by the rank of the shared active set. The cone must be
    pointed (rank of the inequality rows equals dim).
    """
    rows = []
    for q in ineqs:
        if any(isinstance(x, Fraction) for x in q):
            lcm = 1
            for x in q:
                lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
            q = [int(Fraction(x) * lcm) for x in q]
        rows.append(primitive([int(x) for x in q]))
    if dim is None:
        if not rows:
            raise ValueError("dimension required for an empty inequality list")
        dim = len(rows[0])
    if dim > MAX_CONE_DIM:
        raise DimensionTooLarge(f"cone dimension {dim} > {MAX_CONE_DIM}")
    if any(len(q) != dim for q in rows):
        raise ValueError("inequality rows of mixed dimension")
    if rank(rows if rows else [[0] * dim]) < dim:
        raise ConeNotPointed("inequality rows do not have full rank")

    # Greedy nonsingular initial subset, lexicographic by row index.
    base_idx = []
    for i, q in enumerate(rows):
        if rank([rows[j] for j in base_idx] + [q]) > len(base_idx):
            base_idx.append(i)
        if len(base_idx) == dim:
            break
    B = IntMatrix([rows[i] for i in base_idx])
    rays = []
    for i in range(dim):
        e = [Fraction(1) if k == i else Fraction(0) for k in range(dim)]
        col = solve_rat(B, e)
        lcm = 1
        for x in col:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        rays.append(primitive([int(x * lcm) for x in col]))

    processed = list(base_idx)

    def active_set(ray):
        return frozenset(i for i in processed if sum(rows[i][k] * ray[k] for k in range(dim)) == 0)

    active = {r: active_set(r) for r in rays}
    for i, q in enumerate(rows):
        if i in base_idx:
            continue
        vals = {r: sum(q[k] * r[k] for k in range(dim)) for r in rays}
        plus = [r for r in rays if vals[r] > 0]
        zero = [r for r in rays if vals[r] == 0]
        minus = [r for r in rays if vals[r] < 0]
        processed.append(i)
        if not minus:
            active = {r: active[r] | ({i} if vals[r] == 0 else frozenset()) for r in rays}
            continue
        new_rays = plus + zero
        for p in plus:
            for mray in minus:
                common = active[p] & active[mray]
                if rank([rows[j] for j in common] or [[0] * dim]) != dim - 2:
                    continue
                w = primitive([vals[p] * mray[k] - vals[mray] * p[k] for k in range(dim)])
                new_rays.append(w)
        rays = []
        seen = set()
        for r in new_rays:
            if r not in seen:
                seen.add(r)
                rays.append(r)
        active = {r: active_set(r) for r in rays}
    return sorted(set(rays))
