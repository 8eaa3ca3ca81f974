"""Affine lattices of integer solutions and their projections.

The integer points of {x : A x = b} form an affine lattice. Forgetting the
basic coordinates gamma gives a full-dimensional affine lattice in the
remaining n-m coordinates; sails and corner polyhedra live there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoIntegerSolution, RankDeficient
from .exact import IntMatrix, det, hnf_row, kernel_basis, solve_int, solve_rat


@dataclass(frozen=True)
class ProjectionContext:
    """A system (A, b) together with a nonsingular basis gamma (0-based)."""

    A: IntMatrix
    b: tuple
    gamma: tuple

    def __post_init__(self):
        A = self.A if isinstance(self.A, IntMatrix) else IntMatrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "gamma", tuple(sorted(int(i) for i in self.gamma)))
        if len(self.b) != A.m:
            raise ValueError("b has wrong length")
        if len(self.gamma) != A.m:
            raise ValueError("gamma must index a square basis")
        if len(set(self.gamma)) != A.m or not all(0 <= i < A.n for i in self.gamma):
            raise ValueError("gamma indices out of range or repeated")
        if det(A.cols(self.gamma)) == 0:
            raise RankDeficient("A_gamma is singular")

    @property
    def gamma_bar(self):
        g = set(self.gamma)
        return tuple(j for j in range(self.A.n) if j not in g)

    def det_gamma(self):
        return det(self.A.cols(self.gamma))


@dataclass(frozen=True)
class AffineLattice:
    """shift + integer span of the basis columns, basis in canonical form.

    determinant is the lattice determinant |det(basis)| when the lattice is
    full-dimensional, and None otherwise (it would be irrational in general).
    congruence, when set, is an (coeffs, modulus, residue) membership
    shortcut: p is a member iff coeffs . p == residue (mod modulus).
    """

    ambient_dim: int
    shift: tuple
    basis: IntMatrix
    determinant: int | None = None
    congruence: tuple | None = None
    _pivots: tuple = field(default=(), repr=False, compare=False)

    @staticmethod
    def from_basis(shift, basis, congruence=None):
        """Canonicalize: HNF basis, shift reduced to its canonical residue.

        For a full-dimensional lattice the reduced shift is the
        lexicographically smallest nonnegative coset representative, which
        keeps serialization deterministic.
        """
        B = basis if isinstance(basis, IntMatrix) else IntMatrix(basis)
        d = B.m
        shift = [int(x) for x in shift]
        if len(shift) != d:
            raise ValueError("shift has wrong dimension")
        h, _, pivots = hnf_row(B.T)
        h = [row for row in h if any(row)]
        if len(h) != B.n:
            raise ValueError("basis columns are dependent")
        canon = IntMatrix(h).T
        # Reduce the shift greedily along pivot rows; columns are in echelon
        # form so earlier pivot coordinates are never disturbed.
        for j, p in enumerate(pivots):
            q = shift[p] // h[j][p]
            if q:
                for i in range(d):
                    shift[i] -= q * h[j][i]
        determinant = abs(det(canon)) if canon.n == d else None
        return AffineLattice(
            ambient_dim=d,
            shift=tuple(shift),
            basis=canon,
            determinant=determinant,
            congruence=congruence,
            _pivots=tuple(pivots),
        )

    def direction(self):
        """The same lattice through the origin."""
        if not any(self.shift):
            return self
        return AffineLattice(
            ambient_dim=self.ambient_dim,
            shift=(0,) * self.ambient_dim,
            basis=self.basis,
            determinant=self.determinant,
            congruence=None,
            _pivots=self._pivots,
        )

    def solve_coords(self, p):
        """Integer coefficients t with basis t = p - shift, or None."""
        target = [p[i] - self.shift[i] for i in range(self.ambient_dim)]
        h = [list(self.basis.col(j)) for j in range(self.basis.n)]  # rows of B^T
        t = [0] * len(h)
        piv = {self._pivots[j]: j for j in range(len(self._pivots))}
        for i in range(self.ambient_dim):
            partial = sum(h[j][i] * t[j] for j in range(len(h)) if self._pivots[j] < i)
            if i in piv:
                j = piv[i]
                rem = target[i] - partial
                if rem % h[j][i] != 0:
                    return None
                t[j] = rem // h[j][i]
            elif partial != target[i]:
                return None
        return tuple(t)

    def member(self, p) -> bool:
        """Exact membership of an integer point."""
        if len(p) != self.ambient_dim:
            raise ValueError("point has wrong dimension")
        if self.congruence is not None:
            coeffs, modulus, residue = self.congruence
            return sum(c * x for c, x in zip(coeffs, p)) % modulus == residue
        return self.solve_coords(p) is not None

    def enumerate_box(self, lower, upper):
        """All lattice points p with lower <= p <= upper, in lex order.

        Requires a full-dimensional lattice; walks the triangular Hermite
        basis coordinate by coordinate, so the cost is proportional to the
        number of points visited.
        """
        d = self.ambient_dim
        if self.basis.n != d:
            raise ValueError("box enumeration needs a full-dimensional lattice")
        cols = [self.basis.col(j) for j in range(d)]
        out = []

        def walk(j, point):
            if j == d:
                out.append(tuple(point))
                return
            step = cols[j][j]  # positive pivot of the triangular basis
            base = point[j]
            lo_t = -((base - lower[j]) // step)
            hi_t = (upper[j] - base) // step
            for t in range(lo_t, hi_t + 1):
                nxt = [point[i] + t * cols[j][i] for i in range(d)]
                if lower[j] <= nxt[j] <= upper[j]:
                    walk(j + 1, nxt)

        walk(0, list(self.shift))
        return sorted(out)

    def enumerate_product_region(self, bound):
        """Lattice points x >= 0 with prod(x_i + 1) <= bound, in lex order.

        The running product prunes each coordinate range of the triangular
        walk, so the cost tracks the number of points returned rather than
        any bounding box volume.
        """
        d = self.ambient_dim
        if self.basis.n != d:
            raise ValueError("region enumeration needs a full-dimensional lattice")
        cols = [self.basis.col(j) for j in range(d)]
        out = []

        def walk(j, point, prod):
            if j == d:
                out.append(tuple(point))
                return
            step = cols[j][j]
            base = point[j]
            cap = bound // prod - 1  # x_j + 1 <= bound / prod
            lo_t = -(base // step)
            hi_t = (cap - base) // step
            for t in range(lo_t, hi_t + 1):
                nxt = [point[i] + t * cols[j][i] for i in range(d)]
                walk(j + 1, nxt, prod * (nxt[j] + 1))

        walk(0, list(self.shift), 1)
        return sorted(out)


def member(L: AffineLattice, p) -> bool:
    return L.member(tuple(int(x) for x in p))


def project_lattice(ctx: ProjectionContext) -> AffineLattice:
    """The projected affine lattice of integer solutions of A x = b.

    Projection forgets the gamma coordinates. The result is full-dimensional
    with determinant |det(A_gamma)| / gcd(A); raises NoIntegerSolution when
    A x = b has no integer solution at all.
    """
    A, b, gamma = ctx.A, ctx.b, ctx.gamma
    x0 = solve_int(A, b)
    if x0 is None:
        raise NoIntegerSolution("A x = b has no integer solution")
    gbar = ctx.gamma_bar
    G = kernel_basis(A)
    F = G.row_subset(gbar)
    shift = tuple(x0[j] for j in gbar)
    congruence = None
    if A.m == 1:
        a_g = A[0, gamma[0]]
        modulus = abs(a_g)
        coeffs = tuple(A[0, j] % modulus for j in gbar)
        congruence = (coeffs, modulus, b[0] % modulus)
    return AffineLattice.from_basis(shift, F, congruence=congruence)


def lift(u_bar, ctx: ProjectionContext):
    """The unique point of {x : A x = b} whose gamma_bar coordinates are u_bar.

    The gamma coordinates come out rational in general; they are integers
    exactly when u_bar belongs to the projected affine lattice.
    """
    A, b, gamma = ctx.A, ctx.b, ctx.gamma
    gbar = ctx.gamma_bar
    if len(u_bar) != len(gbar):
        raise ValueError("u_bar has wrong dimension")
    rhs = [
        Fraction(b[i]) - sum(Fraction(A[i, j]) * u_bar[k] for k, j in enumerate(gbar))
        for i in range(A.m)
    ]
    u_gamma = solve_rat(A.cols(gamma), rhs)
    w = [Fraction(0)] * A.n
    for k, j in enumerate(gamma):
        w[j] = u_gamma[k]
    for k, j in enumerate(gbar):
        w[j] = Fraction(u_bar[k])
    return tuple(w)


def lift_int(u_bar, ctx: ProjectionContext):
    """lift() for lattice members; raises if the result is not integral."""
    w = lift(u_bar, ctx)
    if any(x.denominator != 1 for x in w):
        raise ValueError(f"{u_bar} does not lift to an integer point")
    return tuple(int(x) for x in w)
