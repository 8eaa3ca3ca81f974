"""Exact checkers for the proximity-sparsity transference inequalities.

Every report carries exact rationals so that tightness (slack zero) is a
decidable statement, never a floating-point coincidence. Rendering decimals
for humans is the CLI's job.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .corner import careful_choice_holds, choose_basis_prop2
from .errors import DomainError, InvalidPoint, InvalidVertex
from .exact import IntMatrix, det, hnf_row, minor_stats, rank
from .lattice import ProjectionContext, lift


@dataclass(frozen=True)
class TransferenceReport:
    """Outcome of one inequality check, all quantities exact."""

    theorem_id: str
    x_star: tuple
    z_star: tuple
    r: int
    d: int
    delta: Fraction
    rhs: Fraction
    holds: bool
    tight: bool
    details: dict = field(default_factory=dict, compare=False)


def _validate_corner_point(ctx: ProjectionContext, z_star, require=InvalidVertex):
    z = tuple(int(v) for v in z_star)
    if len(z) != ctx.A.n:
        raise require("z* has the wrong dimension")
    if ctx.A.mat_vec(z) != ctx.b:
        raise require("A z* != b")
    if any(z[j] < 0 for j in ctx.gamma_bar):
        raise require("z* has a negative entry off the basis")
    return z


def basic_solution(ctx: ProjectionContext):
    """x* with x*_gamma = A_gamma^{-1} b and zeros elsewhere."""
    return lift((0,) * (ctx.A.n - ctx.A.m), ctx)


def proximity(x_star, z_star) -> Fraction:
    return max((abs(Fraction(x) - z) for x, z in zip(x_star, z_star)), default=Fraction(0))


def check_theorem1(ctx: ProjectionContext, z_star) -> TransferenceReport:
    """Proximity of a corner vertex to the basic solution, case by support.

    r = 0 forces equality, r = 1 bounds the distance by Sigma/gcd - 1, and
    r >= 2 gives delta * 2^r / r <= Sigma/gcd. A failed check on a genuine
    corner vertex is a library bug and should be treated as such.
    """
    z = _validate_corner_point(ctx, z_star)
    x = basic_solution(ctx)
    stats = minor_stats(ctx.A)
    ratio = Fraction(stats.sigma, stats.gcd_minors)
    r = sum(1 for j in ctx.gamma_bar if z[j] != 0)
    delta = proximity(x, z)
    if r == 0:
        holds = all(Fraction(zi) == xi for zi, xi in zip(z, x))
        rhs = Fraction(0)
        tight = holds
    elif r == 1:
        rhs = ratio - 1
        holds = delta <= rhs
        tight = delta == rhs
    else:
        rhs = ratio
        lhs = delta * Fraction(2**r, r)
        holds = lhs <= rhs
        tight = lhs == rhs
    return TransferenceReport(
        theorem_id="thm1",
        x_star=tuple(x),
        z_star=z,
        r=r,
        d=0,
        delta=delta,
        rhs=rhs,
        holds=holds,
        tight=tight,
        details={"sigma": stats.sigma, "gcd": stats.gcd_minors},
    )


def _row_reduced(M: IntMatrix):
    """Full-row-rank integer matrix with the same rowspace (Hermite rows)."""
    h, _, pivots = hnf_row(M)
    rows = [row for row in h[: len(pivots)]]
    return IntMatrix(rows) if rows else None


def check_theorem2(A, b, x_star, z_star, tau) -> TransferenceReport:
    """Degenerate-support extension: the r^(d+1) proximity bound.

    Restricts to the columns mu = tau union supp(z*), row-reduces, picks the
    maximizing basis there, extends it to a basis of A and checks the bound
    with d = m - |tau|. The basis-row choice inside the reduction must not
    matter; tests assert that.
    """
    M = A if isinstance(A, IntMatrix) else IntMatrix(A)
    b = tuple(int(v) for v in b)
    tau = tuple(sorted(tau))
    z = tuple(int(v) for v in z_star)
    x = tuple(Fraction(v) for v in x_star)
    if M.mat_vec(z) != b:
        raise InvalidVertex("A z* != b")
    if any(z[j] < 0 for j in range(M.n) if j not in tau):
        raise InvalidVertex("z* negative off tau")
    if tuple(j for j in range(M.n) if x[j] != 0) != tau:
        raise InvalidVertex("tau is not the support of x*")

    mu = tuple(sorted(set(tau) | {j for j in range(M.n) if z[j] != 0}))
    if not mu:
        mu = tau if tau else (0,)
    A_mu = M.cols(mu)
    reduced = _row_reduced(A_mu)
    if reduced is None:
        raise InvalidVertex("A_mu has rank zero")
    tau_in_mu = tuple(mu.index(j) for j in tau)
    z_mu = tuple(z[j] for j in mu)
    sigma_in_mu = choose_basis_prop2(reduced, z_mu, tau_in_mu)
    sigma = tuple(mu[k] for k in sigma_in_mu)
    careful = careful_choice_holds(reduced, z_mu, tau_in_mu, sigma_in_mu)

    # Extend sigma to a basis of A; the extension never needs mu columns.
    gamma = list(sigma)
    for j in range(M.n):
        if len(gamma) == M.m:
            break
        if j in gamma:
            continue
        trial = sorted(gamma + [j])
        if rank(M.cols(trial)) == len(trial):
            gamma = trial
    gamma = tuple(sorted(gamma))
    if len(gamma) < M.m or det(M.cols(gamma)) == 0:
        raise InvalidVertex("sigma does not extend to a basis of A")

    gbar = tuple(j for j in range(M.n) if j not in gamma)
    r = sum(1 for j in gbar if z[j] != 0)
    d = M.m - len(tau)
    delta = proximity(x, z)
    stats = minor_stats(M)
    ratio = Fraction(stats.sigma, stats.gcd_minors)
    if r == 0:
        holds = all(Fraction(zi) == xi for zi, xi in zip(z, x))
        rhs = Fraction(0)
        tight = holds
    elif r == 1:
        rhs = ratio - 1
        holds = delta <= rhs
        tight = delta == rhs
    else:
        rhs = ratio
        lhs = delta * Fraction(2**r, r ** (d + 1))
        holds = lhs <= rhs
        tight = lhs == rhs
    prod = 1
    for j in gbar:
        prod *= z[j] + 1
    product_bound_rhs = Fraction((r if r else 1) ** d * abs(det(M.cols(gamma))), stats.gcd_minors)
    return TransferenceReport(
        theorem_id="thm2",
        x_star=x,
        z_star=z,
        r=r,
        d=d,
        delta=delta,
        rhs=rhs,
        holds=holds,
        tight=tight,
        details={
            "gamma": gamma,
            "sigma": sigma,
            "mu": mu,
            "careful_choice_holds": careful,
            "product": prod,
            "product_bound_rhs": product_bound_rhs,
            "product_bound_holds": Fraction(prod) <= product_bound_rhs,
        },
    )


def check_product_bound(z_star, ctx: ProjectionContext):
    """Vertex coordinate product bound: prod(z*_j + 1) <= |det A_gamma|/gcd.

    Returns (holds, slack) with slack = rhs - product, exact.
    """
    z = _validate_corner_point(ctx, z_star)
    stats = minor_stats(ctx.A)
    rhs = Fraction(abs(ctx.det_gamma()), stats.gcd_minors)
    prod = 1
    for j in ctx.gamma_bar:
        prod *= z[j] + 1
    slack = rhs - prod
    return slack >= 0, slack


def sum_product_holds(xs):
    """Sum versus scaled product: x_1+...+x_d <= d * prod(x_i+1) / 2^d.

    Needs d >= 2 and every x_i >= 1; returns (holds, lhs, rhs) exactly.
    """
    vals = [Fraction(x) for x in xs]
    d = len(vals)
    if d < 2:
        raise DomainError("at least two entries required")
    if any(v < 1 for v in vals):
        raise DomainError("entries must be >= 1")
    lhs = sum(vals)
    rhs = Fraction(d, 2**d)
    for v in vals:
        rhs *= v + 1
    return lhs <= rhs, lhs, rhs


@dataclass(frozen=True)
class Lemma4Result:
    case: int  # the support size r the bound was selected for
    bound: Fraction
    cramer: dict


def lemma4_bound(ctx: ProjectionContext, z_star) -> Lemma4Result:
    """Refined proximity right side using the actual coordinate product.

    Accepts any integral point with A z = b and z nonnegative off the basis
    (vertexhood is not needed). The returned bound is
    Sigma/|det A_gamma| * prod(z_j+1), minus one in the r = 1 case; the
    Cramer ratios det(A_gamma^j(A_i))/det(A_gamma) are recorded for audit.
    """
    z = _validate_corner_point(ctx, z_star, require=InvalidPoint)
    A, gamma = ctx.A, ctx.gamma
    gbar = ctx.gamma_bar
    stats = minor_stats(A)
    dg = ctx.det_gamma()
    r = sum(1 for j in gbar if z[j] != 0)
    prod = 1
    for j in gbar:
        prod *= z[j] + 1
    cramer = {}
    for pos, j in enumerate(gamma):
        for i in gbar:
            cols = list(gamma)
            cols[pos] = i
            cramer[(j, i)] = Fraction(det(A.cols(cols)), dg)
    if r == 0:
        bound = Fraction(0)
    elif r == 1:
        bound = Fraction(stats.sigma, abs(dg)) * prod - 1
    else:
        bound = Fraction(stats.sigma, abs(dg)) * prod
    return Lemma4Result(case=r, bound=bound, cramer=cramer)
