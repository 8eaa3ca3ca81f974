"""Acceptance battery: the end-to-end checks the package must pass.

Each criterion returns (ok, detail); run_suite times them and prints one
pass/fail line per criterion. The pytest acceptance module calls the same
functions, so the CLI `suite` subcommand and the tests cannot drift apart.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from . import knapsack, oracle, sparsity
from .corner import corner_vertices, is_irreducible, vertex_from_support
from .exact import minor_stats, rank
from .instances import gen_paper_2x4, gen_r1_family, gen_random, gen_sharpness, sharpness_vector
from .lattice import ProjectionContext
from .transference import (
    check_product_bound,
    check_theorem1,
    check_theorem2,
    lemma4_bound,
    sum_product_holds,
)


def criterion_1_paper_2x4():
    """Named 2x4 instance: unique corner vertex and a tight r = 2 bound."""
    inst = gen_paper_2x4()
    ctx = inst.context()
    cv = corner_vertices(ctx)
    if cv.lifted != ((0, 1, 1, 3),):
        return False, f"corner vertices {cv.lifted}"
    rep = check_theorem1(ctx, (0, 1, 1, 3))
    stats = minor_stats(inst.A)
    ok = (
        rep.r == 2
        and rep.delta == 10
        and Fraction(stats.sigma, stats.gcd_minors) == 20
        and rep.holds
        and rep.tight
        and rep.delta * Fraction(2**2, 2) == 20
    )
    return ok, f"r={rep.r} delta={rep.delta} rhs={rep.rhs} tight={rep.tight}"


def criterion_2_r1_family():
    """One-coordinate support family: the distance bound is met with equality."""
    for k in (2, 5, 10):
        for n in (2, 3, 5):
            inst = gen_r1_family(k, n)
            a, b = inst.a, inst.b[0]
            pts = oracle.knapsack_feasible_points(a, b)
            expect = tuple(0 if i < n - 1 else k - 1 for i in range(n))
            if pts != [expect]:
                return False, f"k={k} n={n}: feasible set {pts}"
            rep = knapsack.check_theorem3(a, b)
            if not (rep.delta == k - 1 == max(a) - 1 and rep.holds):
                return False, f"k={k} n={n}: delta={rep.delta}"
            if rep.r != 1 or not rep.tight:
                return False, f"k={k} n={n}: r={rep.r} tight={rep.tight}"
    return True, "k in {2,5,10} x n in {2,3,5}: unique point, delta = ||a||-1, tight"


def criterion_3_sharpness():
    """Sharpness family: full support, strictness, ratio increasing to ~1."""
    details = []
    for s in (3, 4, 5):
        ratios = []
        for t in (1, 10, 100):
            inst = gen_sharpness(s, t)
            a, b = inst.a, inst.b[0]
            ones = (1,) * s
            cv = corner_vertices(inst.context())
            if ones not in cv.lifted:
                return False, f"s={s} t={t}: all-ones not a corner vertex"
            rep = knapsack.check_theorem3(a, b)
            if rep.z_star != ones or rep.r != s - 1:
                return False, f"s={s} t={t}: picked {rep.z_star} r={rep.r}"
            if not rep.holds:
                return False, f"s={s} t={t}: strict bound failed"
            delta = Fraction(b, a[0]) - 1
            ratios.append(delta * 2 ** (s - 1) / ((s - 1) * max(a)))
        if not (ratios[0] < ratios[1] < ratios[2]):
            return False, f"s={s}: ratios not increasing {ratios}"
        if s == 3:
            if ratios[2] != Fraction(803, 804) or ratios[2] <= Fraction(995, 1000):
                return False, f"s=3 t=100 ratio {ratios[2]}"
            delta100 = Fraction(gen_sharpness(3, 100).b[0], 4) - 1
            if delta100 != Fraction(803, 4):  # 200.75
                return False, f"s=3 t=100 delta {delta100}"
        details.append(f"s={s} ratio(t=100)={ratios[2]}")
    return True, "; ".join(details)


def criterion_4_ones_hull_vertex():
    """All-ones is an integer hull vertex along the doubling family."""
    for s in range(2, 9):
        a, b = sharpness_vector(s, 0)
        if not oracle.is_integer_hull_vertex(a, b, (1,) * s):
            return False, f"s={s}: all-ones not a hull vertex"
    return True, "s = 2..8 confirmed by the oracle"


def _random_general(rng):
    m = rng.choice((1, 2))
    n = rng.randint(m + 1, 5)
    seed = rng.randrange(10**9)
    return gen_random(m, n, 6, seed, kind="general")


def criterion_5_general_suite(count=500, seed=20240501):
    """Random systems: corner vertices match the oracle and obey the bounds."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(count):
        inst = _random_general(rng)
        ctx = inst.context()
        cv = corner_vertices(ctx)
        brute, _ = oracle.brute_corner_vertices(inst.A, inst.b, gamma=inst.gamma)
        if sorted(cv.lifted) != sorted(brute):
            return False, f"oracle mismatch on seed {inst.meta['seed']}"
        stats = minor_stats(inst.A)
        thm1_rhs = Fraction(stats.sigma, stats.gcd_minors)
        for z in cv.lifted:
            u = tuple(z[j] for j in ctx.gamma_bar)
            if not is_irreducible(u, cv.projected.lattice):
                return False, f"reducible vertex {z} on seed {inst.meta['seed']}"
            ok, slack = check_product_bound(z, ctx)
            if not ok:
                return False, f"product bound failed on seed {inst.meta['seed']}"
            rep = check_theorem1(ctx, z)
            if not rep.holds:
                return False, f"case bound failed on seed {inst.meta['seed']}"
            l4 = lemma4_bound(ctx, z)
            if rep.r >= 2:
                lhs = rep.delta * Fraction(2**rep.r, rep.r)
                if not (lhs <= l4.bound <= thm1_rhs):
                    return False, f"refinement chain failed on seed {inst.meta['seed']}"
            elif rep.r == 1:
                if not (rep.delta <= l4.bound <= thm1_rhs - 1):
                    return False, f"refinement chain failed on seed {inst.meta['seed']}"
            checked += 1
    return True, f"{count} instances, {checked} vertices checked"


def criterion_6_degenerate_suite(count=100, seed=20240502):
    """Engineered degenerate supports: maximizing basis and the r^(d+1) bound."""
    rng = random.Random(seed)
    done = 0
    while done < count:
        m = 2
        n = rng.randint(3, 5)
        inst = gen_random(m, n, 4, rng.randrange(10**9), kind="general", degenerate=True)
        if inst.tau is None or len(inst.tau) >= m:
            continue
        x_star = vertex_from_support(inst.A, inst.b, inst.tau)
        try:
            brute, _ = oracle.brute_corner_vertices(inst.A, inst.b, tau=inst.tau)
        except oracle.SearchSpaceTooLarge:
            continue
        for z in brute:
            rep = check_theorem2(inst.A, inst.b, x_star, z, inst.tau)
            if not rep.holds:
                return False, f"thm2 failed on seed {inst.meta['seed']} z={z}"
            if not rep.details["careful_choice_holds"]:
                return False, f"basis inequality failed on seed {inst.meta['seed']} z={z}"
            if not rep.details["product_bound_holds"]:
                return False, f"product bound failed on seed {inst.meta['seed']} z={z}"
        done += 1
    return True, f"{count} degenerate instances checked"


def criterion_7_knapsack_suite(count=500, seed=20240503):
    """Random knapsacks: strictness, DP versus brute force, gap bounds, witnesses."""
    rng = random.Random(seed)
    done = 0
    while done < count:
        n = rng.randint(2, 5)
        a = tuple(rng.randint(1, 30) for _ in range(n))
        if math.gcd(*a) != 1:
            continue
        w = tuple(rng.randint(0, 3) for _ in range(n))
        b = sum(ai * wi for ai, wi in zip(a, w))
        if b > 200:
            continue
        c = tuple(rng.randint(-10, 10) for _ in range(n))
        rep = knapsack.check_theorem3(a, b)
        if not rep.holds:
            return False, f"thm3 failed on {a}, {b}"
        z = knapsack.corner_vertex_in_P(a, b)
        if any(v < 0 for v in z):
            return False, f"corner vertex not in P on {a}, {b}"
        cv = corner_vertices(knapsack.knapsack_context(a, b))
        if z not in cv.lifted:
            return False, f"selected point is not a corner vertex on {a}, {b}"
        opt, _ = knapsack.ip_value(c, a, b)
        box = oracle.BoxSpec((0,) * n, tuple(b // ai for ai in a))
        bopt, _ = oracle.brute_ilp_opt([list(a)], (b,), c, "min", box)
        if opt != bopt:
            return False, f"ip {opt} != brute {bopt} on {a}, {b}, {c}"
        gap = knapsack.integrality_gap_report(c, a, b)
        if gap.gap < 0 or not gap.holds:
            return False, f"gap report failed on {a}, {b}, {c}"
        knapsack.aho_and_sparsity_exist(a, b)
        done += 1
    return True, f"{count} knapsack instances checked"


def criterion_8_sparsity_suite(count=200, seed=20240504):
    """Random feasible systems: support bounds and short kernel vectors."""
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < count:
        attempts += 1
        if attempts > count * 60:
            return False, "generator exhausted"
        m = rng.choice((1, 2))
        n = rng.randint(m + 1, 5)
        inst = gen_random(m, n, 6, rng.randrange(10**9), kind="general")
        c = tuple(rng.randint(-6, 6) for _ in range(n))
        try:
            z, rep = sparsity.min_support_optimum(inst.A, inst.b, c, box_cap=120)
        except (sparsity.SearchSpaceTooLarge, sparsity.Infeasible):
            continue
        if not rep.holds:
            return False, f"support/entry bound failed on seed {inst.meta['seed']}"
        if rep.details.get("monotone") is False:
            return False, f"reduction monotonicity failed on seed {inst.meta['seed']}"
        if not sparsity.support_bound_check(z, inst.A):
            return False, f"log support bound failed on seed {inst.meta['seed']}"
        vecs = sparsity.bv_short_vectors(inst.A)
        if len(vecs) != n - m:
            return False, f"wrong number of short vectors on seed {inst.meta['seed']}"
        if rank([list(v) for v in vecs]) != n - m:
            return False, f"short vectors dependent on seed {inst.meta['seed']}"
        prod = 1
        for v in vecs:
            prod *= max(abs(x) for x in v)
        stats = minor_stats(inst.A)
        if prod * prod * stats.gcd_minors**2 > sparsity.gram_det(inst.A):
            return False, f"norm product bound failed on seed {inst.meta['seed']}"
        done += 1
    return True, f"{count} instances checked ({attempts} drawn)"


def criterion_9_sum_product(count=1000, seed=20240505):
    """The sum/product inequality on random rational tuples, equality at ones."""
    rng = random.Random(seed)
    for _ in range(count):
        d = rng.randint(2, 6)
        xs = [Fraction(rng.randint(20, 400), 20) for _ in range(d)]
        ok, lhs, rhs = sum_product_holds(xs)
        if not ok:
            return False, f"inequality failed at {xs}"
    for d in range(2, 7):
        ok, lhs, rhs = sum_product_holds((1,) * d)
        if not (ok and lhs == rhs):
            return False, f"no equality at the all-ones point, d={d}"
    return True, f"{count} tuples, equality at all-ones for d = 2..6"


CRITERIA = (
    ("1 paper 2x4 tightness", criterion_1_paper_2x4, 1.0),
    ("2 r=1 family", criterion_2_r1_family, 9.0),
    ("3 sharpness family", criterion_3_sharpness, 5.0),
    ("4 all-ones hull vertex", criterion_4_ones_hull_vertex, 30.0),
    ("5 general property suite", criterion_5_general_suite, 120.0),
    ("6 degenerate property suite", criterion_6_degenerate_suite, 120.0),
    ("7 knapsack property suite", criterion_7_knapsack_suite, 120.0),
    ("8 sparsity property suite", criterion_8_sparsity_suite, 60.0),
    ("9 sum-product inequality", criterion_9_sum_product, 5.0),
)


def run_suite(quiet=False):
    """Run every criterion; returns 0 when all pass, 1 otherwise."""
    failures = 0
    for name, fn, budget in CRITERIA:
        t0 = time.monotonic()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.monotonic() - t0
        slow = elapsed > budget
        status = "PASS" if ok and not slow else "FAIL"
        if not ok or slow:
            failures += 1
        if not quiet or status == "FAIL":
            extra = " [over time budget]" if slow and ok else ""
            print(f"{status} criterion {name}: {detail} ({elapsed:.2f}s){extra}")
    return 0 if failures == 0 else 1
