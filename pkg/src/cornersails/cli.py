"""Command-line interface.

Exit codes: 0 all checks hold, 1 a verification failed (bug or invalid
input), 2 usage error, 3 a configured resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import knapsack, oracle, sparsity, suite
from .corner import corner_vertices, sail_vertices, vertex_from_support
from .errors import CornersailsError, ResourceLimit
from .exact import minor_stats
from .instances import (
    InstanceFile,
    gen_paper_2x4,
    gen_r1_family,
    gen_random,
    gen_sharpness,
    load_instance,
    save_instance,
)
from .lattice import project_lattice
from .transference import check_product_bound, check_theorem1, check_theorem2, sum_product_holds

VERIFY_COLUMNS = (
    "instance_id",
    "theorem",
    "r",
    "d",
    "delta_num",
    "delta_den",
    "rhs_num",
    "rhs_den",
    "holds",
    "tight",
)

BUILTINS = {"paper2x4": gen_paper_2x4}


def _resolve_instance(spec: str) -> InstanceFile:
    if os.path.exists(spec):
        return load_instance(spec)
    if spec in BUILTINS:
        return BUILTINS[spec]()
    raise CornersailsError(f"no such instance file or builtin: {spec}")


def _instance_id(inst: InstanceFile, spec: str) -> str:
    meta = inst.meta or {}
    fam = meta.get("family")
    if fam:
        params = meta.get("params", {})
        inner = ",".join(f"{k}={v}" for k, v in sorted(params.items()))
        return f"{fam}({inner})" if inner else str(fam)
    return os.path.splitext(os.path.basename(spec))[0]


def _emit(rows, columns, args):
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(columns)
        for row in rows:
            w.writerow([row[c] for c in columns])
        text = buf.getvalue()
    else:
        text = json.dumps(rows, indent=2, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    elif not args.quiet:
        sys.stdout.write(text)


def _frac_row(base, theorem, r, d, delta: Fraction, rhs: Fraction, holds, tight):
    delta = Fraction(delta)
    rhs = Fraction(rhs)
    row = dict(base)
    row.update(
        theorem=theorem,
        r=r,
        d=d,
        delta_num=str(delta.numerator),
        delta_den=str(delta.denominator),
        rhs_num=str(rhs.numerator),
        rhs_den=str(rhs.denominator),
        holds=holds,
        tight=tight,
    )
    return row


def _cmd_sail(args):
    inst = _resolve_instance(args.instance)
    ctx = inst.context()
    sail = sail_vertices(project_lattice(ctx))
    rows = [{"vertex": list(v)} for v in sail.vertices]
    _emit(rows, ("vertex",), args)
    return 0


def _cmd_corner(args):
    inst = _resolve_instance(args.instance)
    cv = corner_vertices(inst.context())
    rows = [{"vertex": list(v)} for v in cv.lifted]
    _emit(rows, ("vertex",), args)
    return 0


def _cmd_verify(args):
    inst = None
    base = {}
    if args.theorem != "lemma3":
        if not args.instance:
            raise CornersailsError(f"verify {args.theorem} needs --instance")
        inst = _resolve_instance(args.instance)
        base = {"instance_id": _instance_id(inst, args.instance)}
    rows = []
    if args.theorem == "thm1":
        ctx = inst.context()
        for z in corner_vertices(ctx).lifted:
            rep = check_theorem1(ctx, z)
            rows.append(_frac_row(base, "thm1", rep.r, rep.d, rep.delta, rep.rhs, rep.holds, rep.tight))
    elif args.theorem == "thm2":
        if inst.tau is None:
            raise CornersailsError("verify thm2 needs an instance with tau")
        x_star = vertex_from_support(inst.A, inst.b, inst.tau)
        brute, _ = oracle.brute_corner_vertices(inst.A, inst.b, tau=inst.tau)
        for z in brute:
            rep = check_theorem2(inst.A, inst.b, x_star, z, inst.tau)
            rows.append(_frac_row(base, "thm2", rep.r, rep.d, rep.delta, rep.rhs, rep.holds, rep.tight))
    elif args.theorem == "thm3":
        rep = knapsack.check_theorem3(inst.a, inst.b[0])
        rows.append(_frac_row(base, "thm3", rep.r, rep.d, rep.delta, rep.rhs, rep.holds, rep.tight))
    elif args.theorem == "thm6":
        ctx = inst.context()
        stats = minor_stats(inst.A)
        rhs = Fraction(abs(ctx.det_gamma()), stats.gcd_minors)
        for z in corner_vertices(ctx).lifted:
            ok, slack = check_product_bound(z, ctx)
            prod = rhs - slack
            rows.append(_frac_row(base, "thm6", sum(1 for j in ctx.gamma_bar if z[j]), 0, prod, rhs, ok, slack == 0))
    elif args.theorem == "thm5":
        c = inst.c if inst.c is not None else (1,) * inst.A.n
        z, rep = sparsity.min_support_optimum(inst.A, inst.b, c, box_cap=args.box_cap)
        # rhs is sqrt(det_gram)/gcd; the row carries the squared ratio.
        rhs_sq = Fraction(rep.det_gram, rep.gcd**2)
        lhs = Fraction(rep.rho + 1) ** rep.exponent
        rows.append(_frac_row(base, "thm5", rep.s, rep.exponent, lhs, rhs_sq, rep.holds, lhs * lhs == rhs_sq))
    elif args.theorem == "cor1":
        if inst.c is None:
            raise CornersailsError("verify cor1 needs an instance with c")
        rep = knapsack.integrality_gap_report(inst.c, inst.a, inst.b[0])
        for v in rep.verdicts:
            rows.append(
                _frac_row(base, "cor1", v.r, 0, rep.gap, v.bound, v.holds, (not v.strict) and rep.gap == v.bound)
            )
        if not rep.chain_holds:
            rows.append(_frac_row(base, "cor1", -1, 0, rep.gap, 0, False, False))
    elif args.theorem == "lemma3":
        import random

        rng = random.Random(args.seed)
        base = {"instance_id": f"lemma3(seed={args.seed},count={args.count})"}
        for _ in range(args.count):
            d = rng.randint(2, 6)
            xs = [Fraction(rng.randint(20, 400), 20) for _ in range(d)]
            ok, lhs, rhs = sum_product_holds(xs)
            rows.append(_frac_row(base, "lemma3", 0, d, lhs, rhs, ok, lhs == rhs))
    _emit(rows, VERIFY_COLUMNS, args)
    return 0 if all(r["holds"] for r in rows) else 1


def _cmd_gap(args):
    inst = _resolve_instance(args.instance)
    if inst.c is None:
        raise CornersailsError("gap needs an instance with c")
    rep = knapsack.integrality_gap_report(inst.c, inst.a, inst.b[0])
    rows = [
        {
            "instance_id": _instance_id(inst, args.instance),
            "gap": str(rep.gap),
            "lp": str(rep.lp),
            "ip": rep.ip,
            "permutation": [i + 1 for i in rep.permutation],
            "verdicts": [
                {"z": list(v.z_star), "r": v.r, "bound": str(v.bound), "strict": v.strict, "holds": v.holds}
                for v in rep.verdicts
            ],
            "chain_holds": rep.chain_holds,
        }
    ]
    _emit(rows, ("instance_id", "gap", "lp", "ip"), args)
    return 0 if rep.holds else 1


def _cmd_sparsity(args):
    inst = _resolve_instance(args.instance)
    c = inst.c if inst.c is not None else (1,) * inst.A.n
    z, rep = sparsity.min_support_optimum(inst.A, inst.b, c, box_cap=args.box_cap)
    rows = [
        {
            "instance_id": _instance_id(inst, args.instance),
            "z": list(z),
            "s": rep.s,
            "rho": rep.rho,
            "lhs": str(rep.lhs),
            "det_gram": str(rep.det_gram),
            "gcd": str(rep.gcd),
            "holds": rep.holds,
            "log_support_bound_holds": sparsity.support_bound_check(z, inst.A),
        }
    ]
    _emit(rows, ("instance_id", "s", "rho", "holds"), args)
    return 0 if rows[0]["holds"] and rows[0]["log_support_bound_holds"] else 1


def _cmd_bv(args):
    inst = _resolve_instance(args.instance)
    vecs = sparsity.bv_short_vectors(inst.A)
    prod = 1
    for v in vecs:
        prod *= max(abs(x) for x in v)
    stats = minor_stats(inst.A)
    holds = prod * prod * stats.gcd_minors**2 <= sparsity.gram_det(inst.A)
    rows = [
        {
            "instance_id": _instance_id(inst, args.instance),
            "vectors": [list(v) for v in vecs],
            "norm_product": str(prod),
            "det_gram": str(sparsity.gram_det(inst.A)),
            "gcd": str(stats.gcd_minors),
            "holds": holds,
        }
    ]
    _emit(rows, ("instance_id", "norm_product", "holds"), args)
    return 0 if holds else 1


def _cmd_gen(args):
    if args.family == "sharpness":
        inst = gen_sharpness(args.s, args.t)
    elif args.family == "r1":
        inst = gen_r1_family(args.k, args.n)
    elif args.family == "paper2x4":
        inst = gen_paper_2x4()
    else:
        inst = gen_random(args.m, args.n, args.entry_bound, args.seed, kind=args.kind)
    if args.out:
        save_instance(inst, args.out)
        if not args.quiet:
            print(f"wrote {args.out}")
    elif not args.quiet:
        print(inst.to_json())
    return 0


def _cmd_suite(args):
    return suite.run_suite(quiet=args.quiet)


def _add_io_flags(p, box_cap=False):
    p.add_argument("--instance", help="path to an instance JSON file, or a builtin name like paper2x4")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--quiet", action="store_true")
    if box_cap:
        p.add_argument("--box-cap", type=int, default=200, dest="box_cap")


def build_parser():
    ap = argparse.ArgumentParser(prog="cornersails", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sail", help="projected sail vertices of an instance")
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_sail)

    p = sub.add_parser("corner", help="corner polyhedron vertices of an instance")
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_corner)

    p = sub.add_parser("verify", help="run an exact inequality checker")
    p.add_argument("theorem", choices=("thm1", "thm2", "thm3", "thm5", "thm6", "cor1", "lemma3"))
    _add_io_flags(p, box_cap=True)
    p.add_argument("--count", type=int, default=1000, help="tuple count for lemma3")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("gap", help="exact integrality gap report (knapsack)")
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_gap)

    p = sub.add_parser("sparsity", help="minimum-support optimum report")
    _add_io_flags(p, box_cap=True)
    p.set_defaults(fn=_cmd_sparsity)

    p = sub.add_parser("bv", help="short independent kernel vectors")
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_bv)

    p = sub.add_parser("gen", help="write a named or random instance")
    p.add_argument("family", choices=("sharpness", "r1", "paper2x4", "random"))
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--entry-bound", type=int, default=6, dest="entry_bound")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--kind", choices=("general", "knapsack"), default="general")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("suite", help="run the acceptance battery")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(fn=_cmd_suite)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.fn(args)
    except ResourceLimit as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        code = 3
    except CornersailsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 1
    return code


if __name__ == "__main__":
    sys.exit(main())
