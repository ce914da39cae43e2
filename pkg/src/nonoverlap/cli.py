"""Command-line entry point.

Exit codes: 0 ok, 1 verification failed, 2 usage or bad parameters,
3 recipe infeasible, 4 capacity or time budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bounds
from .constructions import (ConstructionParams, c1_params, construct_c2,
                            select_params_best, select_params_lemma2,
                            select_params_thm6)
from .errors import CapacityError, ParameterError, RecipeInfeasible
from .oracle import check_conjecture1, check_conjecture2, exact_search
from .sfree import PatternSet, count_sfree, sfree_lower_bound
from .sync_sim import StreamConfig, run_trials
from .words import dumps_code, load_code, verify_code

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_CAPACITY = 0, 1, 2, 3, 4


def _resolve_params(args) -> tuple[ConstructionParams, str]:
    n, q = args.n, args.q
    if args.scheme == "c1":
        if args.k is None:
            return select_params_lemma2(n, q), "c1"
        return c1_params(n, q, args.k), "c1"
    if args.k is not None and args.l is not None and args.auto is None:
        if args.s is None:
            return ConstructionParams.full(n, q, args.k, args.l), "c2"
        return ConstructionParams(n, q, args.k, args.l, args.s, "lex"), "c2"
    recipe = args.auto or "best"
    if recipe == "lemma2":
        return select_params_lemma2(n, q), "c1"
    if recipe == "thm6":
        return select_params_thm6(n, q), "c2"
    return select_params_best(n, q, budget=args.budget).params, "c2"


def cmd_construct(args) -> int:
    params, scheme = _resolve_params(args)
    res = construct_c2(params, enumerate=args.enumerate, cap=args.cap, scheme=scheme)
    print(f"size={res.size} k={params.k} l={params.ell} s={params.s}")
    if res.code is not None:
        text = dumps_code(res.code, [params.header(scheme)])
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_code(load_code(args.file))
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_bound(args) -> int:
    n, q = args.n, args.q
    head = bounds.headline_upper_bound(n, q)
    refined = bounds.upper_bound(n, q)
    lb = bounds.lower_bound_lemma2(n, q)
    print(f"headline={head} ({float(head):.6g})")
    print(f"refined={refined}")
    print(f"lemma2={lb.value} regime={'yes' if lb.in_regime else 'no'}")
    exact = bounds.exact_value(n, q)
    if exact is not None:
        print(f"exact={exact}")
    for name, value in (("refined", refined), ("lemma2", lb.value), ("exact", exact)):
        if value is not None:
            print(f"ratio_{name} {bounds.ratio_report(n, q, value).render()}")
    return EXIT_OK


def cmd_count(args) -> int:
    if args.pattern:
        pats = [tuple(int(x) for x in p.replace(",", " ").split()) for p in args.pattern]
        k = len(pats[0])
        alphabet = range(args.l) if args.l is not None else None
        ps = PatternSet.from_patterns(k, args.q, pats, alphabet=alphabet)
    else:
        if args.k is None or args.l is None:
            raise ParameterError("count needs --pattern or both --k and --l")
        s = args.l ** args.k if args.s is None else args.s
        ps = PatternSet.lex_first(args.k, args.q, args.l, s)
    line = f"count={count_sfree(ps, args.r)}"
    if args.r >= ps.k:
        line += f" lower_bound={sfree_lower_bound(ps, args.r)}"
    print(line)
    return EXIT_OK


def cmd_search(args) -> int:
    res = exact_search(args.n, args.q, time_limit=args.time_limit, symmetry=args.symmetry)
    text = dumps_code(res.witness)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(res.summary())
    return EXIT_OK if res.complete else EXIT_CAPACITY


def cmd_conjecture(args) -> int:
    qs = range(args.qmin, args.qmax + 1)
    kw = {"time_limit": args.time_limit}
    complete = True
    if args.which in ("2", "both"):
        for v in check_conjecture2(args.n, qs, **kw):
            complete &= v.complete
            print(f"conjecture2 n={args.n} {v}")
    if args.which in ("1", "both"):
        for row in check_conjecture1(args.n, qs, **kw):
            print(f"conjecture1 n={args.n} {row}")
    return EXIT_OK if complete else EXIT_CAPACITY


def cmd_simulate(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("NONOVERLAP_SEED", "0"))
    code = load_code(args.file)
    stats = run_trials(StreamConfig(code, args.length, args.rate, seed), args.trials)
    print("trial,delay,chance_hits,min_gap")
    for rec in stats.records:
        print(rec.csv())
    print(stats.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonoverlap",
                                     description="Non-overlapping (cross-bifix-free) codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a prefix-anchored code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--scheme", choices=("c1", "c2"), default="c2")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--auto", choices=("lemma2", "thm6", "best"))
    p.add_argument("--budget", type=int, default=64,
                   help="sweep every l when q <= budget (auto best)")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a code file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="bounds and exact values for C(n,q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("count", help="count S-free words")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--s", type=int, help="first s words of {0..l-1}^k (default all)")
    p.add_argument("--pattern", action="append",
                   help="explicit forbidden word, e.g. 0,0 (repeatable)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("search", help="exact C(n,q) by maximum clique search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--symmetry", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("conjecture", help="compare exact values with k = n-1 codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--qmin", type=int, default=2)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--which", choices=("1", "2", "both"), default="both")
    p.add_argument("--time-limit", type=float)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("simulate", help="marker detection trials on random streams")
    p.add_argument("file")
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--rate", type=float, default=0.01)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RecipeInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
