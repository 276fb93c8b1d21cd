"""Command-line surface: partition functions, Whittaker values, verifiers.

Exit codes: 0 success, 1 verification failures found, 2 usage error.
Vectors are comma-separated integers; Weyl elements are either words in
simple reflections ("s1 s2"), one-line notation ("2 1 3"), or "e".
"""

from __future__ import annotations

import argparse
import json
import sys

from .lattice import VARIANTS, SystemSpec, partition_function
from .sweeps import SUITES, run_suite
from .weyl import parse_permutation
from . import whittaker as wh


def _vector(text, r, what):
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"{what} must be a comma-separated integer vector")
    if len(vec) != r:
        raise ValueError(f"{what} must have length r = {r}")
    return vec


def _build_parser():
    top = argparse.ArgumentParser(prog="metahori")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True, help="cover degree")
        p.add_argument("--r", type=int, required=True, help="rank / rows")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("partition", help="partition function of a system")
    common(p)
    p.add_argument("--mu", required=True, help="top boundary weight, e.g. 2,3,0")
    p.add_argument("--theta", required=True, help="left boundary scolors")
    p.add_argument("--w", required=True, help="right boundary Weyl element")
    p.add_argument("--variant", choices=VARIANTS, default="monochrome")
    p.add_argument("--N", type=int, default=None, help="block count override")

    p = sub.add_parser("whittaker", help="Whittaker value or full vector")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--w-prime", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--theta", default=None)
    p.add_argument("--all", action="store_true", help="print the full vector")

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-r", type=int, required=True)
    p.add_argument("--max-mu", type=int, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return top


def cmd_partition(args):
    if args.n < 1 or args.r < 1:
        raise ValueError("n and r must be positive")
    mu = _vector(args.mu, args.r, "--mu")
    theta = _vector(args.theta, args.r, "--theta")
    w = parse_permutation(args.w, args.r)
    spec = SystemSpec(args.n, args.r, mu, theta, w, args.variant, args.N)
    z = partition_function(spec)
    if args.format == "json":
        print(json.dumps(z.to_json()))
    else:
        print(z)
    return 0


def cmd_whittaker(args):
    if args.n < 1 or args.r < 1:
        raise ValueError("n and r must be positive")
    lam = _vector(args.lam, args.r, "--lambda")
    wp = parse_permutation(args.w_prime, args.r)
    w = parse_permutation(args.w, args.r)
    if args.all:
        vec = wh.evaluate_vector(args.n, w, lam, wp)
        print(json.dumps(vec.to_json()) if args.format == "json" else vec)
        return 0
    if args.theta is None:
        raise ValueError("either --theta or --all is required")
    theta = _vector(args.theta, args.r, "--theta")
    value = wh.evaluate(args.n, theta, w, lam, wp)
    print(json.dumps(value.to_json()) if args.format == "json" else value)
    return 0


def cmd_verify(args):
    if args.max_n < 1 or args.max_r < 1:
        raise ValueError("--max-n and --max-r must be positive")
    report = run_suite(args.suite, args.max_n, args.max_r, args.max_mu)
    if args.format == "json":
        print(json.dumps(report.to_json()))
    else:
        print(report.summary())
        for fail in report.failures:
            print(f"  boundary={fail['boundary']}")
            print(f"    lhs={fail['lhs']}")
            print(f"    rhs={fail['rhs']}")
    return 0 if report.ok else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"partition": cmd_partition,
               "whittaker": cmd_whittaker,
               "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
