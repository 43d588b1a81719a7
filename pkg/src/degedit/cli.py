"""Command-line interface: solve, kernelize, verify, gen.

Exit codes: 0 success (including a no answer), 1 usage or input error,
2 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .dpsolve import solve_auto
from .errors import CapacityError, ParseError
from .generator import generate_random_planar_instance
from .instance import CONNECTED, PLAIN, Solution
from .io import format_solution, parse_instance, write_instance
from .kernelize import KERNEL, format_trace, kernelize
from .normalize import DECIDED_YES
from .oracle import (DEFAULT_EDGE_CAP, DEFAULT_VERTEX_CAP,
                     brute_force_min_cost, equivalence_check)
from .treewidth import decompose, to_nice

DEFAULT_WIDTH_CAP = 8


def _read_instance(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as ex:
        raise ParseError(f"cannot read {path}: {ex}")
    return parse_instance(text)


def _solve_with(inst, method: str, width_cap: int) -> Solution | None:
    if method == "dp":
        ntd = to_nice(decompose(inst.graph), inst.graph)
        return solve_auto(inst, ntd, enforce_window=False)
    if method == "brute":
        rep = brute_force_min_cost(inst)
        return rep.best() if rep.feasible else None
    # auto: prefer the dynamic program while the decomposition stays narrow
    ntd = to_nice(decompose(inst.graph), inst.graph)
    if ntd.width <= width_cap:
        return solve_auto(inst, ntd, enforce_window=False)
    if inst.graph.n <= DEFAULT_VERTEX_CAP and inst.graph.m <= DEFAULT_EDGE_CAP:
        rep = brute_force_min_cost(inst)
        return rep.best() if rep.feasible else None
    raise CapacityError(
        f"decomposition width {ntd.width} exceeds the cap {width_cap} and "
        f"the instance exceeds the brute-force caps "
        f"({DEFAULT_VERTEX_CAP} vertices / {DEFAULT_EDGE_CAP} edges)")


def cmd_solve(args) -> int:
    inst = _read_instance(args.input)
    sol = _solve_with(inst, args.method, args.width_cap)
    sys.stdout.write(format_solution(sol))
    return 0


def cmd_kernelize(args) -> int:
    inst = _read_instance(args.input)
    result = kernelize(inst)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(format_trace(result.log))
    if result.kind == KERNEL:
        with open(args.output, "w") as fh:
            fh.write(write_instance(result.instance))
        sys.stdout.write(
            f"k kernel {result.instance.graph.n} {result.instance.graph.m} "
            f"certified {1 if result.certified else 0}\n")
    else:
        sys.stdout.write(
            f"k decided {'yes' if result.kind == DECIDED_YES else 'no'}\n")
    return 0


def cmd_verify(args) -> int:
    a = _read_instance(args.original)
    b = _read_instance(args.kernel)
    same = equivalence_check(a, b)
    sys.stdout.write(f"equivalent {'yes' if same else 'no'}\n")
    return 0


def cmd_gen(args) -> int:
    if args.n < 0:
        raise ParseError("--n must be non-negative")
    inst = generate_random_planar_instance(
        args.n, args.kv, args.ke, args.cost_budget,
        CONNECTED if args.variant == "connected" else PLAIN,
        seed=args.seed, raw=args.raw)
    text = write_instance(inst)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degedit",
        description="degree-constrained deletion on planar graphs: "
                    "exact solving and kernelization")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance exactly")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("auto", "dp", "brute"), default="auto")
    p.add_argument("--width-cap", type=int, default=DEFAULT_WIDTH_CAP)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="reduce an instance to a kernel")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--trace")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("verify", help="check two instances agree on feasibility")
    p.add_argument("--original", required=True)
    p.add_argument("--kernel", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random planar instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kv", type=int, default=1)
    p.add_argument("--ke", type=int, default=1)
    p.add_argument("--cost-budget", type=int, default=3)
    p.add_argument("--variant", choices=("plain", "connected"), default="plain")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.add_argument("--raw", action="store_true",
                   help="draw degree targets without the solvable-window bias")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 1 if ex.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    except CapacityError as ex:
        print(f"capacity exceeded: {ex}", file=sys.stderr)
        return 2
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
