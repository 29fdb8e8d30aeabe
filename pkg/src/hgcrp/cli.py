"""Command-line front end.

    hgcrp solve   --alg greedy|exact|opt|perfect|match2-opt|match2-pcis --in F [--out P]
    hgcrp check   --in F --partition P [--props core,is,nash,pareto,perfect]
    hgcrp metrics --in F --what poa|pos|welfare|core-count [--partition P]
    hgcrp gen     exact-cover|mis|pos-family|random ... [--out F]

Exit codes: 0 success, 1 property violated / no solution / verification
failed, 2 usage error, 3 I/O or parse error, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import checks, exact, generators, greedy, matching, metrics
from .errors import BudgetExceeded, HGCRPError, Unbounded
from .model import (
    Instance,
    Partition,
    format_utility,
    parse_instance,
    parse_partition,
    psi,
    serialize_instance,
    serialize_partition,
    welfare,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3, 4

PSI_PREFIX = 8

SOLVERS: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "greedy": (lambda inst, budget: greedy.greedy_solve(inst), ("core", "is")),
    "exact": (exact.psi_max_partition, ("core", "is", "pareto")),
    "opt": (exact.socially_optimal, ("pareto",)),
    "perfect": (exact.perfect_partition, ("perfect",)),
    "match2-opt": (lambda inst, budget: matching.match2_opt(inst), ("pareto",)),
    "match2-pcis": (lambda inst, budget: matching.match2_pcis(inst), ("core", "is", "pareto")),
}


class _Failure(Exception):
    """A well-formed run whose answer is negative (exit 1)."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _decimal(x: Fraction) -> str:
    return f"{format_utility(x)} (≈{x.numerator / x.denominator:.6f})"


def _budget(args) -> exact.EnumerationBudget:
    overrides = {}
    if args.max_agents is not None:
        overrides["max_agents"] = args.max_agents
    if args.max_partitions is not None:
        overrides["max_partitions"] = args.max_partitions
    return exact.EnumerationBudget.from_env(**overrides)


def _summary(inst: Instance, pi: Partition) -> list[str]:
    vector = psi(inst, pi)
    prefix = ",".join(format_utility(u) for u in vector[:PSI_PREFIX])
    if len(vector) > PSI_PREFIX:
        prefix += ",..."
    return [
        f"agents: {inst.n}",
        f"coalitions: {len(pi)}",
        f"welfare: {format_utility(welfare(inst, pi))}",
        f"psi: {prefix}",
    ]


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.input))
    budget = _budget(args)
    solver, props = SOLVERS[args.alg]
    pi = solver(inst, budget)
    if pi is None:
        print(f"algorithm: {args.alg}")
        print("perfect: none")
        raise _Failure("no perfect partition exists")

    verified, skipped = [], []
    for prop in props:
        try:
            result = checks.check_properties(inst, pi, [prop], budget)[prop]
        except BudgetExceeded:
            skipped.append(prop)
            continue
        if result is not None:
            raise _Failure(f"verification failed: {prop}: {result.describe()}")
        verified.append(prop)

    lines = [f"algorithm: {args.alg}"]
    if args.out is None:
        lines.append("partition: " + repr(pi)[1:-1])
    else:
        _write(args.out, serialize_partition(pi))
        lines.append(f"partition-file: {args.out}")
    lines += _summary(inst, pi)
    lines.append("verified: " + (",".join(verified) or "none"))
    if skipped:
        lines.append("unverified: " + ",".join(skipped) + " (enumeration budget)")
    print("\n".join(lines))
    return EXIT_OK


def cmd_check(args) -> int:
    inst = parse_instance(_read(args.input))
    pi = parse_partition(_read(args.partition), inst)
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    unknown = [p for p in props if p not in checks.PROPERTIES]
    if unknown or not props:
        raise argparse.ArgumentTypeError(f"unknown properties {unknown}")
    results = checks.check_properties(inst, pi, props, _budget(args))
    failed = False
    for prop, dev in results.items():
        if dev is None:
            print(f"{prop}: ok")
        else:
            failed = True
            print(f"{prop}: violated {dev.describe()}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_metrics(args) -> int:
    inst = parse_instance(_read(args.input))
    budget = _budget(args)
    if args.what == "welfare":
        if args.partition is not None:
            pi = parse_partition(_read(args.partition), inst)
        else:
            pi = exact.socially_optimal(inst, budget)
        print(_decimal(welfare(inst, pi)))
        return EXIT_OK
    summary = metrics.welfare_summary(inst, budget)
    if args.what == "core-count":
        print(summary.core_count)
        return EXIT_OK
    try:
        ratio = summary.price_of_anarchy if args.what == "poa" else summary.price_of_stability
    except Unbounded:
        print("unbounded")
        return EXIT_OK
    print(_decimal(ratio))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "exact-cover":
        inst = generators.from_exact_cover(
            generators.parse_set_system(_read(args.input)), pad_uncovered=not args.no_pad
        )
    elif args.kind == "mis":
        inst = generators.from_independent_set(generators.parse_graph(_read(args.input)), args.eps)
    elif args.kind == "pos-family":
        inst = generators.pos_family(args.n, args.eps)
    else:
        inst = generators.random_instance(
            args.n, args.max_size or args.n, args.density, args.max_den, args.seed, cap=args.cap
        )
    _write(args.out, serialize_instance(inst))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgcrp", description="Hedonic games with common ranking property."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_budget(p):
        p.add_argument("--max-agents", type=int, help="enumeration agent limit")
        p.add_argument("--max-partitions", type=int, help="enumeration partition cap")
        return p

    p = with_budget(sub.add_parser("solve", help="compute a partition"))
    p.add_argument("--alg", required=True, choices=sorted(SOLVERS))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = with_budget(sub.add_parser("check", help="test stability/efficiency properties"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--props", default="core,is,nash,pareto,perfect")
    p.set_defaults(func=cmd_check)

    p = with_budget(sub.add_parser("metrics", help="welfare and price of anarchy/stability"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--what", required=True, choices=["poa", "pos", "welfare", "core-count"])
    p.add_argument("--partition")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("kind", choices=["exact-cover", "mis", "pos-family", "random"])
    p.add_argument("--in", dest="input", help="set system (exact-cover) or graph (mis)")
    p.add_argument("--out")
    p.add_argument("--n", type=int)
    p.add_argument("--eps", type=_fraction)
    p.add_argument("--max-size", type=int)
    p.add_argument("--density", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--max-den", type=int, default=3)
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-pad", action="store_true", help="exact-cover: skip the uncovered-element gadget")
    p.set_defaults(func=cmd_gen)
    return parser


def _gen_usage(args) -> str | None:
    if args.kind in ("exact-cover", "mis") and not args.input:
        return f"gen {args.kind} requires --in"
    if args.kind in ("pos-family", "random") and args.n is None:
        return f"gen {args.kind} requires --n"
    return None


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "gen":
        problem = _gen_usage(args)
        if problem:
            print(f"hgcrp: error: {problem}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"hgcrp: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except argparse.ArgumentTypeError as exc:
        print(f"hgcrp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"hgcrp: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, HGCRPError) as exc:
        print(f"hgcrp: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"hgcrp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
