"""Command-line interface.

Subcommands: generate, solve, exact, verify, bench.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from maxcover import baselines, bench, generators, instancefile, verification
from maxcover.greedy import STRATEGIES, approximate_maximum_cover


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxcover",
        description="Sublinear randomized greedy maximum coverage over "
                    "black-box sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a seeded instance file")
    gen.add_argument("--kind", choices=sorted(generators.GENERATORS),
                     default="random")
    gen.add_argument("--n", type=int, default=10, help="number of sets")
    gen.add_argument("--k", type=int, default=3, help="selection budget")
    gen.add_argument("--m-max", type=int, default=20,
                     help="max set size (random kind)")
    gen.add_argument("--m", type=int, default=20,
                     help="set size (disjoint/overlap-chain/twin kinds)")
    gen.add_argument("--step", type=int, default=10,
                     help="start offset between neighbors (overlap-chain)")
    gen.add_argument("--d", type=int, default=2,
                     help="number of disjoint blocks (twin kind)")
    gen.add_argument("--dim", type=int, default=2,
                     help="dimensions (rectangles kind)")
    gen.add_argument("--coord-max", type=int, default=100,
                     help="coordinate bound (rectangles kind)")
    gen.add_argument("--universe", type=int, default=None,
                     help="universe size (random kind; default 2*m_max)")
    gen.add_argument("--bias", type=float, nargs=4, default=None,
                     metavar=("AL", "AR", "DL", "DR"),
                     help="alpha_l alpha_r delta_l delta_r (random kind)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", default=None,
                     help="output path (twin: used as a prefix); default stdout")

    solve = sub.add_parser("solve", help="run the randomized greedy solver")
    solve.add_argument("instance", help="instance file path")
    solve.add_argument("--backend", choices=instancefile.BACKEND_KINDS,
                       default="sorted")
    solve.add_argument("--strategy", choices=sorted(STRATEGIES),
                       default="single")
    solve.add_argument("--xi", type=float, default=None,
                       help="accuracy parameter, used directly")
    solve.add_argument("--epsilon", type=float, default=None,
                       help="target relative error; mapped to a (much "
                            "smaller) xi via the bias ratio")
    solve.add_argument("--gamma", type=float, default=0.1,
                       help="failure probability budget")
    solve.add_argument("--seed", type=int, default=None)
    solve.add_argument("--csv", default=None, help="append a result row here")

    exact = sub.add_parser("exact", help="exact baselines on small instances")
    exact.add_argument("instance", help="instance file path")
    exact.add_argument("--mode", choices=("optimum", "greedy", "min-cover"),
                       default="optimum")
    exact.add_argument("--k", type=int, default=None,
                       help="override the file's selection budget")

    verify = sub.add_parser("verify", help="run the verification suites")
    verify.add_argument("--suite", action="append", default=None,
                        choices=sorted(verification.SUITES),
                        help="repeatable; default: all suites")
    verify.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)

    benchp = sub.add_parser("bench", help="counter and kernel benchmarks")
    benchp.add_argument("--which", choices=("counters", "kernels", "all"),
                        default="all")
    benchp.add_argument("--csv", default=None,
                        help="write CSV here instead of a table")
    benchp.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_generate(args, parser) -> int:
    kind = args.kind
    try:
        if kind == "random":
            bias = tuple(args.bias) if args.bias else (0.0, 0.0, 0.0, 0.0)
            instfile = generators.generate_random(
                n=args.n, m_max=args.m_max, k=args.k, universe=args.universe,
                seed=args.seed, bias=bias)
        elif kind == "disjoint":
            instfile = generators.generate_disjoint(
                n=args.n, m=args.m, k=args.k, seed=args.seed)
        elif kind == "overlap-chain":
            instfile = generators.generate_overlap_chain(
                n=args.n, m=args.m, step=args.step, k=args.k, seed=args.seed)
        elif kind == "rectangles":
            instfile = generators.generate_rectangles(
                n=args.n, dim=args.dim, coord_max=args.coord_max, k=args.k,
                seed=args.seed)
        elif kind == "twin":
            pair = generators.generate_twin(
                n=args.n, m=args.m, d=args.d, k=args.k, seed=args.seed)
            if args.output is None:
                sys.stdout.write(pair.left.emit())
                sys.stdout.write(pair.right.emit())
            else:
                instancefile.save(pair.left, args.output + ".left")
                instancefile.save(pair.right, args.output + ".right")
                print(f"wrote {args.output}.left and {args.output}.right")
            return 0
        else:  # pragma: no cover - argparse restricts choices
            parser.error(f"unknown kind {kind}")
    except ValueError as exc:
        parser.error(str(exc))

    if args.output is None:
        sys.stdout.write(instfile.emit())
    else:
        instancefile.save(instfile, args.output)
    return 0


def _cmd_solve(args, parser) -> int:
    if (args.xi is None) == (args.epsilon is None):
        parser.error("pass exactly one of --xi or --epsilon")
    try:
        instfile = instancefile.load(args.instance)
        instance = instancefile.build_instance(instfile, args.backend)
        result = approximate_maximum_cover(
            instance, xi=args.xi, epsilon=args.epsilon, gamma=args.gamma,
            strategy=args.strategy, seed=args.seed)
    except (OSError, instancefile.InstanceParseError, ValueError,
            TypeError) as exc:
        parser.error(str(exc))

    c = result.counters
    print("indices " + " ".join(str(i) for i in result.indices))
    print(f"z {result.z:.6f}")
    print(f"z_rounded {result.z_rounded}")
    print(f"steps {c.steps}")
    print(f"random_draws {c.random_draws}")
    print(f"membership_queries {c.membership_queries}")
    if args.csv:
        import os
        header = ("instance,backend,strategy,gamma,seed,indices,z,"
                  "steps,random_draws,membership_queries\n")
        fresh = not os.path.exists(args.csv)
        with open(args.csv, "a", encoding="utf-8") as fh:
            if fresh:
                fh.write(header)
            idx = ";".join(str(i) for i in result.indices)
            fh.write(f"{args.instance},{args.backend},{args.strategy},"
                     f"{args.gamma},{args.seed},{idx},{result.z:.6f},"
                     f"{c.steps},{c.random_draws},{c.membership_queries}\n")
    return 0


def _cmd_exact(args, parser) -> int:
    try:
        instfile = instancefile.load(args.instance)
        sets = instancefile.materialize(instfile)
        k = args.k if args.k is not None else instfile.k
        if args.mode == "optimum":
            sol = baselines.brute_force_optimum(sets, k)
            print("indices " + " ".join(str(i) for i in sol.indices))
            print(f"coverage {sol.coverage}")
        elif args.mode == "greedy":
            sol = baselines.exact_greedy(sets, k)
            print("indices " + " ".join(str(i) for i in sol.indices))
            print(f"coverage {sol.coverage}")
        else:
            size = baselines.brute_force_min_cover(sets)
            print(f"min_cover {size}")
    except (OSError, instancefile.InstanceParseError, ValueError,
            baselines.SubsetCapError) as exc:
        parser.error(str(exc))
    return 0


def _cmd_verify(args, parser) -> int:
    names = args.suite if args.suite else sorted(verification.SUITES)
    reports = []
    shared = None
    for name in names:
        if name in ("ratio", "sandwich"):
            if shared is None:
                shared = verification.ratio_and_sandwich_suite(seed=args.seed)
            reports.append(shared[0] if name == "ratio" else shared[1])
        else:
            reports.append(verification.SUITES[name](seed=args.seed))
    failed = 0
    for report in reports:
        for line in report.lines():
            print(line)
        if not report.passed:
            failed += 1
    print(f"{len(reports) - failed}/{len(reports)} suites passed")
    return 0 if failed == 0 else 1


def _cmd_bench(args, parser) -> int:
    chunks = []
    if args.which in ("counters", "all"):
        rows = bench.counter_rows(seed=args.seed)
        chunks.append(bench.counter_csv(rows))
    if args.which in ("kernels", "all"):
        rows = bench.kernel_rows(seed=args.seed)
        chunks.append(bench.kernel_csv(rows))
    text = "\n".join(chunks)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "exact": _cmd_exact,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return _COMMANDS[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
