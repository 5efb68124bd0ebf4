"""Command-line interface.

Exit codes: 0 accept / check passed, 1 any other verdict / check failed,
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import functools
import sys

from . import automaton, machines, oracle
from .automaton import LEFT_END, InputError, Visibility
from .core import SpecError, validate_spec
from .machine_file import ParseError, emit, load, render_value

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load(path):
    try:
        return load(path)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def format_report(spec, word: str, res: automaton.RunResult) -> str:
    lines = []
    if res.trace is not None:
        lines.append("trace:")
        tape = (LEFT_END, *word, automaton.RIGHT_END)
        for i, (cfg, t) in enumerate(res.trace):
            sym = "^" if tape[cfg.head] == LEFT_END else tape[cfg.head]
            lines.append(f"{i} {cfg.state} {cfg.head} {sym} {t.op} {render_value(spec.counter, cfg.counter)}")
    lines += [
        f"machine: {spec.name}",
        f"input: {word}",
        f"verdict: {res.verdict.value}",
        f"steps: {res.steps}",
        f"head_reversals: {res.head_reversals}",
        f"counter_reversals: {res.counter_reversals}",
        f"counter: {render_value(spec.counter, res.final.counter)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_run(args) -> int:
    spec = _load(args.machine)
    try:
        res = automaton.run(spec, args.input, args.max_steps, keep_trace=args.trace)
    except InputError as e:
        raise UsageError(str(e)) from None
    sys.stdout.write(format_report(spec, args.input, res))
    return EXIT_OK if res.accepted else EXIT_FAIL


def _oracle_for(args, spec):
    if args.oracle == "lgen":
        k = len(spec.alphabet)
        l = args.l or (1,) * (k - 1)
        try:
            params = machines.LGenParams(len(l) + 1, l, symbols="".join(spec.alphabet))
        except SpecError as e:
            raise UsageError(str(e)) from None
        return functools.partial(oracle.oracle_lgen, params), None
    if args.oracle == "lpat":
        return oracle.oracle_lpat, oracle.lpat_reversal_bound
    return oracle.oracle_lpal, None


def cmd_check(args) -> int:
    spec = _load(args.machine)
    predicate, bound = _oracle_for(args, spec)
    corpus = oracle.Corpus(spec.alphabet, args.max_len)
    report = oracle.differential_test(
        spec, predicate, corpus, args.max_steps, reversal_bound=bound, workers=args.workers
    )
    for line in report.to_lines()[: args.show]:
        print(line)
    for x, n in report.bound_violations[: args.show]:
        print(f"reversal bound exceeded: {x!r} used {n} counter reversals")
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_build(args) -> int:
    try:
        if args.family == "lgen":
            l = args.l
            k = args.k or (len(l) + 1 if l else 3)
            if l and len(l) != k - 1:
                raise UsageError(f"--k {k} needs {k - 1} multipliers, got {len(l)}")
            spec = machines.build_lgen(machines.LGenParams(k, l or (), args.primes or ()))
        elif args.family == "lpat":
            spec = machines.build_lpat()
        else:
            spec = machines.build_lpal(Visibility(args.visibility))
    except SpecError as e:
        raise UsageError(str(e)) from None
    _write(emit(spec), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    spec = _load(args.machine)
    try:
        out = machines.real_to_matrix(spec)
    except SpecError as e:
        raise UsageError(str(e)) from None
    _write(emit(out), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    spec = _load(args.machine)
    report = validate_spec(spec.counter, args.depth)
    machine_report = automaton.validate_machine(spec)
    for v in report.violations:
        print(f"counter: {v}")
    for w in machine_report.warnings:
        print(f"warning: {w}")
    print("ok" if report.ok else "invalid")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gencounter", description="generalized counter automata")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a machine on one input")
    r.add_argument("machine")
    r.add_argument("input")
    r.add_argument("--trace", action="store_true")
    r.add_argument("--max-steps", type=int, default=automaton.DEFAULT_MAX_STEPS)
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", help="compare a machine with a language oracle exhaustively")
    c.add_argument("machine")
    c.add_argument("--oracle", required=True, choices=("lgen", "lpat", "lpal"))
    c.add_argument("--max-len", type=int, required=True)
    c.add_argument("--l", type=_int_list, default=None, help="lgen multipliers, e.g. 2,1")
    c.add_argument("--max-steps", type=int, default=automaton.DEFAULT_MAX_STEPS)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--show", type=int, default=20, help="disagreements to print")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="write a machine file for a recognizer family")
    b.add_argument("--family", required=True, choices=("lgen", "lpat", "lpal"))
    b.add_argument("--k", type=int, default=None)
    b.add_argument("--l", type=_int_list, default=None)
    b.add_argument("--primes", type=_int_list, default=None)
    b.add_argument(
        "--visibility", default="deterministic", choices=("deterministic", "partially-blind")
    )
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build)

    t = sub.add_parser("transform", help="real-sqrt counter machine -> 1x1 matrix counter machine")
    t.add_argument("machine")
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("validate", help="check counter side conditions")
    v.add_argument("machine")
    v.add_argument("--depth", type=int, default=6, help="word-search depth for matrix counters")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
