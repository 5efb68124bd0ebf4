"""Random interchange trials on L_gen and a mixed-tail machine."""

import argparse
import collections
import random

from gencounter.automaton import HeadMode, MachineSpec, Transition, Visibility
from gencounter.core import NOOP, dec, inc, real_counter
from gencounter.machines import LGenParams, build_lgen
from gencounter.oracle import Decomposition, interchange_test


def mixed_tail():
    rows = [("s", "¢", "A", NOOP), ("A", "a", "A", inc(0)), ("A", "b", "B", dec(0)), ("A", "c", "B", dec(0)),
            ("B", "b", "B", dec(0)), ("B", "c", "B", dec(0)), ("A", "$", "acc", NOOP), ("B", "$", "acc", NOOP)]
    table = {}
    for q, a, t, op in rows:
        for s in (0, 1):
            table[(q, a, s)] = Transition(t, 0 if a == "$" else 1, op)
    return MachineSpec("mixed-tail", ("s", "A", "B", "acc"), "s", frozenset({"acc"}), ("a", "b", "c"),
                       HeadMode.ONE_WAY, Visibility.PARTIALLY_BLIND, real_counter((2,), [(1,)]), table)


def sweep(spec, make_input, trials, rng):
    r = len(spec.states) ** 2 + 1
    outcomes = collections.Counter()
    for _ in range(trials):
        x, v1 = make_input(r, rng)
        outcomes[interchange_test(spec, Decomposition.random(x, r, v1, rng)).outcome.value] += 1
    return dict(outcomes)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    def anbn(r, rng):
        n = rng.randint(r, 40)
        return "a" * n + "b" * n, rng.randint(0, n - r) + n

    def anbncn(r, rng):
        n = rng.randint(r // 2 + 1, 30)
        return "a" * n + "b" * n + "c" * n, rng.randint(0, 3 * n - r)

    def tail(r, rng):
        n = rng.randint(r, 30)
        return "a" * n + "".join(rng.choice("bc") for _ in range(n)), n

    print("L_gen k=2:", sweep(build_lgen(LGenParams(2)), anbn, args.trials, rng))
    print("L_gen k=3:", sweep(build_lgen(LGenParams(3)), anbncn, args.trials, rng))
    print("mixed tail:", sweep(mixed_tail(), tail, args.trials, rng))


if __name__ == "__main__":
    main()
