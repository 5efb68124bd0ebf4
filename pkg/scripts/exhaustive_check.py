"""Exhaustive differential check of one builder against its language oracle."""

import argparse
import functools

from gencounter.automaton import Visibility
from gencounter.machines import LGenParams, build_lgen, build_lpal, build_lpat, real_to_matrix
from gencounter.oracle import Corpus, differential_test, lpat_reversal_bound, oracle_lgen, oracle_lpal, oracle_lpat


def _int_list(text):
    return tuple(int(x) for x in text.split(","))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("family", choices=("lgen", "lpat", "lpal"))
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--l", type=_int_list, default=(1, 1), help="lgen multipliers")
    ap.add_argument("--matrix", action="store_true", help="check the real-to-matrix transform of lgen")
    ap.add_argument("--partially-blind", action="store_true", help="lpal variant")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    bound = None
    if args.family == "lgen":
        params = LGenParams(len(args.l) + 1, args.l)
        spec = build_lgen(params)
        if args.matrix:
            spec = real_to_matrix(spec)
        oracle = functools.partial(oracle_lgen, params)
    elif args.family == "lpat":
        spec, oracle, bound = build_lpat(), oracle_lpat, lpat_reversal_bound
    else:
        vis = Visibility.PARTIALLY_BLIND if args.partially_blind else Visibility.DETERMINISTIC
        spec, oracle = build_lpal(vis), oracle_lpal

    rep = differential_test(spec, oracle, Corpus(spec.alphabet, args.max_len),
                            reversal_bound=bound, workers=args.workers)
    for line in rep.to_lines()[:20]:
        print(line)
    print(f"{spec.name}: {rep.summary()}")
    print("max counter reversals by length:", dict(sorted(rep.max_counter_reversals.items())))
    raise SystemExit(0 if rep.ok else 1)


if __name__ == "__main__":
    main()
