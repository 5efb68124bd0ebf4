"""Worst-case counter reversals of the L_pat machine, grouped by block count."""

import argparse

from gencounter.machines import build_lpat
from gencounter.oracle import Corpus, count_blocks, differential_test, lpat_reversal_bound, oracle_lpat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=10)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    rep = differential_test(
        build_lpat(), oracle_lpat, Corpus(("0", "1", "#"), args.max_len),
        shape=count_blocks, reversal_bound=lpat_reversal_bound, workers=args.workers,
    )
    print("blocks  max_reversals  bound")
    for m, r in sorted(rep.max_counter_reversals.items()):
        print(f"{m:6d}  {r:13d}  {2 * m:5d}")
    print(rep.summary())


if __name__ == "__main__":
    main()
