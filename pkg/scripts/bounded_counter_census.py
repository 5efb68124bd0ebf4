"""Distinct counter values per input length, a finite-range heuristic."""

import argparse

from gencounter.machines import LGenParams, build_lgen, build_lpal
from gencounter.oracle import counter_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=8)
    args = ap.parse_args()
    for spec in (build_lgen(LGenParams(2)), build_lgen(LGenParams(3)), build_lpal()):
        rep = counter_census(spec, args.max_len)
        print(f"{spec.name}: distinct values by length {rep.distinct_by_length}; "
              f"possibly regular: {rep.possibly_regular}")


if __name__ == "__main__":
    main()
