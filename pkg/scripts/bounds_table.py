"""Tabulate min_n, the cubical prk bound, and the degree bound."""

import argparse

from partrank.eqmine import cubical_prk_bound, degree_bound_details, min_n
from partrank.errors import PrankError


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-d", type=int, default=5)
    ap.add_argument("--max-r", type=int, default=4)
    ap.add_argument("--m", type=int, default=1)
    args = ap.parse_args()
    print(" d  r  n  prk_bound  D_bits")
    for d in range(2, args.max_d + 1):
        for r in range(1, args.max_r + 1):
            n = min_n(d, args.m, r)
            try:
                bits = f"{degree_bound_details(d, args.m, r)['rhs_bits']:.2f}"
            except PrankError as exc:
                bits = exc.code
            print(f"{d:2d} {r:2d} {n:2d} {cubical_prk_bound(d, args.m, n):10d}  {bits}")


if __name__ == "__main__":
    main()
