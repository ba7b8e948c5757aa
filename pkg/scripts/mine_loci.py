"""Lowest degree of a mined equation for small bounded-rank loci.

    python3 scripts/mine_loci.py --field GF(101) --max-degree 3
"""

import argparse

from partrank import LocusSpec, make_field, mine_equation
from partrank.errors import PrankError

LOCI = [
    ("2x2 rank 1", LocusSpec(d=2, shape=(2, 2), r=1)),
    ("2x3 rank 1", LocusSpec(d=2, shape=(2, 3), r=1)),
    ("3x3 rank 2", LocusSpec(d=2, shape=(3, 3), r=2)),
    ("2x2x2 prk 1, I={1}", LocusSpec(d=3, shape=(2, 2, 2), r=1)),
    ("ternary quadrics, strength 1", LocusSpec(d=2, nvars=3, r=1)),
    ("pairs of 2x2, collective 1", LocusSpec(d=2, m=2, shape=(2, 2), r=1)),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default="GF(101)")
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    F = make_field(args.field)
    for name, spec in LOCI:
        found = "none"
        for D in range(1, args.max_degree + 1):
            try:
                eq = mine_equation(spec, F, D, seed=args.seed)
            except PrankError as exc:
                found = exc.code
                break
            if eq is not None:
                found = f"degree {eq.polynomial.degree}, kernel dim {eq.kernel_dim}"
                break
        print(f"{name:32s} {found}")


if __name__ == "__main__":
    main()
