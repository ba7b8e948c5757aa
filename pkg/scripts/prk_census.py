"""Distribution of partition rank over all tensors of a small shape.

    python3 scripts/prk_census.py --field GF(2) --shape 2,2,2
"""

import argparse
import itertools
from collections import Counter
from math import prod

from partrank import Tensor, make_field, prk_exact


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default="GF(2)")
    ap.add_argument("--shape", default="2,2,2")
    args = ap.parse_args()
    F = make_field(args.field)
    shape = tuple(int(x) for x in args.shape.split(","))
    size = prod(shape)
    if F.order ** size > 1 << 16:
        raise SystemExit("space too large for a census")
    counts = Counter()
    for vals in itertools.product(range(F.order), repeat=size):
        counts[prk_exact([Tensor(F, shape, vals)]).value] += 1
    for r in sorted(counts):
        print(f"prk = {r}: {counts[r]}")


if __name__ == "__main__":
    main()
