"""How many terms does descent actually produce relative to the e*r bound?

    python3 scripts/descent_blowup.py --K GF(2) --e 3 --count 200
"""

import argparse
import random
from collections import Counter

from partrank import blowup_bound, descend, make_field
from partrank.harness import descent_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--K", default="GF(2)")
    ap.add_argument("--e", type=int, default=2)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    K = make_field(args.K)
    L = make_field(f"GF({K.p}^{K.e * args.e})")
    rng = random.Random(args.seed)
    ratio = Counter()
    for _ in range(args.count):
        items, dec = descent_instance(K, L, rng)
        out = descend(items, L, dec)
        ratio[(len(dec), len(out))] += 1
    print("terms_in terms_out bound count")
    for (r, s), c in sorted(ratio.items()):
        print(f"{r:8d} {s:9d} {blowup_bound(args.e, r):5d} {c:5d}")


if __name__ == "__main__":
    main()
