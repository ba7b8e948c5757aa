"""Run the derivative-space membership experiment on random cubics."""

import argparse
import random

from partrank import df_experiment, make_field
from partrank.harness import random_form


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default="GF(5)")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    F = make_field(args.field)
    rng = random.Random(args.seed)
    print("dim member gens strength flags")
    for _ in range(args.count):
        rep = df_experiment(random_form(F, args.n, args.d, rng))
        print(rep["dspace_dim"], int(rep["member"]), rep["generators"], rep["strength"],
              ",".join(rep["flags"]) or "-")


if __name__ == "__main__":
    main()
