"""Reconstruct a category with a free group action as a skew product of its quotient."""

import argparse
import random

from skewcat import fixtures as fx
from skewcat.actions import gross_tucker, validate_free_action


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for i in range(args.count):
        d, g, act = fx.random_free_action(rng)
        action, free, _ = validate_free_action(g, d, act)
        gt = gross_tucker(action)
        q = gt.quotient.quotient
        print(
            f"#{i}: |D|={len(d)} |G|={g.order} |D/G|={len(q)} "
            f"eta image={sorted(g.name_of(x) for x in gt.cocycle.image())} rho verified"
        )


if __name__ == "__main__":
    main()
