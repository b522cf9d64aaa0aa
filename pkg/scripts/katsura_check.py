"""Which 1x1 Katsura data (a, b) survive reducing the acting Z to Z/m?

Builds the Exel-Pardo system with the division-with-remainder rule and asks
the Zappa-Szép product to validate itself inside a length-3 window.
"""

import argparse

from skewcat.errors import ValidationError
from skewcat.zappa import katsura_system, zs_product


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=3, help="largest a and b")
    ap.add_argument("--modulus", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--budget", type=int, default=3)
    args = ap.parse_args()
    print("a b m  verdict")
    for a in range(1, args.max + 1):
        for b in range(1, args.max + 1):
            for m in args.modulus:
                try:
                    zs = zs_product(katsura_system([[a]], [[b]], m, args.budget).category_system())
                    verdict = f"category, {len(zs.category.morphisms())} morphisms in window"
                except ValidationError as exc:
                    verdict = f"rejected: {type(exc).__name__} ({exc})"
                print(f"{a} {b} {m}  {verdict}")


if __name__ == "__main__":
    main()
