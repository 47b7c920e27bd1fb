#!/usr/bin/env python3
"""Enumerate ball growth for a few rank-2 and rank-3 Coxeter systems and
print group orders where the group is finite.

Usage: python3 scripts/coxeter_orders.py [max_radius]
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from coxglue import CoxeterMatrix, CoxeterSystem


def system(rows, names):
    return CoxeterSystem(CoxeterMatrix(tuple(map(tuple, rows))), names=names)


SYSTEMS = [
    ("I2(3)", system([[1, 3], [3, 1]], ["s", "t"])),
    ("I2(4)", system([[1, 4], [4, 1]], ["s", "t"])),
    ("I2(oo)", system([[1, 0], [0, 1]], ["s", "t"])),
    ("A3", system([[1, 3, 2], [3, 1, 3], [2, 3, 1]], ["a", "b", "c"])),
    ("B3", system([[1, 4, 2], [4, 1, 3], [2, 3, 1]], ["t", "u", "v"])),
    ("H3", system([[1, 5, 2], [5, 1, 3], [2, 3, 1]], ["a", "b", "c"])),
    ("(3,3,3)", system([[1, 3, 3], [3, 1, 3], [3, 3, 1]], ["r", "s", "t"])),
]


def main() -> int:
    max_radius = int(sys.argv[1]) if len(sys.argv) > 1 else 16
    for label, sys_ in SYSTEMS:
        spherical = sys_.is_spherical(range(sys_.rank))
        sizes = []
        ball = None
        for r in range(max_radius + 1):
            ball = sys_.ball(r, cap=200000)
            sizes.append(len(ball.words))
            if ball.complete:
                break
        growth = " ".join(map(str, sizes))
        if ball.complete:
            print(f"{label:8s} finite={spherical!s:5s} order={sizes[-1]:6d} "
                  f"growth: {growth}")
        else:
            print(f"{label:8s} finite={spherical!s:5s} order=oo     "
                  f"growth: {growth} ...")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
