#!/usr/bin/env python3
"""Label the complete graph on Z_13 by the cubic-residue cosets and check
that the result is a complete square representation of the 4-atom
all-2-3-cycle algebra.

Usage: python3 scripts/z13_demo.py
"""

from relalg.families import build_e23
from relalg.represent import cyclic_group_labeling, verify_representation

CLASSES = {
    "e1": frozenset({1, 5, 8, 12}),   # cubes mod 13
    "e2": frozenset({2, 3, 10, 11}),  # 2 * cubes
    "e3": frozenset({4, 6, 7, 9}),    # 4 * cubes
}


def main():
    lab, induced = cyclic_group_labeling(13, CLASSES, "e0")
    target = build_e23(4)
    print(f"induced table == E23(4) table: {induced.table == target.table}")
    rep = verify_representation(target, lab)
    print(f"sound:            {rep.sound}")
    print(f"witness-saturated: {rep.saturated}")
    print(f"atom-surjective:  {rep.surjective}")
    print(f"complete square representation on 13 points: {rep.is_complete_square}")


if __name__ == "__main__":
    main()
