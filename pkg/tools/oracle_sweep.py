#!/usr/bin/env python3
"""Compare width_profile against the brute-force oracle on every triangle in [0,k]^2.

Usage:
  python3 tools/oracle_sweep.py --side 4 --bound 20
"""
from __future__ import annotations

import argparse
import itertools
import os
import sys
import time

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from trilab.lattice import Point, Triangle, brute_force_profile, width_profile  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description='Exhaustive width oracle sweep')
    ap.add_argument('--side', type=int, default=4, help='Vertices range over [0,side]^2')
    ap.add_argument('--bound', type=int, default=20, help='Oracle search radius for dual vectors')
    args = ap.parse_args()

    grid = [Point(x, y) for x in range(args.side + 1) for y in range(args.side + 1)]
    t0 = time.time()
    checked = mismatches = 0
    for a, b, c in itertools.combinations_with_replacement(grid, 3):
        T = Triangle(a, b, c)
        fast, slow = width_profile(T), brute_force_profile(T, args.bound)
        checked += 1
        if (fast.w1, fast.w2) != (slow.w1, slow.w2):
            mismatches += 1
            print(f"[oracle] {T}: search {fast.w1},{fast.w2} oracle {slow.w1},{slow.w2}", file=sys.stderr)
    print(f"checked {checked} triangles, {mismatches} mismatches, {time.time() - t0:.1f}s")
    return 1 if mismatches else 0


if __name__ == '__main__':
    sys.exit(main())
