from __future__ import annotations

import os
import random
from typing import Callable, List, Tuple

import pytest

from trilab.lattice import Point, Triangle, UnimodularAffineMap, extended_gcd

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


def random_unimodular(rng: random.Random, bound: int = 10) -> UnimodularAffineMap:
    """Random affine map with linear entries and translation bounded by `bound`."""
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        g, s, t = extended_gcd(a, c)
        if g != 1:
            continue
        # a*d - b*c == 1 for (b, d) = (-t, s) + k*(a, c)
        k = rng.randint(-2, 2)
        b, d = -t + k * a, s + k * c
        if max(abs(b), abs(d)) > bound:
            continue
        if rng.random() < 0.5:
            a, b = -a, -b
        return UnimodularAffineMap(a, b, c, d, rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_triangle(rng: random.Random, side: int = 6, nondegenerate: bool = False) -> Triangle:
    while True:
        T = Triangle(*(Point(rng.randint(0, side), rng.randint(0, side)) for _ in range(3)))
        if not nondegenerate or not T.is_degenerate():
            return T


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def random_map(rng: random.Random) -> Callable[..., UnimodularAffineMap]:
    return lambda bound=10: random_unimodular(rng, bound)


@pytest.fixture
def small_normal_forms() -> List[Tuple[int, int, str, Tuple[int, ...]]]:
    rows = []
    with open(os.path.join(DATA_DIR, 'small_normal_forms.txt')) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split()
            rows.append((int(parts[0]), int(parts[1]), parts[2], tuple(int(x) for x in parts[3:])))
    return rows
