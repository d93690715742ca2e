from __future__ import annotations

import itertools

import pytest

from conftest import random_triangle, random_unimodular
from trilab.errors import NotUnimodularError
from trilab.lattice import (
    DualVector, Point, Rectangle, Triangle, UnimodularAffineMap, apply_map, brute_force_profile,
    extended_gcd, fit_to_rectangle, normalized_volume, width_along, width_profile,
)


def T(*coords: int) -> Triangle:
    return Triangle.from_coords(*coords)


@pytest.mark.parametrize('tri, u, expected', [
    (T(0, 0, 3, 0, 0, 4), (1, 0), 3),
    (T(0, 0, 2, 1, 1, 2), (1, 1), 3),
    (T(0, 0, 1, 0, 0, 1), (0, 1), 1),
])
def test_width_along(tri, u, expected):
    assert width_along(tri, u) == expected
    assert width_along(tri, u) == max(abs(DualVector(*u).dot(d)) for d in tri.edge_vectors())


@pytest.mark.parametrize('tri, expected', [
    (T(0, 0, 1, 0, 0, 1), 1),
    (T(0, 0, 3, 0, 0, 4), 12),
    (T(0, 0, 2, 4, 1, 2), 0),
])
def test_normalized_volume(tri, expected):
    assert normalized_volume(tri) == expected
    assert tri.is_degenerate() == (expected == 0)


def test_apply_map_examples():
    unit = T(0, 0, 1, 0, 0, 1)
    assert apply_map(unit, UnimodularAffineMap.identity()) == unit
    assert apply_map(unit, UnimodularAffineMap.translation(5, 5)) == T(5, 5, 6, 5, 5, 6)
    swap = UnimodularAffineMap(0, 1, 1, 0)
    assert apply_map(T(0, 0, 1, 2, 3, 1), swap) == T(0, 0, 2, 1, 1, 3)


def test_map_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError):
        UnimodularAffineMap(2, 0, 0, 1)
    with pytest.raises(NotUnimodularError):
        UnimodularAffineMap(1, 1, 1, 1, 3, 4)


def test_compose_and_inverse(rng):
    for _ in range(200):
        M, N = random_unimodular(rng), random_unimodular(rng)
        p = Point(rng.randint(-20, 20), rng.randint(-20, 20))
        assert M.compose(N).apply(p) == M.apply(N.apply(p))
        assert M.inverse().apply(M.apply(p)) == p
        assert M.compose(M.inverse()) == UnimodularAffineMap.identity()


@pytest.mark.parametrize('a, b', [(0, 1), (1, 0), (3, 5), (-4, 6), (12, -18), (-7, -3)])
def test_extended_gcd(a, b):
    g, s, t = extended_gcd(a, b)
    assert g >= 0 and s * a + t * b == g
    assert a % g == 0 and b % g == 0


def test_extended_gcd_big_and_zero():
    a, b = 10 ** 30 + 1, 10 ** 20
    g, s, t = extended_gcd(a, b)
    assert g == 1 and s * a + t * b == 1
    g, s, t = extended_gcd(0, 0)
    assert g == 0


def test_dual_vector_canonical_sign():
    assert DualVector(-1, 2).canonical() == DualVector(1, -2)
    assert DualVector(0, -3).canonical() == DualVector(0, 3)
    assert DualVector(2, -5).canonical() == DualVector(2, -5)
    assert not DualVector(2, 4).is_primitive()
    assert not DualVector(0, 0).is_primitive()


def test_width_profile_examples():
    unit = width_profile(T(0, 0, 1, 0, 0, 1))
    assert (unit.w1, unit.w2) == (1, 1)

    seg = width_profile(T(0, 0, 0, 2, 0, 5))
    assert (seg.w1, seg.w2) == (0, 5)
    assert seg.u1 == DualVector(1, 0)
    assert width_along(T(0, 0, 0, 2, 0, 5), seg.u2) == 5

    p = width_profile(T(0, 0, 1, 2, 3, 1))
    assert (p.w1, p.w2) == (2, 3)
    assert p.u1 == DualVector(0, 1)


def test_point_triangle_has_no_witnesses():
    p = width_profile(T(7, 7, 7, 7, 7, 7))
    assert (p.w1, p.w2, p.u1, p.u2) == (0, 0, None, None)


def test_segment_profile_is_lattice_length():
    tri = T(1, 1, 7, 5, 4, 3)  # collinear, direction (3, 2), length 2
    p = width_profile(tri)
    assert (p.w1, p.w2) == (0, 2)
    assert width_along(tri, p.u1) == 0
    assert width_along(tri, p.u2) == 2


def test_witnesses_realize_profile(rng):
    for _ in range(300):
        tri = random_triangle(rng, nondegenerate=True)
        p = width_profile(tri)
        assert 1 <= p.w1 <= p.w2
        for u in (p.u1, p.u2):
            assert u.is_primitive() and u.canonical() == u
        assert p.u1 != p.u2
        assert p.u1.a * p.u2.b - p.u1.b * p.u2.a != 0
        assert width_along(tri, p.u1) == p.w1
        assert width_along(tri, p.u2) == p.w2


def test_profile_invariant_under_unimodular_maps(rng):
    for _ in range(1000):
        tri = random_triangle(rng)
        M = random_unimodular(rng)
        a, b = width_profile(tri), width_profile(apply_map(tri, M))
        assert (a.w1, a.w2) == (b.w1, b.w2)


def test_profile_matches_brute_force_oracle():
    grid = [Point(x, y) for x in range(5) for y in range(5)]
    for a, b, c in itertools.combinations_with_replacement(grid, 3):
        tri = Triangle(a, b, c)
        fast, slow = width_profile(tri), brute_force_profile(tri, 20)
        assert (fast.w1, fast.w2) == (slow.w1, slow.w2), str(tri)
        # witnesses inside the search box must agree with the tie rule
        if not tri.is_degenerate() and all(abs(x) <= 20 for u in (fast.u1, fast.u2) for x in u):
            assert (fast.u1, fast.u2) == (slow.u1, slow.u2), str(tri)


@pytest.mark.parametrize('M', [
    UnimodularAffineMap.identity(),
    UnimodularAffineMap(1, 7, 0, 1, 5, -3),
    UnimodularAffineMap(3, 2, 4, 3),
])
def test_long_thin_triangle_profile(M):
    thin = T(0, 0, 1, 0, 0, 10 ** 6)
    p = width_profile(apply_map(thin, M))
    assert (p.w1, p.w2) == (1, 10 ** 6)
    if M == UnimodularAffineMap.identity():
        assert (p.u1, p.u2) == (DualVector(1, 0), DualVector(0, 1))


def test_tied_widths_pick_smallest_witnesses():
    p = width_profile(T(0, 0, 3, 0, 0, 3))
    assert (p.w1, p.w2, p.u1, p.u2) == (3, 3, DualVector(0, 1), DualVector(1, 0))


def test_fit_unit_triangle_is_identity():
    unit = T(0, 0, 1, 0, 0, 1)
    fitted, M, box = fit_to_rectangle(unit)
    assert fitted == unit
    assert M == UnimodularAffineMap.identity()
    assert box == Rectangle(1, 1)


def test_translated_matches_translation_map():
    tri = T(0, 0, 1, 2, 3, 1)
    assert tri.translated(-4, 9) == apply_map(tri, UnimodularAffineMap.translation(-4, 9))


def test_fit_point_triangle():
    fitted, M, box = fit_to_rectangle(T(7, 7, 7, 7, 7, 7))
    assert fitted == T(0, 0, 0, 0, 0, 0)
    assert M == UnimodularAffineMap.translation(-7, -7)
    assert box == Rectangle(0, 0)


def _touches_box(tri: Triangle, box: Rectangle) -> bool:
    xs = [v.x for v in tri.vertices]
    ys = [v.y for v in tri.vertices]
    return min(xs) == 0 and max(xs) == box.w and min(ys) == 0 and max(ys) == box.h


def test_fit_example_box():
    tri = T(0, 0, 1, 2, 3, 1)
    fitted, M, box = fit_to_rectangle(tri)
    assert box == Rectangle(2, 3)
    assert apply_map(tri, M) == fitted
    assert _touches_box(fitted, box)


def test_fit_touches_all_sides(rng):
    for _ in range(500):
        tri = apply_map(random_triangle(rng), random_unimodular(rng))
        fitted, M, box = fit_to_rectangle(tri)
        p = width_profile(tri)
        assert box == Rectangle(p.w1, p.w2)
        assert apply_map(tri, M) == fitted
        assert _touches_box(fitted, box)
