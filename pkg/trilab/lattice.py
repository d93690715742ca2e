"""Exact integer geometry on Z^2: points, dual vectors, unimodular maps and lattice widths.

Everything here works on Python ints, so no value can overflow. A triangle is an
ordered triple of lattice points; repeated or collinear vertices are allowed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from .constants import ORACLE_BOUND
from .errors import NotUnimodularError


class Point(NamedTuple):
    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


class DualVector(NamedTuple):
    """Integer linear functional (a, b) acting by (x, y) -> a*x + b*y."""
    a: int
    b: int

    def dot(self, v: Sequence[int]) -> int:
        return self.a * v[0] + self.b * v[1]

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1

    def canonical(self) -> 'DualVector':
        """Sign representative with a > 0, or a == 0 and b > 0."""
        if self.a > 0 or (self.a == 0 and self.b > 0):
            return self
        return DualVector(-self.a, -self.b)

    def shifted(self, step: 'DualVector', k: int) -> 'DualVector':
        return DualVector(self.a + k * step.a, self.b + k * step.b)


@dataclass(frozen=True)
class Triangle:
    v1: Point
    v2: Point
    v3: Point

    def __post_init__(self) -> None:
        for name in ('v1', 'v2', 'v3'):
            v = getattr(self, name)
            if not isinstance(v, Point):
                object.__setattr__(self, name, Point(int(v[0]), int(v[1])))

    @classmethod
    def from_coords(cls, x1: int, y1: int, x2: int, y2: int, x3: int, y3: int) -> 'Triangle':
        return cls(Point(x1, y1), Point(x2, y2), Point(x3, y3))

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        return (self.v1, self.v2, self.v3)

    def coords(self) -> Tuple[int, int, int, int, int, int]:
        return (self.v1.x, self.v1.y, self.v2.x, self.v2.y, self.v3.x, self.v3.y)

    def edge_vectors(self) -> Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]:
        """Difference vectors of edge j, running from vertex j to vertex j+1 (cyclically)."""
        a, b, c = self.vertices
        return ((b.x - a.x, b.y - a.y), (c.x - b.x, c.y - b.y), (a.x - c.x, a.y - c.y))

    def is_degenerate(self) -> bool:
        return normalized_volume(self) == 0

    def is_point(self) -> bool:
        return self.v1 == self.v2 == self.v3

    def scaled(self, k: int) -> 'Triangle':
        return Triangle(*(Point(k * v.x, k * v.y) for v in self.vertices))

    def translated(self, dx: int, dy: int) -> 'Triangle':
        return Triangle(*(Point(v.x + dx, v.y + dy) for v in self.vertices))

    def __str__(self) -> str:
        return 'T(' + ','.join(str(v) for v in self.vertices) + ')'


@dataclass(frozen=True)
class UnimodularAffineMap:
    """x -> [[m11, m12], [m21, m22]] x + (t1, t2) with determinant +1 or -1."""
    m11: int
    m12: int
    m21: int
    m22: int
    t1: int = 0
    t2: int = 0

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise NotUnimodularError(
                f"linear part [[{self.m11},{self.m12}],[{self.m21},{self.m22}]] has determinant {self.det}")

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    @classmethod
    def identity(cls) -> 'UnimodularAffineMap':
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, t1: int, t2: int) -> 'UnimodularAffineMap':
        return cls(1, 0, 0, 1, t1, t2)

    def apply(self, p: Sequence[int]) -> Point:
        return Point(self.m11 * p[0] + self.m12 * p[1] + self.t1,
                     self.m21 * p[0] + self.m22 * p[1] + self.t2)

    def compose(self, other: 'UnimodularAffineMap') -> 'UnimodularAffineMap':
        """The map x -> self(other(x))."""
        return UnimodularAffineMap(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
            self.m11 * other.t1 + self.m12 * other.t2 + self.t1,
            self.m21 * other.t1 + self.m22 * other.t2 + self.t2,
        )

    def inverse(self) -> 'UnimodularAffineMap':
        d = self.det  # 1/d == d
        n11, n12, n21, n22 = d * self.m22, -d * self.m12, -d * self.m21, d * self.m11
        return UnimodularAffineMap(n11, n12, n21, n22,
                                   -(n11 * self.t1 + n12 * self.t2),
                                   -(n21 * self.t1 + n22 * self.t2))

    def to_dict(self) -> Dict[str, List]:
        return {'matrix': [[self.m11, self.m12], [self.m21, self.m22]], 'translation': [self.t1, self.t2]}


@dataclass(frozen=True)
class WidthProfile:
    w1: int
    w2: int
    u1: Optional[DualVector] = None
    u2: Optional[DualVector] = None


class Rectangle(NamedTuple):
    """The box [0, w] x [0, h]."""
    w: int
    h: int


# ---------------------------------------------------------------------------
# Basic measurements
# ---------------------------------------------------------------------------

def width_along(T: Triangle, u: Sequence[int]) -> int:
    values = [u[0] * v.x + u[1] * v.y for v in T.vertices]
    return max(values) - min(values)


def normalized_volume(T: Triangle) -> int:
    (ax, ay), _, (cx, cy) = T.edge_vectors()
    # v3 - v1 == -(edge 2)
    return abs(ax * -cy - (-cx) * ay)


def apply_map(T: Triangle, M: UnimodularAffineMap) -> Triangle:
    if M.det not in (1, -1):
        raise NotUnimodularError(f"determinant {M.det}")
    return Triangle(*(M.apply(v) for v in T.vertices))


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s, t, g = igcdex(a, b)
    if g < 0:
        g, s, t = -g, -s, -t
    return int(g), int(s), int(t)


def lattice_length(dx: int, dy: int) -> int:
    return math.gcd(dx, dy)


# ---------------------------------------------------------------------------
# Width search
# ---------------------------------------------------------------------------

def _norm(u: Sequence[int], diffs: Sequence[Tuple[int, int]]) -> int:
    return max(abs(u[0] * d[0] + u[1] * d[1]) for d in diffs)


def _floor_ceil(num: int, den: int) -> Tuple[int, int]:
    return num // den, -((-num) // den)


def _first_true(lo: int, hi: int, pred: Callable[[int], bool]) -> int:
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _best_shift(base: DualVector, step: DualVector, diffs: Sequence[Tuple[int, int]]) -> int:
    """Integer k minimizing the width of base + k*step, closest to 0 among ties.

    The width is a maximum of |linear| terms in k, hence convex; its minimizers lie
    between the smallest and largest root of the terms that actually depend on k.
    """
    roots = []
    for d in diffs:
        slope = step.dot(d)
        if slope:
            roots.append(_floor_ceil(-base.dot(d), slope))
    if not roots:
        return 0
    lo = min(r[0] for r in roots)
    hi = max(r[1] for r in roots)

    def f(k: int) -> int:
        return _norm(base.shifted(step, k), diffs)

    left = _first_true(lo, hi, lambda k: f(k + 1) >= f(k))
    right = _first_true(lo, hi, lambda k: f(k + 1) > f(k))
    return min(max(0, left), right)


def _reduced_basis(diffs: Sequence[Tuple[int, int]]) -> Tuple[DualVector, DualVector]:
    """Gauss-reduced basis (b1, b2): width(b1) <= width(b2) <= width(b2 + k*b1) for all k."""
    b1, b2 = DualVector(1, 0), DualVector(0, 1)
    n1 = _norm(b1, diffs)
    if n1 > _norm(b2, diffs):
        b1, b2 = b2, b1
        n1 = _norm(b1, diffs)
    while True:
        c = b2.shifted(b1, _best_shift(b2, b1, diffs))
        nc = _norm(c, diffs)
        if nc >= n1:
            return b1, c
        b1, n1, b2 = c, nc, b1


class _Line(NamedTuple):
    """Dual vectors base + k*step, k an integer; all of them primitive."""
    base: DualVector
    step: DualVector

    def at(self, k: int) -> DualVector:
        return self.base.shifted(self.step, k)


def _lines(b1: DualVector, b2: DualVector) -> Tuple[_Line, ...]:
    # Up to sign, a primitive x*b1 + y*b2 no wider than b2 has 0 <= y <= 2 (x odd when y == 2)
    return (_Line(b1, DualVector(0, 0)),
            _Line(b2, b1),
            _Line(b1.shifted(b2, 2), DualVector(2 * b1.a, 2 * b1.b)))


def _level_set(line: _Line, diffs: Sequence[Tuple[int, int]], bound: int) -> Optional[Tuple[int, int]]:
    """Integer range of k with width(line.at(k)) <= bound, or None when empty."""
    def f(k: int) -> int:
        return _norm(line.at(k), diffs)

    k0 = _best_shift(line.base, line.step, diffs)
    if f(k0) > bound:
        return None
    if line.step == (0, 0):
        return k0, k0
    span = 1
    while f(k0 + span) <= bound:
        span *= 2
    hi = _first_true(k0, k0 + span, lambda k: f(k + 1) > bound)
    span = 1
    while f(k0 - span) <= bound:
        span *= 2
    lo = _first_true(k0 - span, k0, lambda k: f(k) <= bound)
    return lo, hi


def _order_candidates(line: _Line, lo: int, hi: int) -> Set[int]:
    """k in [lo, hi] covering the two smallest canonical vectors of the line.

    Canonical order compares |a| first, and each coordinate is linear in k, so
    the extremes sit at the range ends or next to a coordinate's root.
    """
    ks = {lo, lo + 1, hi - 1, hi}
    for num, den in ((line.base.a, line.step.a), (line.base.b, line.step.b)):
        if den:
            f, c = _floor_ceil(-num, den)
            ks.update((f - 1, f, c, c + 1))
    return {k for k in ks if lo <= k <= hi}


def _short_dual_vectors(lines: Sequence[_Line], diffs: Sequence[Tuple[int, int]], bound: int,
                        skip: Optional[DualVector] = None) -> Tuple[Dict[DualVector, int], int]:
    """Canonical vectors no wider than bound that can win the tie rule, and how many there are in all."""
    found: Dict[DualVector, int] = {}
    total = 0
    for line in lines:
        span = _level_set(line, diffs, bound)
        if span is None:
            continue
        total += span[1] - span[0] + 1
        for k in _order_candidates(line, *span):
            u = line.at(k).canonical()
            if u != skip:
                found[u] = _norm(u, diffs)
    return found, total


def _reduced_profile(diffs: Sequence[Tuple[int, int]]) -> WidthProfile:
    lines = _lines(*_reduced_basis(diffs))
    w1 = min(_norm(line.at(_best_shift(line.base, line.step, diffs)), diffs) for line in lines)
    found, total = _short_dual_vectors(lines, diffs, w1)
    if total >= 2:
        tied = sorted(found)
        return WidthProfile(w1, w1, tied[0], tied[1])
    (u1,) = found
    # u1 is the unique minimizer, so its neighbors on its own line bound the rest
    w2 = min(_norm(line.at(k), diffs)
             for line in lines
             for k0 in (_best_shift(line.base, line.step, diffs),)
             for k in (k0 - 1, k0, k0 + 1)
             if line.at(k).canonical() != u1)
    found, _ = _short_dual_vectors(lines, diffs, w2, skip=u1)
    return WidthProfile(w1, w2, u1, min(found))


def _select_profile(found: Dict[DualVector, int]) -> WidthProfile:
    w1 = min(found.values())
    tied = sorted(u for u, w in found.items() if w == w1)
    if len(tied) >= 2:
        return WidthProfile(w1, w1, tied[0], tied[1])
    u1 = tied[0]
    w2 = min(w for u, w in found.items() if u != u1)
    u2 = min(u for u, w in found.items() if u != u1 and w == w2)
    return WidthProfile(w1, w2, u1, u2)


def _segment_profile(T: Triangle) -> WidthProfile:
    dx, dy = max(T.edge_vectors(), key=lambda d: abs(d[0]) + abs(d[1]))
    length = lattice_length(dx, dy)
    p, q = dx // length, dy // length
    _, s, t = extended_gcd(p, q)
    return WidthProfile(0, length, DualVector(-q, p).canonical(), DualVector(s, t).canonical())


def width_profile(T: Triangle) -> WidthProfile:
    if T.is_point():
        return WidthProfile(0, 0)
    if T.is_degenerate():
        return _segment_profile(T)
    return _reduced_profile(T.edge_vectors())


def brute_force_profile(T: Triangle, bound: int = ORACLE_BOUND) -> WidthProfile:
    """Width profile by trying every primitive u with |a|, |b| <= bound."""
    if T.is_point():
        return WidthProfile(0, 0)
    found: Dict[DualVector, int] = {}
    for a in range(0, bound + 1):
        for b in range(-bound, bound + 1):
            u = DualVector(a, b)
            if u.is_primitive() and u.canonical() == u:
                found[u] = width_along(T, u)
    return _select_profile(found)


def fit_to_rectangle(T: Triangle) -> Tuple[Triangle, UnimodularAffineMap, Rectangle]:
    """Map T into [0, w1] x [0, w2], touching all four sides of the box."""
    profile = width_profile(T)
    if profile.u1 is None:
        dx, dy = -T.v1.x, -T.v1.y
        return T.translated(dx, dy), UnimodularAffineMap.translation(dx, dy), Rectangle(0, 0)
    diffs = T.edge_vectors()
    # Keep the x-axis when it already realizes the first width
    first = DualVector(1, 0) if _norm((1, 0), diffs) == profile.w1 else profile.u1
    _, s, t = extended_gcd(first.a, first.b)
    second = DualVector(-t, s)
    second = second.shifted(first, _best_shift(second, first, diffs))
    if _norm(second, diffs) != profile.w2:
        raise RuntimeError(f"shear reduction of {T} reached width {_norm(second, diffs)}, expected {profile.w2}")
    linear = UnimodularAffineMap(first.a, first.b, second.a, second.b)
    moved = apply_map(T, linear)
    shift = UnimodularAffineMap.translation(-min(v.x for v in moved.vertices),
                                            -min(v.y for v in moved.vertices))
    M = shift.compose(linear)
    return apply_map(T, M), M, Rectangle(profile.w1, profile.w2)
