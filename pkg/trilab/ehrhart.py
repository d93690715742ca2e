"""Boundary/interior counts, Ehrhart polynomials and the (b, i)-plane structures of triangles."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Set, Tuple

from .constants import KNOWN_CONE_EXCEPTIONS
from .enumeration import enumerate_S, iter_cells, ordered_map
from .errors import DegenerateTriangleError, EdgeExtensionError, TrilabError
from .lattice import (
    DualVector, Point, Triangle, UnimodularAffineMap, apply_map, extended_gcd, lattice_length,
    normalized_volume, width_along,
)

log = logging.getLogger(__name__)


class BIPoint(NamedTuple):
    b: int
    i: int


@dataclass(frozen=True)
class EhrhartPolynomial:
    c2: Fraction
    c1: Fraction
    c0: Fraction

    def evaluate(self, n: int) -> int:
        value = self.c2 * n * n + self.c1 * n + self.c0
        if value.denominator != 1:
            raise RuntimeError(f"Ehrhart polynomial {self} is not integral at {n}")
        return value.numerator

    def to_dict(self) -> Dict[str, str]:
        return {'c2': str(self.c2), 'c1': str(self.c1), 'c0': str(self.c0)}


@dataclass(frozen=True)
class EdgeExtensionLine:
    """The line i - base.i = (w - 1)/2 * (b - base.b) carrying every extension of one edge."""
    w: int
    base: BIPoint

    @property
    def slope(self) -> Fraction:
        return Fraction(self.w - 1, 2)

    def point(self, k: int) -> BIPoint:
        kw = k * self.w
        return BIPoint(self.base.b + kw, self.base.i + kw * (self.w - 1) // 2)

    def contains(self, p: BIPoint) -> bool:
        return 2 * (p.i - self.base.i) == (self.w - 1) * (p.b - self.base.b)


@dataclass(frozen=True)
class GcdPairSet:
    a: int
    b: int
    pairs: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)


@dataclass(frozen=True)
class BIRecord:
    b: int
    i: int
    max_w2: int
    has_long_edge: bool
    edge_widths: Tuple[int, ...]
    count: int

    @property
    def point(self) -> BIPoint:
        return BIPoint(self.b, self.i)


class StripRecord(NamedTuple):
    l: int  # noqa: E741
    c: int
    b: int
    i: int
    gcd_wl: int


def _require_nondegenerate(T: Triangle) -> int:
    volume = normalized_volume(T)
    if volume == 0:
        raise DegenerateTriangleError(f"{T} has zero volume")
    return volume


# ---------------------------------------------------------------------------
# Counts
# ---------------------------------------------------------------------------

def boundary_interior(T: Triangle) -> BIPoint:
    volume = _require_nondegenerate(T)
    b = sum(lattice_length(dx, dy) for dx, dy in T.edge_vectors())
    # Pick: V = 2i + b - 2
    return BIPoint(b, (volume - b + 2) // 2)


def ehrhart_polynomial(T: Triangle) -> EhrhartPolynomial:
    b, i = boundary_interior(T)
    return EhrhartPolynomial(Fraction(2 * i + b - 2, 2), Fraction(b, 2), Fraction(1))


def count_lattice_points(T: Triangle) -> int:
    """Lattice points of conv(T), counted one by one."""
    volume = normalized_volume(T)
    if volume == 0:
        return max(lattice_length(dx, dy) for dx, dy in T.edge_vectors()) + 1
    xs = [v.x for v in T.vertices]
    ys = [v.y for v in T.vertices]
    (ex, ey), _, _ = T.edge_vectors()
    apex = T.v3
    orient = 1 if ex * (apex.y - T.v1.y) - ey * (apex.x - T.v1.x) > 0 else -1
    sides = [(T.vertices[j], d) for j, d in enumerate(T.edge_vectors())]
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if all(orient * (dx * (y - v.y) - dy * (x - v.x)) >= 0 for v, (dx, dy) in sides):
                count += 1
    return count


# ---------------------------------------------------------------------------
# Edges
# ---------------------------------------------------------------------------

def _check_edge(edge: int) -> None:
    if edge not in (0, 1, 2):
        raise EdgeExtensionError(f"edge index must be 0, 1 or 2, got {edge}")


def edge_normal(T: Triangle, edge: int) -> DualVector:
    """Primitive normal of edge `edge` (vertex edge -> vertex edge+1), pointing at the third vertex."""
    _check_edge(edge)
    dx, dy = T.edge_vectors()[edge]
    g = lattice_length(dx, dy)
    u = DualVector(-dy // g, dx // g)
    apex, start = T.vertices[(edge + 2) % 3], T.vertices[edge]
    if u.dot((apex.x - start.x, apex.y - start.y)) < 0:
        u = DualVector(-u.a, -u.b)
    return u


def edge_widths(T: Triangle) -> List[Tuple[int, int]]:
    _require_nondegenerate(T)
    return [(j, width_along(T, edge_normal(T, j))) for j in range(3)]


def edge_frame(T: Triangle, edge: int) -> UnimodularAffineMap:
    """Map taking edge `edge` to [0, l] on the x-axis with the third vertex above it."""
    _require_nondegenerate(T)
    _check_edge(edge)
    start = T.vertices[edge]
    dx, dy = T.edge_vectors()[edge]
    g = lattice_length(dx, dy)
    p, q = dx // g, dy // g
    _, s, t = extended_gcd(p, q)
    M = UnimodularAffineMap(s, t, -q, p).compose(UnimodularAffineMap.translation(-start.x, -start.y))
    if M.apply(T.vertices[(edge + 2) % 3]).y < 0:
        M = UnimodularAffineMap(1, 0, 0, -1).compose(M)
    return M


def extend_edge(T: Triangle, edge: int, k: int) -> Triangle:
    """T_k = T(0, (l + k*w, 0), (a, w)) in the frame of the chosen edge."""
    M = edge_frame(T, edge)
    framed = apply_map(T, M)
    apex = framed.vertices[(edge + 2) % 3]
    length = framed.vertices[(edge + 1) % 3].x
    new_length = length + k * apex.y
    if new_length <= 0:
        raise EdgeExtensionError(f"extending edge {edge} of {T} by k={k} leaves length {new_length}")
    return Triangle(Point(0, 0), Point(new_length, 0), apex)


def edge_extension_line(T: Triangle, edge: int) -> EdgeExtensionLine:
    return EdgeExtensionLine(dict(edge_widths(T))[edge], boundary_interior(T))


# ---------------------------------------------------------------------------
# The (b, i) plane
# ---------------------------------------------------------------------------

def cone_contains(c: int, p: BIPoint) -> bool:
    """Strict membership of p in the open cone sigma_c (all sides doubled to stay integral)."""
    if c < 1:
        raise TrilabError(f"cone index must be >= 1, got {c}")
    return (c - 1) * p.b - 2 * (c - 1) < 2 * p.i < c * p.b - 2 * c * (c + 2)


def strip_line_index(p: BIPoint, w: int) -> Tuple[Fraction, bool]:
    """m with i = (w - 1)/2 * b + m, and whether m is an integer."""
    m = Fraction(2 * p.i - (w - 1) * p.b, 2)
    return m, m.denominator == 1


def in_strip_range(p: BIPoint, w: int) -> bool:
    m, _ = strip_line_index(p, w)
    return 1 - w * w <= m <= 1 - w


def gcd_pair_set(a: int, b: int) -> GcdPairSet:
    if a < 1 or b < 1:
        raise TrilabError(f"need a, b >= 1, got a={a}, b={b}")
    return GcdPairSet(a, b, frozenset((math.gcd(a, c), math.gcd(a, b - c)) for c in range(a)))


# ---------------------------------------------------------------------------
# Datasets
# ---------------------------------------------------------------------------

def _longest_edge(T: Triangle) -> int:
    return max(lattice_length(dx, dy) for dx, dy in T.edge_vectors())


def _cell_points(cell: Tuple[int, int], max_b: int, max_i: int) -> List[Tuple[BIPoint, bool, Tuple[int, ...]]]:
    out = []
    for nf in enumerate_S(*cell):
        p = boundary_interior(nf.triangle)
        if p.b > max_b or p.i > max_i:
            continue
        widths = tuple(w for _, w in edge_widths(nf.triangle))
        out.append((p, _longest_edge(nf.triangle) == nf.w2, widths))
    return out


def bi_dataset(max_b: int, max_i: int, max_w2: int, threads: int = 1) -> List[BIRecord]:
    """(b, i) pairs of triangles with b <= max_b, i <= max_i and second width <= max_w2."""
    if max_b < 1 or max_w2 < 1 or max_i < 0:
        raise TrilabError(f"need max_b, max_w2 >= 1 and max_i >= 0, got ({max_b}, {max_i}, {max_w2})")
    # S-members have normalized volume at least w1*w2/2, and V = 2i + b - 2
    volume_cap = 2 * max_i + max_b - 2
    cells = [c for c in iter_cells(max_w2, min_w1=1) if c[0] * c[1] <= 2 * volume_cap]
    log.info("bi dataset: %d cells, %d threads", len(cells), threads)
    results = ordered_map(lambda c: _cell_points(c, max_b, max_i), cells, threads)

    max_w2_at: Dict[BIPoint, int] = {}
    long_at: Dict[BIPoint, bool] = {}
    widths_at: Dict[BIPoint, Set[int]] = {}
    count_at: Dict[BIPoint, int] = {}
    for (_, w2), points in zip(cells, results):
        for p, long_edge, widths in points:
            max_w2_at[p] = max(max_w2_at.get(p, 0), w2)
            long_at[p] = long_at.get(p, False) or long_edge
            widths_at.setdefault(p, set()).update(widths)
            count_at[p] = count_at.get(p, 0) + 1
    records = [BIRecord(p.b, p.i, max_w2_at[p], long_at[p], tuple(sorted(widths_at[p])), count_at[p])
               for p in sorted(max_w2_at)]
    log.info("bi dataset: %d records", len(records))
    return records


def cone_violations(records: Iterable[BIRecord], c_max: int) -> List[Tuple[int, BIRecord]]:
    """Every (c, record) with the record strictly inside sigma_c, known exceptions included."""
    return [(c, r) for r in records for c in range(1, c_max + 1) if cone_contains(c, r.point)]


def is_known_cone_exception(c: int, r: BIRecord) -> bool:
    return (c, r.b, r.i) in KNOWN_CONE_EXCEPTIONS


def strip_violations(records: Iterable[BIRecord]) -> List[Tuple[BIRecord, int]]:
    return [(r, w) for r in records for w in r.edge_widths if not in_strip_range(r.point, w)]


def edge_strip(w: int, max_l: int) -> List[StripRecord]:
    """(b, i) of T(0,(l,0),(c,w)) for 1 <= l <= max_l and 0 <= c < w."""
    if w < 1 or max_l < 1:
        raise TrilabError(f"need w, max_l >= 1, got w={w}, max_l={max_l}")
    out = []
    for l in range(1, max_l + 1):  # noqa: E741
        for c in range(w):
            b = l + math.gcd(c, w) + math.gcd(l - c, w)
            out.append(StripRecord(l, c, b, (l * w - b + 2) // 2, math.gcd(w, l)))
    return out
