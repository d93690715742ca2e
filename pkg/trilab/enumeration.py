"""Explicit S_{w1,w2} generation, the counting formulas and their cross-checks."""
from __future__ import annotations

import functools
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, TypeVar

from sympy import Matrix, Rational, ilcm

from .canonical import Family, NormalForm
from .constants import Q_VERTICES
from .errors import WidthOrderError
from .lattice import Triangle, lattice_length, normalized_volume
from .series import (
    HILBERT_DENOMINATOR, HILBERT_NUMERATOR, RECTANGLE_DENOMINATOR, RECTANGLE_NUMERATOR,
    SQUARE_EXACT_DENOMINATOR, SQUARE_EXACT_NUMERATOR, SeriesCoeffs, expand_ratio, s, t,
)

log = logging.getLogger(__name__)

Cell = Tuple[int, int]
A = TypeVar('A')
R = TypeVar('R')


def _check_widths(w1: int, w2: int) -> None:
    if w1 < 0 or w2 < w1:
        raise WidthOrderError(f"need 0 <= w1 <= w2, got w1={w1}, w2={w2}")


def _as_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise RuntimeError(f"closed form produced non-integer {value}")
    return value.numerator


# ---------------------------------------------------------------------------
# S_{w1,w2}
# ---------------------------------------------------------------------------

def enumerate_S(w1: int, w2: int) -> List[NormalForm]:
    """Every member of S_{w1,w2}, ordered by family, then x2, y0, y1."""
    _check_widths(w1, w2)
    if w1 == 0:
        return [NormalForm(Triangle.from_coords(0, 0, 0, y1, 0, w2), Family.SEGMENT, 0, w2, y1=y1)
                for y1 in range(w2 // 2 + 1)]
    out: List[NormalForm] = []
    for y1 in range(w1):
        if y1 <= (w2 - y1) % w1:
            out.append(NormalForm(Triangle.from_coords(0, 0, w1, y1, 0, w2),
                                  Family.LONG_EDGE, w1, w2, x2=0, y1=y1))
    for x2 in range(1, w1 // 2 + 1):
        for y1 in range(x2 if w1 == w2 else 0, w1 - x2 + 1):
            out.append(NormalForm(Triangle.from_coords(0, 0, w1, y1, x2, w2),
                                  Family.SHORT_EDGE_1, w1, w2, x2=x2, y1=y1))
    if w1 < w2:
        for x2 in range(2, (w1 + 1) // 2):
            for y0 in range(1, x2):
                out.append(NormalForm(Triangle.from_coords(0, y0, w1, 0, x2, w2),
                                      Family.SHORT_EDGE_2, w1, w2, x2=x2, y0=y0))
    return out


def iter_cells(max_w2: int, min_w1: int = 0) -> Iterable[Cell]:
    for w2 in range(max_w2 + 1):
        for w1 in range(min_w1, w2 + 1):
            yield (w1, w2)


def ordered_map(fn: Callable[[A], R], items: Sequence[A], threads: int = 1) -> List[R]:
    """fn over items on a thread pool; results come back in input order."""
    if threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    log.debug("mapping %d items on %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def enumerate_cells(cells: Iterable[Cell], threads: int = 1) -> List[Tuple[Cell, List[NormalForm]]]:
    cells = list(cells)
    return list(zip(cells, ordered_map(lambda c: enumerate_S(*c), cells, threads)))


# ---------------------------------------------------------------------------
# Counting formulas
# ---------------------------------------------------------------------------

def count_closed(w1: int, w2: int) -> int:
    _check_widths(w1, w2)
    if w1 == 0:
        return (w2 + 2) // 2
    sq = Fraction(w1 * w1)
    if w1 < w2:
        if w1 % 2:
            return _as_int(sq / 2 + Fraction(1, 2))
        return _as_int(sq / 2 + (2 if w2 % 2 == 0 else 1))
    tail = 1 if w1 % 2 == 0 else Fraction(1, 4)
    return _as_int(sq / 4 + Fraction(w1, 2) + tail)


def count_rect_cumulative(w1: int, w2: int) -> int:
    """Classes equivalent to a subset of [0, w1] x [0, w2]."""
    _check_widths(w1, w2)
    a, b = Fraction(w1), Fraction(w2)
    value = (-a**4 / 8 + a**3 * b / 6 - a**3 / 6 + a**2 * b / 4 - a**2 / 4
             + 13 * a * b / 12 + b**2 / 4)
    if w1 % 2 == 0 and w2 % 2 == 0:
        value += a / 6 + b + 1
    elif w1 % 2 == 0:
        value += -a / 12 + b + Fraction(3, 4)
    elif w2 % 2 == 0:
        value += 2 * a / 3 + b / 2 + Fraction(7, 8)
    else:
        value += 5 * a / 12 + b / 2 + Fraction(7, 8)
    return _as_int(value)


def count_square(n: int) -> int:
    if n < 0:
        raise WidthOrderError(f"need n >= 0, got {n}")
    return count_rect_cumulative(n, n)


def count_square_exact(n: int) -> int:
    """Classes whose smallest enclosing square has side exactly n."""
    if n < 0:
        raise WidthOrderError(f"need n >= 0, got {n}")
    return sum(count_closed(w1, n) for w1 in range(n + 1))


@dataclass(frozen=True)
class CountTable:
    max_w1: int
    max_w2: int
    entries: Dict[Cell, int] = field(default_factory=dict)


def count_table(max_w1: int, max_w2: int) -> CountTable:
    _check_widths(0, max_w2)
    entries = {(w1, w2): count_closed(w1, w2)
               for w1, w2 in iter_cells(max_w2) if w1 <= max_w1}
    return CountTable(max_w1, max_w2, entries)


# ---------------------------------------------------------------------------
# The simplex Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QSimplex:
    vertices: Tuple[Tuple[Fraction, ...], ...]

    @functools.cached_property
    def facets(self) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        """Integer inequalities (a, c): x lies in nQ iff a.x <= n*c for every facet."""
        verts = [[Rational(q.numerator, q.denominator) for q in v] for v in self.vertices]
        out = []
        for omit in range(len(verts)):
            rows = [v + [1] for i, v in enumerate(verts) if i != omit]
            normal = Matrix(rows).nullspace()[0]
            coeffs, const = list(normal[:-1]), normal[-1]
            inside = sum(c * x for c, x in zip(coeffs, verts[omit])) + const
            if inside < 0:
                coeffs, const = [-c for c in coeffs], -const
            scale = ilcm(*[Rational(q).q for q in coeffs + [const]])
            # coeffs.x + const >= 0  <=>  (-coeffs).x <= const
            out.append((tuple(int(-c * scale) for c in coeffs), int(const * scale)))
        return tuple(out)

    def bounding_box(self, n: int) -> List[range]:
        box = []
        for j in range(len(self.vertices[0])):
            lo = min(n * v[j] for v in self.vertices)
            hi = max(n * v[j] for v in self.vertices)
            box.append(range(math.ceil(lo), math.floor(hi) + 1))
        return box

    def contains(self, x: Tuple[int, ...], n: int) -> bool:
        return all(sum(a * xi for a, xi in zip(normal, x)) <= n * c for normal, c in self.facets)


Q = QSimplex(tuple(tuple(Fraction(p, q) for p, q in v) for v in Q_VERTICES))


def lattice_points_nQ(n: int) -> int:
    if n < 0:
        raise WidthOrderError(f"need n >= 0, got {n}")
    return sum(1 for x in itertools.product(*Q.bounding_box(n)) if Q.contains(x, n))


# ---------------------------------------------------------------------------
# Generating functions
# ---------------------------------------------------------------------------

def bivariate_series_coeffs(max_deg: int) -> SeriesCoeffs:
    """Coefficient of t^w1 s^w2 is the number of classes with widths (w1, w2)."""
    return expand_ratio(RECTANGLE_NUMERATOR, RECTANGLE_DENOMINATOR, (t, s), max_deg)


def hilbert_coeffs(nmax: int) -> List[int]:
    return expand_ratio(HILBERT_NUMERATOR, HILBERT_DENOMINATOR, (t,), nmax).as_list()


def square_exact_coeffs(nmax: int) -> List[int]:
    return expand_ratio(SQUARE_EXACT_NUMERATOR, SQUARE_EXACT_DENOMINATOR, (t,), nmax).as_list()


# ---------------------------------------------------------------------------
# Integer sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OeisSequences:
    with_long_edge: List[int]            # n = 1..nmax
    with_long_edge_nondegenerate: List[int]  # n = 1..nmax
    no_long_edge: List[int]              # a_n for n = 0..nmax
    differences: List[int]               # a_n - a_{n-1} for n = 1..nmax

    @property
    def staircase(self) -> List[int]:
        """Differences from n = 2 on; a_1 = a_0 = 0 always."""
        return self.differences[1:]


def _longest_edge(T: Triangle) -> int:
    return max(lattice_length(dx, dy) for dx, dy in T.edge_vectors())


def oeis_sequences(nmax: int) -> OeisSequences:
    if nmax < 1:
        raise WidthOrderError(f"need nmax >= 1, got {nmax}")
    long_all: List[int] = []
    long_nondeg: List[int] = []
    no_long = [0]
    for n in range(1, nmax + 1):
        members = [nf for w1 in range(n + 1) for nf in enumerate_S(w1, n)]
        with_edge = [nf for nf in members if _longest_edge(nf.triangle) == n]
        long_all.append(len(with_edge))
        long_nondeg.append(sum(1 for nf in with_edge if normalized_volume(nf.triangle)))
        no_long.append(len(members) - len(with_edge))
    diffs = [no_long[n] - no_long[n - 1] for n in range(1, nmax + 1)]
    return OeisSequences(long_all, long_nondeg, no_long, diffs)
