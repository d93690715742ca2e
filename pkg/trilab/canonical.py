"""Normal forms in S_{w1,w2} and the affine unimodular equivalence test."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Tuple

from sympy import Matrix

from .lattice import (
    Triangle, UnimodularAffineMap, fit_to_rectangle, lattice_length, normalized_volume,
)

Perm = Tuple[int, int, int]

# Vertex permutations; perm[j] is the target vertex of vertex j
PERMUTATIONS: Tuple[Perm, ...] = tuple(itertools.permutations(range(3)))


class Family(enum.Enum):
    SEGMENT = 'segment'
    LONG_EDGE = 'long_edge'
    SHORT_EDGE_1 = 'short_edge_1'
    SHORT_EDGE_2 = 'short_edge_2'


@dataclass(frozen=True)
class NormalForm:
    triangle: Triangle
    family: Family
    w1: int
    w2: int
    x2: Optional[int] = None
    y0: Optional[int] = None
    y1: Optional[int] = None

    def params(self) -> Dict[str, int]:
        return {k: v for k, v in (('x2', self.x2), ('y0', self.y0), ('y1', self.y1)) if v is not None}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'triangle': [list(v) for v in self.triangle.vertices],
            'family': self.family.value,
            'w1': self.w1,
            'w2': self.w2,
            'params': self.params(),
        }


def membership_S(T: Triangle) -> Optional[NormalForm]:
    """Family and parameters when T, as an ordered triple, is literally an S-member."""
    (ax, ay), (bx, by), (cx, cy) = T.vertices
    if (ax, ay) == (0, 0) and bx == 0 and cx == 0:
        if 0 <= 2 * by <= cy:
            return NormalForm(T, Family.SEGMENT, 0, cy, y1=by)
        return None
    if (ax, ay) == (0, 0):
        w1, y1, x2, w2 = bx, by, cx, cy
        if w1 <= 0 or w2 < w1:
            return None
        if x2 == 0:
            if 0 <= y1 <= (w2 - y1) % w1:
                return NormalForm(T, Family.LONG_EDGE, w1, w2, x2=0, y1=y1)
            return None
        if 0 < 2 * x2 <= w1 and 0 <= y1 <= w1 - x2 and (w1 != w2 or y1 >= x2):
            return NormalForm(T, Family.SHORT_EDGE_1, w1, w2, x2=x2, y1=y1)
        return None
    if ax == 0 and by == 0:
        y0, w1, x2, w2 = ay, bx, cx, cy
        if 1 < x2 and 2 * x2 < w1 and 0 < y0 < x2 and w1 < w2:
            return NormalForm(T, Family.SHORT_EDGE_2, w1, w2, x2=x2, y0=y0)
    return None


# ---------------------------------------------------------------------------
# Homogeneous vertex matrices
# ---------------------------------------------------------------------------

def vertex_matrix(T: Triangle) -> Matrix:
    """Columns are the vertices with an appended 1."""
    return Matrix([[v.x for v in T.vertices], [v.y for v in T.vertices], [1, 1, 1]])


def permute_columns(A: Matrix, perm: Perm) -> Matrix:
    """Column j of the result is column perm[j] of A."""
    return A.extract([0, 1, 2], list(perm))


def _is_unimodular(U: Matrix) -> bool:
    return all(x.is_integer for x in U) and U.det() in (1, -1)


def transfer_permutations(A: Matrix, B: Matrix) -> Iterator[Tuple[Perm, Matrix]]:
    """Vertex permutations p with an integral U, det U = +-1, taking A onto B with columns permuted by p.

    The bottom row of U comes out as (0, 0, 1) because both matrices have a row of ones.
    A must be invertible.
    """
    A_inv = A.inv()
    for perm in PERMUTATIONS:
        U = permute_columns(B, perm) * A_inv
        if _is_unimodular(U):
            yield perm, U


def map_from_homogeneous(U: Matrix) -> UnimodularAffineMap:
    return UnimodularAffineMap(int(U[0, 0]), int(U[0, 1]), int(U[1, 0]), int(U[1, 1]),
                               int(U[0, 2]), int(U[1, 2]))


# ---------------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------------

def _segment_normal_map(T: Triangle) -> Tuple[Tuple[int, int], UnimodularAffineMap]:
    """1D invariant (length, min(l, length - l)) and a map onto T(0,(0,l'),(0,length)) as a set."""
    fitted, M, rect = fit_to_rectangle(T)
    length = rect.h
    middle = sorted(v.y for v in fitted.vertices)[1]
    if 2 * middle > length:
        M = UnimodularAffineMap(1, 0, 0, -1, 0, length).compose(M)
    return (length, min(middle, length - middle)), M


def are_equivalent(T: Triangle, T2: Triangle) -> Tuple[bool, Optional[UnimodularAffineMap]]:
    """Whether some unimodular affine map sends the vertex multiset of T onto that of T2."""
    volume = normalized_volume(T)
    if volume != normalized_volume(T2):
        return False, None
    if volume == 0:
        key, M = _segment_normal_map(T)
        key2, M2 = _segment_normal_map(T2)
        if key != key2:
            return False, None
        return True, M2.inverse().compose(M)
    found = next(transfer_permutations(vertex_matrix(T), vertex_matrix(T2)), None)
    if found is None:
        return False, None
    return True, map_from_homogeneous(found[1])


def _edge_lengths(T: Triangle) -> Tuple[int, ...]:
    return tuple(sorted(lattice_length(dx, dy) for dx, dy in T.edge_vectors()))


def canonical_form(T: Triangle) -> NormalForm:
    """The unique member of S_{w1,w2} equivalent to T."""
    fitted, _, rect = fit_to_rectangle(T)
    if rect.w == 0:
        (length, y1), _ = _segment_normal_map(fitted)
        nf = membership_S(Triangle.from_coords(0, 0, 0, y1, 0, length))
        assert nf is not None
        return nf
    from .enumeration import enumerate_S

    volume = normalized_volume(fitted)
    lengths = _edge_lengths(fitted)
    for nf in enumerate_S(rect.w, rect.h):
        if normalized_volume(nf.triangle) != volume or _edge_lengths(nf.triangle) != lengths:
            continue
        if are_equivalent(fitted, nf.triangle)[0]:
            return nf
    raise RuntimeError(f"no member of S_{{{rect.w},{rect.h}}} is equivalent to {T}")
