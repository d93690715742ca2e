"""Affine automorphism groups of lattice triangles, as subgroups of S3 acting on the vertices.

Permutations are tuples p with p[j] the image of vertex j; (1, 0, 2) swaps the
first two vertices. Composition (p * q)[j] = p[q[j]].
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import FrozenSet

from .canonical import PERMUTATIONS, Family, NormalForm, Perm, transfer_permutations, vertex_matrix
from .errors import DegenerateTriangleError
from .lattice import Triangle, normalized_volume

IDENTITY: Perm = (0, 1, 2)
ROTATIONS: FrozenSet[Perm] = frozenset({(0, 1, 2), (1, 2, 0), (2, 0, 1)})


class AutTag(enum.Enum):
    S3 = 'S3'
    C3 = 'C3'
    C2 = 'C2'
    TRIVIAL = 'Trivial'


_TAG_BY_ORDER = {6: AutTag.S3, 3: AutTag.C3, 2: AutTag.C2, 1: AutTag.TRIVIAL}


def compose(p: Perm, q: Perm) -> Perm:
    return (p[q[0]], p[q[1]], p[q[2]])


def invert(p: Perm) -> Perm:
    out = [0, 0, 0]
    for j, pj in enumerate(p):
        out[pj] = j
    return (out[0], out[1], out[2])


def is_subgroup(perms: FrozenSet[Perm]) -> bool:
    return IDENTITY in perms and all(compose(p, q) in perms and invert(p) in perms
                                     for p in perms for q in perms)


@dataclass(frozen=True)
class AutClass:
    tag: AutTag
    realized_permutations: FrozenSet[Perm]

    @classmethod
    def from_permutations(cls, perms: FrozenSet[Perm]) -> 'AutClass':
        if not is_subgroup(perms):
            raise RuntimeError(f"permutations {sorted(perms)} do not form a group")
        return cls(_TAG_BY_ORDER[len(perms)], perms)

    def to_dict(self) -> dict:
        return {'group': self.tag.value, 'permutations': [list(p) for p in sorted(self.realized_permutations)]}


def _transposition(i: int, j: int) -> Perm:
    p = [0, 1, 2]
    p[i], p[j] = j, i
    return (p[0], p[1], p[2])


def aut_oracle(T: Triangle) -> AutClass:
    """Vertex permutations realized by unimodular affine maps of T onto itself."""
    if normalized_volume(T) == 0:
        raise DegenerateTriangleError(f"{T} is degenerate; its vertex matrix is singular")
    A = vertex_matrix(T)
    perms = frozenset(p for p, _ in transfer_permutations(A, A))
    return AutClass.from_permutations(perms)


def aut_classify(nf: NormalForm) -> AutClass:
    """Automorphism group read off the normal-form parameters (first matching case wins)."""
    if nf.family is Family.SEGMENT or nf.w1 == 0:
        raise DegenerateTriangleError("automorphisms of degenerate triangles are not classified")
    w1, w2, x2, y1 = nf.w1, nf.w2, nf.x2, nf.y1
    long_edge = nf.family is Family.LONG_EDGE
    short1 = nf.family is Family.SHORT_EDGE_1

    if w1 == w2 and ((long_edge and y1 == 0) or (short1 and 2 * x2 == w1 and y1 == x2)):
        return AutClass.from_permutations(frozenset(PERMUTATIONS))
    if w1 == w2 and short1 and x2 == w1 - y1 and 2 * y1 != w1:
        return AutClass.from_permutations(ROTATIONS)
    swap = None
    if long_edge and (2 * y1 - w2) % w1 == 0 and (y1 > 0 or w1 < w2):
        swap = _transposition(0, 2)
    elif short1 and y1 == 0 and 2 * x2 == w1:
        swap = _transposition(0, 1)
    elif short1 and 2 * x2 == w1 and y1 == x2 and w1 < w2:
        swap = _transposition(0, 1)
    elif short1 and x2 == y1 and w1 == w2 and 2 * y1 < w1:
        swap = _transposition(1, 2)
    if swap is not None:
        return AutClass.from_permutations(frozenset({IDENTITY, swap}))
    return AutClass.from_permutations(frozenset({IDENTITY}))
