from __future__ import annotations

import pytest

from conftest import random_triangle, random_unimodular
from trilab.automorphism import (
    IDENTITY, ROTATIONS, AutClass, AutTag, aut_classify, aut_oracle, compose, invert, is_subgroup,
)
from trilab.canonical import PERMUTATIONS, canonical_form, membership_S
from trilab.enumeration import enumerate_S, iter_cells
from trilab.errors import DegenerateTriangleError
from trilab.lattice import Triangle, apply_map


def T(*coords: int) -> Triangle:
    return Triangle.from_coords(*coords)


@pytest.mark.parametrize('tri, tag', [
    (T(0, 0, 1, 0, 0, 1), AutTag.S3),
    (T(0, 0, 3, 1, 2, 3), AutTag.C3),
    (T(0, 0, 3, 0, 0, 5), AutTag.TRIVIAL),
    (T(0, 0, 3, 1, 0, 5), AutTag.C2),
])
def test_oracle_examples(tri, tag):
    assert aut_oracle(tri).tag is tag


@pytest.mark.parametrize('tri, tag', [
    (T(0, 0, 4, 0, 0, 4), AutTag.S3),
    (T(0, 0, 2, 1, 1, 2), AutTag.S3),
    (T(0, 0, 3, 1, 0, 5), AutTag.C2),
    (T(0, 0, 3, 0, 0, 5), AutTag.TRIVIAL),
    (T(0, 0, 3, 2, 1, 3), AutTag.C3),
])
def test_classify_examples(tri, tag):
    nf = membership_S(tri)
    assert nf is not None
    assert aut_classify(nf).tag is tag


def test_classify_through_canonical_form():
    assert aut_classify(canonical_form(T(0, 0, 3, 1, 2, 3))).tag is AutTag.C3


def test_classify_agrees_with_oracle():
    for w1, w2 in iter_cells(10, min_w1=1):
        for nf in enumerate_S(w1, w2):
            assert aut_classify(nf) == aut_oracle(nf.triangle), str(nf.triangle)


def test_s3_members_per_square_cell():
    for w in range(1, 11):
        s3 = [nf for nf in enumerate_S(w, w) if aut_oracle(nf.triangle).tag is AutTag.S3]
        assert len(s3) == (2 if w % 2 == 0 else 1), w
        assert any(nf.triangle == T(0, 0, w, 0, 0, w) for nf in s3)


def test_realized_permutations_form_groups():
    for w1, w2 in iter_cells(8, min_w1=1):
        for nf in enumerate_S(w1, w2):
            perms = aut_classify(nf).realized_permutations
            assert is_subgroup(perms)
            assert all(compose(p, q) in perms for p in perms for q in perms)


def test_group_helpers():
    assert is_subgroup(frozenset(PERMUTATIONS))
    assert is_subgroup(ROTATIONS)
    assert not is_subgroup(frozenset({IDENTITY, (1, 2, 0)}))
    for p in PERMUTATIONS:
        assert compose(p, invert(p)) == IDENTITY
    with pytest.raises(RuntimeError):
        AutClass.from_permutations(frozenset({(1, 0, 2), (0, 2, 1)}))


def test_aut_type_is_affine_invariant(rng):
    for _ in range(300):
        tri = random_triangle(rng, nondegenerate=True)
        M = random_unimodular(rng)
        assert aut_oracle(apply_map(tri, M)).tag is aut_oracle(tri).tag


def test_degenerate_input_rejected():
    with pytest.raises(DegenerateTriangleError):
        aut_oracle(T(0, 0, 0, 2, 0, 5))
    with pytest.raises(DegenerateTriangleError):
        aut_classify(membership_S(T(0, 0, 0, 2, 0, 5)))


def test_to_dict_lists_sorted_permutations():
    out = aut_oracle(T(0, 0, 3, 1, 0, 5)).to_dict()
    assert out['group'] == 'C2'
    assert out['permutations'][0] == [0, 1, 2]
    assert len(out['permutations']) == 2
