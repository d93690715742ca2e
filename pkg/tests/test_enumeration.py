from __future__ import annotations

import pytest

from trilab.canonical import Family, membership_S
from trilab.enumeration import (
    Q, count_closed, count_rect_cumulative, count_square, count_square_exact, count_table,
    bivariate_series_coeffs, enumerate_cells, enumerate_S, hilbert_coeffs, iter_cells,
    lattice_points_nQ, oeis_sequences, square_exact_coeffs,
)
from trilab.errors import WidthOrderError
from trilab.lattice import Triangle, width_profile


def T(*coords: int) -> Triangle:
    return Triangle.from_coords(*coords)


def test_enumerate_examples():
    assert [nf.triangle for nf in enumerate_S(0, 4)] == [T(0, 0, 0, 0, 0, 4), T(0, 0, 0, 1, 0, 4),
                                                         T(0, 0, 0, 2, 0, 4)]
    assert [nf.triangle for nf in enumerate_S(2, 2)] == [T(0, 0, 2, 0, 0, 2), T(0, 0, 2, 1, 0, 2),
                                                         T(0, 0, 2, 1, 1, 2)]
    assert [nf.triangle for nf in enumerate_S(1, 1)] == [T(0, 0, 1, 0, 0, 1)]


@pytest.mark.parametrize('w1, w2', [(3, 2), (-1, 4), (0, -1)])
def test_enumerate_rejects_bad_widths(w1, w2):
    with pytest.raises(WidthOrderError):
        enumerate_S(w1, w2)


def test_enumeration_matches_golden(small_normal_forms):
    got = [(nf.w1, nf.w2, nf.family.value, nf.triangle.coords())
           for (w1, w2), members in enumerate_cells(iter_cells(4)) for nf in members]
    assert got == small_normal_forms
    assert len(got) == sum(count_closed(w1, w2) for w1, w2 in iter_cells(4))


@pytest.mark.parametrize('w1, w2, expected', [(2, 3, 3), (3, 3, 4), (0, 7, 4), (1, 1, 1), (2, 2, 3), (0, 0, 1)])
def test_count_closed_examples(w1, w2, expected):
    assert count_closed(w1, w2) == expected


def test_cardinalities_match_closed_form():
    for w1, w2 in iter_cells(24):
        assert len(enumerate_S(w1, w2)) == count_closed(w1, w2), (w1, w2)


def test_members_are_literal_members():
    for w1, w2 in iter_cells(10):
        for nf in enumerate_S(w1, w2):
            assert membership_S(nf.triangle) == nf


def test_members_have_their_widths():
    for w1, w2 in iter_cells(12):
        for nf in enumerate_S(w1, w2):
            p = width_profile(nf.triangle)
            assert (p.w1, p.w2) == (w1, w2), str(nf.triangle)


def test_families_respect_first_width():
    for w1, w2 in iter_cells(8):
        families = {nf.family for nf in enumerate_S(w1, w2)}
        if w1 == 0:
            assert families == {Family.SEGMENT}
        else:
            assert Family.SEGMENT not in families
        if w1 == w2:
            assert Family.SHORT_EDGE_2 not in families


@pytest.mark.parametrize('w1, w2, expected', [(1, 1, 3), (2, 2, 9), (0, 2, 4), (0, 0, 1)])
def test_count_rect_cumulative_examples(w1, w2, expected):
    assert count_rect_cumulative(w1, w2) == expected


def test_count_rect_cumulative_matches_summation():
    for w1, w2 in iter_cells(20):
        total = sum(count_closed(i, j) for i in range(w1 + 1) for j in range(i, w2 + 1))
        assert count_rect_cumulative(w1, w2) == total, (w1, w2)


def test_count_table():
    table = count_table(2, 3)
    assert table.entries[(2, 3)] == 3
    assert (3, 3) not in table.entries
    assert len(table.entries) == 9


def test_q_facets_cut_out_vertices():
    for vertex in Q.vertices:
        tight = [sum(a * x for a, x in zip(normal, vertex)) == c for normal, c in Q.facets]
        assert sum(tight) == 4
    assert Q.contains((0, 0, 0, 0), 1)
    assert not Q.contains((1, 0, 0, 0), 1)


def test_square_count_chain():
    assert [count_square(n) for n in range(3)] == [1, 3, 9]
    assert [lattice_points_nQ(n) for n in range(3)] == [1, 3, 9]
    hilbert = hilbert_coeffs(12)
    assert hilbert[:3] == [1, 3, 9]
    for n in range(13):
        assert count_square(n) == lattice_points_nQ(n) == hilbert[n], n


def test_square_exact_series():
    exact = square_exact_coeffs(20)
    assert exact[:3] == [1, 2, 6]
    assert exact == [count_square_exact(n) for n in range(21)]
    hilbert = hilbert_coeffs(20)
    assert [sum(exact[:n + 1]) for n in range(21)] == hilbert


def test_bivariate_series():
    series = bivariate_series_coeffs(16)
    assert series.coeff(0, 0) == 1
    assert series.coeff(2, 2) == 3
    assert series.coeff(2, 3) == 3
    for a in range(17):
        for b in range(17 - a):
            expected = count_closed(a, b) if a <= b else 0
            assert series.coeff(a, b) == expected, (a, b)
    with pytest.raises(ValueError):
        series.coeff(9, 9)


def test_oeis_staircase():
    seqs = oeis_sequences(12)
    assert seqs.staircase[:5] == [1, 3, 5, 9, 13]
    assert seqs.staircase == [1, 3, 5, 9, 13, 19, 25, 33, 41, 51, 61]
    assert seqs.no_long_edge[:2] == [0, 0]
    for n in range(1, 13):
        degenerate = seqs.with_long_edge[n - 1] - seqs.with_long_edge_nondegenerate[n - 1]
        assert degenerate == (n + 2) // 2


def test_oeis_rejects_empty_range():
    with pytest.raises(WidthOrderError):
        oeis_sequences(0)


def test_enumerate_cells_is_order_stable():
    cells = list(iter_cells(10))
    serial = enumerate_cells(cells, threads=1)
    threaded = enumerate_cells(cells, threads=4)
    assert serial == threaded
    assert [c for c, _ in threaded] == cells
