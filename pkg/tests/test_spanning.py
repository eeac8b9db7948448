import math

import numpy as np
import pytest
from hypothesis import example, given
from hypothesis import strategies as st

from helixsrf.helix import DomainError, HelixParams, helix_points
from helixsrf.spanning import (TreeEmbedding, mst_length_asymptotic, mst_oracle,
                               spanning_embedding, spanning_length_closed)

from conftest import A_R, CHORD_R, W_R, explicit_points


def brute_union_length(omega, alpha, n, k):
    """Sum of chords of the skip-k tree, edges listed by hand from the connector rule."""
    pts = explicit_points(omega, alpha, n)
    edges = [(i, i + k) for i in range(n - k)]
    for j in range(k - 1):
        last = j + ((n - j - 1) // k) * k
        edges.append((last, last + 1) if last + 1 < n else (j, j + 1))
    return sum(np.linalg.norm(pts[a] - pts[b]) for a, b in edges)


def test_closed_form_sausage_k1():
    p = HelixParams(W_R, A_R, 23)
    assert spanning_length_closed(p, 1) == pytest.approx(22 * CHORD_R, rel=1e-12)
    assert spanning_length_closed(p, 1) == pytest.approx(42.339019, abs=1e-6)
    assert spanning_length_closed(p, 1) == pytest.approx(brute_union_length(W_R, A_R, 23, 1), rel=1e-12)


def test_closed_form_sausage_k2_matches_k1():
    p = HelixParams(W_R, A_R, 23)
    assert spanning_length_closed(p, 2) == pytest.approx(22 * CHORD_R, rel=1e-12)


def test_single_chord():
    p = HelixParams(math.pi / 2, 1.0, 2)
    assert spanning_length_closed(p, 1) == pytest.approx(math.sqrt(math.pi ** 2 / 4 + 2), rel=1e-15)


def test_invalid_k():
    with pytest.raises(DomainError):
        spanning_length_closed(HelixParams(1.0, 1.0, 5), 5)


@given(st.floats(0.05, 2 * math.pi - 0.05), st.floats(0.01, 2.0), st.integers(2, 80), st.data())
def test_closed_form_equals_embedding(omega, alpha, n, data):
    k = data.draw(st.integers(1, min(n - 1, 6)))
    p = HelixParams(omega, alpha, n)
    closed = spanning_length_closed(p, k)
    assert spanning_embedding(p, k).edge_sum() == pytest.approx(closed, rel=1e-10)
    assert brute_union_length(omega, alpha, n, k) == pytest.approx(closed, rel=1e-10)
    assert spanning_embedding(p, k).is_tree()


def test_asymptotic_examples():
    assert mst_length_asymptotic(W_R, A_R, 1, 1) == pytest.approx(1.9245009, abs=1e-7)
    alpha = 1e-9
    assert mst_length_asymptotic(math.pi, alpha, 2, 1) == pytest.approx(2 * alpha * math.pi, rel=1e-6)
    for k in (1, 2, 3):
        assert mst_length_asymptotic(1.7, 0.3, k, 37) == pytest.approx(37 * mst_length_asymptotic(1.7, 0.3, k, 1))


def test_oracle_two_points():
    tree = mst_oracle([[0, 0, 0], [3, 4, 0]])
    assert tree.edges == [(0, 1)]
    assert tree.total_length == 5.0


@pytest.mark.parametrize("bad", [[[0, 0, 0]], [[0, 0, 0], [1, math.nan, 0]], [[0, 0, 0], [math.inf, 0, 0]]])
def test_oracle_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        mst_oracle(bad)


def test_oracle_sausage_path():
    tree = mst_oracle(helix_points(HelixParams(W_R, A_R, 100)))
    assert abs(tree.total_length - 99 * CHORD_R) < 1e-9
    assert tree.is_tree()


def test_oracle_steep_helix_is_consecutive_path():
    tree = mst_oracle(helix_points(HelixParams(0.01, 100.0, 10)))
    assert sorted(tree.edges) == [(i, i + 1) for i in range(9)]


def _kruskal(pts):
    """Independent oracle: Kruskal over all pairs sorted by (length, i, j).

    Lengths are rounded row-wise like the oracle does, so chords that tie
    mathematically (same index gap) compare the same way in both.
    """
    n = len(pts)
    rows = [np.linalg.norm(pts - pts[i], axis=1) for i in range(n)]
    pairs = sorted((float(rows[i][j]), i, j) for i in range(n) for j in range(i + 1, n))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    edges, total = [], 0.0
    for d, i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            total += d
    return sorted(edges), total


@example(omega=1.0, alpha=0.05, n=19)
@given(st.floats(0.1, 2 * math.pi - 0.1), st.floats(0.05, 2.0), st.integers(2, 40))
def test_prim_matches_kruskal(omega, alpha, n):
    pts = explicit_points(omega, alpha, n)
    edges, total = _kruskal(pts)
    tree = mst_oracle(pts)
    assert tree.total_length == pytest.approx(total, rel=1e-12)
    assert sorted(tree.edges) == edges


def test_oracle_ties_are_lexicographic():
    # unit square: all four sides tie, lexicographic order keeps (0,1), (0,2), (1,3)
    pts = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
    assert sorted(mst_oracle(pts).edges) == [(0, 1), (0, 2), (1, 3)]


def test_oracle_is_deterministic():
    pts = helix_points(HelixParams(W_R, A_R, 60))
    assert mst_oracle(pts).edges == mst_oracle(pts).edges


@given(st.floats(0.1, 2 * math.pi - 0.1), st.floats(0.05, 2.0), st.integers(2, 200), st.data())
def test_oracle_dominance(omega, alpha, n, data):
    p = HelixParams(omega, alpha, n)
    oracle = mst_oracle(helix_points(p)).total_length
    k = data.draw(st.integers(1, min(5, n - 1)))
    assert oracle <= spanning_length_closed(p, k) + 1e-9


def test_asymptotic_consistency():
    limit = min(mst_length_asymptotic(W_R, A_R, k, 1) for k in (1, 2, 3))

    def gap(n):
        return abs(mst_oracle(helix_points(HelixParams(W_R, A_R, n))).total_length / n - limit)

    assert gap(200) < gap(50)


def test_tree_embedding_helpers():
    tree = TreeEmbedding(np.array([[0.0, 0, 0], [1, 0, 0]]), np.array([[0.5, 0.5, 0]]), [(0, 2), (2, 1)])
    assert tree.label(2) == "S1"
    assert tree.is_tree()
    assert tree.edge_sum() == pytest.approx(2 * math.sqrt(0.5))
    assert [r[:2] for r in tree.csv_rows()] == [("P0", "S1"), ("S1", "P1")]
