import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helixsrf.helix import (DomainError, HelixParams, a_k, chord_sq, helix_points, subsequence,
                            union_edges, union_sequence)

from conftest import A_R, W_R, explicit_points

omegas = st.floats(0.05, 2 * math.pi - 0.05)
alphas = st.floats(0.01, 3.0)


def test_n_below_two_rejected():
    with pytest.raises(DomainError):
        HelixParams(1.0, 1.0, 1)


@pytest.mark.parametrize("omega", [0.0, 2 * math.pi, -1.0, 7.0, math.nan])
def test_omega_outside_open_interval_rejected(omega):
    with pytest.raises(DomainError):
        HelixParams(omega, 1.0, 5)


def test_quarter_turn_points():
    pts = helix_points(HelixParams(math.pi / 2, 1.0, 3))
    expected = [(1, 0, 0), (0, 1, math.pi / 2), (-1, 0, math.pi)]
    np.testing.assert_allclose(pts, expected, atol=1e-15)


def test_sausage_points_form_regular_tetrahedron():
    pts = helix_points(HelixParams(2.30052398302, 0.26454000216, 4))
    d = [np.linalg.norm(pts[i] - pts[j]) for i in range(4) for j in range(i)]
    assert max(d) - min(d) < 1e-9


@given(omegas, alphas, st.integers(2, 60))
def test_points_on_unit_cylinder(omega, alpha, n):
    pts = helix_points(HelixParams(omega, alpha, n))
    assert len(pts) == n
    np.testing.assert_allclose(pts[:, 0] ** 2 + pts[:, 1] ** 2, 1.0, atol=1e-12)


@pytest.mark.parametrize("n,k,j,l_max,last", [
    (23, 2, 0, 11, 22),
    (23, 2, 1, 10, 21),
    (23, 3, 0, 7, 21),
    (23, 3, 1, 7, 22),
    (23, 3, 2, 6, 20),
    (23, 1, 0, 22, 22),
])
def test_subsequence_examples(n, k, j, l_max, last):
    seq = subsequence(HelixParams(1.0, 0.1, n), j, k)
    assert seq.l_max == l_max
    assert seq.last == last
    assert seq.indices == tuple(range(j, last + 1, k))


def test_subsequence_bad_indices():
    p = HelixParams(1.0, 0.1, 23)
    with pytest.raises(DomainError):
        subsequence(p, 2, 2)
    with pytest.raises(DomainError):
        subsequence(p, 0, 23)


@pytest.mark.parametrize("k,sizes,n_connectors", [(1, [23], 0), (2, [12, 11], 1), (3, [8, 8, 7], 2)])
def test_union_sequence_shapes(k, sizes, n_connectors):
    p = HelixParams(1.0, 0.1, 23)
    seqs, connectors = union_sequence(p, k)
    assert [len(s) for s in seqs] == sizes
    assert len(connectors) == n_connectors
    assert len(union_edges(p, k)) == 22


def test_connector_convention_n23_k3():
    _, connectors = union_sequence(HelixParams(1.0, 0.1, 23), 3)
    # 21 -> 22 exists; subsequence 1 ends at 22 so it falls back to P_1-P_2
    assert connectors == [(21, 22), (1, 2)]


@given(st.integers(2, 80), st.data())
def test_partition_and_spanning_tree(n, data):
    k = data.draw(st.integers(1, n - 1))
    p = HelixParams(1.3, 0.2, n)
    seqs, connectors = union_sequence(p, k)
    members = [i for s in seqs for i in s.indices]
    assert sorted(members) == list(range(n))
    for s in seqs:
        assert all(b - a == k for a, b in zip(s.indices, s.indices[1:]))
        assert s.l_max == (n - s.j - 1) // k
    edges = union_edges(p, k)
    assert len(edges) == n - 1
    assert all(abs(a - b) == 1 for a, b in connectors)
    # connected: union-find over edges
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    assert len({find(i) for i in range(n)}) == 1


def test_a_k_examples():
    assert a_k(math.pi / 2, 1) == pytest.approx(1.0, abs=1e-15)
    assert a_k(math.pi / 3, 1) == pytest.approx(0.0, abs=1e-15)
    assert abs(a_k(2.30052398302, 1) - 7 / 3) < 1e-9


@given(omegas, st.integers(1, 20))
def test_a_k_range(omega, k):
    assert -1.0 <= a_k(omega, k) <= 3.0


@given(omegas, alphas, st.integers(1, 6), st.integers(0, 10))
def test_chord_identity(omega, alpha, k, i):
    pts = explicit_points(omega, alpha, i + k + 1)
    direct = float(np.sum((pts[i + k] - pts[i]) ** 2))
    assert chord_sq(omega, alpha, k) == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_chord_at_sausage_point_is_exact_fraction():
    for k in (1, 2, 3):
        assert abs(chord_sq(W_R, A_R, k) - 300 / 81) < 1e-12
