"""Spanning trees of helical point sets: closed forms and an exact MST oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .helix import DomainError, HelixParams, check_omega, chord_sq, helix_points, union_edges

MAX_ORACLE_POINTS = 5000


@dataclass
class TreeEmbedding:
    """A tree drawn in 3-space.

    Vertex ``v < n_terminals`` is terminal ``v``; vertex ``n_terminals + s``
    is Steiner point ``s`` (0-based storage, labelled ``S{s+1}``).
    """

    terminals: np.ndarray
    steiner_points: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    edges: list[tuple[int, int]] = field(default_factory=list)
    total_length: float = 0.0

    @property
    def n_terminals(self) -> int:
        return len(self.terminals)

    @property
    def vertices(self) -> np.ndarray:
        return np.vstack([self.terminals, self.steiner_points])

    def label(self, v: int) -> str:
        n = self.n_terminals
        return f"P{v}" if v < n else f"S{v - n + 1}"

    def edge_lengths(self) -> np.ndarray:
        if not self.edges:
            return np.zeros(0)
        verts = self.vertices
        e = np.asarray(self.edges)
        return np.linalg.norm(verts[e[:, 0]] - verts[e[:, 1]], axis=1)

    def edge_sum(self) -> float:
        return math.fsum(self.edge_lengths())

    def is_tree(self) -> bool:
        n_vert = len(self.terminals) + len(self.steiner_points)
        if len(self.edges) != n_vert - 1:
            return False
        parent = list(range(n_vert))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def csv_rows(self) -> list[tuple[str, str, float]]:
        return [(self.label(a), self.label(b), float(d))
                for (a, b), d in zip(self.edges, self.edge_lengths())]


def _check_k(params: HelixParams, k: int) -> None:
    if not 1 <= k <= params.n - 1:
        raise DomainError(f"k={k} must satisfy 1 <= k <= n-1 = {params.n - 1}")


def spanning_length_closed(params: HelixParams, k: int) -> float:
    """Length of the skip-k union tree: ``n-k`` skip chords plus ``k-1`` unit-step connectors."""
    _check_k(params, k)
    w, a, n = params.omega, params.alpha, params.n
    return (n - k) * math.sqrt(chord_sq(w, a, k)) + (k - 1) * math.sqrt(chord_sq(w, a, 1))


def spanning_embedding(params: HelixParams, k: int) -> TreeEmbedding:
    _check_k(params, k)
    tree = TreeEmbedding(helix_points(params), edges=union_edges(params, k))
    tree.total_length = tree.edge_sum()
    return tree


def mst_length_asymptotic(omega: float, alpha: float, k: int, n: int = 1) -> float:
    """Large-n spanning length ``n * sqrt(k^2 a^2 w^2 + A_k + 1)``."""
    check_omega(omega)
    if k < 1:
        raise DomainError(f"k={k} must be >= 1")
    return n * math.sqrt(chord_sq(omega, alpha, k))


def mst_oracle(points) -> TreeEmbedding:
    """Exact Euclidean MST by Prim's algorithm on the complete graph.

    Edges are totally ordered by ``(length, min(i, j), max(i, j))`` so the
    tree is unique and reproducible even when many chords tie.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise ValueError("mst_oracle needs at least 2 points")
    if not np.all(np.isfinite(pts)):
        raise ValueError("mst_oracle got non-finite coordinates")
    n = len(pts)
    if n > MAX_ORACLE_POINTS:
        raise ValueError(f"mst_oracle is capped at {MAX_ORACLE_POINTS} points, got {n}")

    idx = np.arange(n)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best_d = np.linalg.norm(pts - pts[0], axis=1)
    best_lo = np.zeros(n, dtype=np.int64)  # min(parent, v); parent is 0 initially
    best_hi = idx.copy()
    parent = np.zeros(n, dtype=np.int64)

    edges = []
    lengths = []
    for _ in range(n - 1):
        cand = np.flatnonzero(~in_tree)
        d = best_d[cand]
        tied = cand[d == d.min()]
        v = tied[np.lexsort((best_hi[tied], best_lo[tied]))[0]]
        u = int(parent[v])
        edges.append((min(u, int(v)), max(u, int(v))))
        lengths.append(best_d[v])
        in_tree[v] = True

        new_d = np.linalg.norm(pts - pts[v], axis=1)
        lo = np.minimum(idx, v)
        hi = np.maximum(idx, v)
        better = (new_d < best_d) | (
            (new_d == best_d) & ((lo < best_lo) | ((lo == best_lo) & (hi < best_hi))))
        better &= ~in_tree
        best_d = np.where(better, new_d, best_d)
        best_lo = np.where(better, lo, best_lo)
        best_hi = np.where(better, hi, best_hi)
        parent = np.where(better, v, parent)

    return TreeEmbedding(pts, edges=edges, total_length=math.fsum(lengths))
