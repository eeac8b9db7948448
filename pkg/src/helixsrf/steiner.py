"""Steiner trees with the 3-sausage topology on helical terminals.

Topology for ``n`` terminals: Steiner points ``S_1..S_{n-2}``; ``S_i`` is
joined to ``P_i`` and to its chain neighbours ``S_{i-1}``, ``S_{i+1}``, with
``P_0`` and ``P_{n-1}`` standing in at the two ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .helix import DomainError, HelixParams, a_k, check_a1, helix_points
from .spanning import TreeEmbedding, mst_oracle

_COS_120 = -0.5
_SIN_60 = math.sin(math.pi / 3)


def steiner_radius(omega: float, alpha: float) -> float:
    """Radius of the inner helix carrying the Steiner points."""
    a1 = check_a1(omega)
    if alpha < 0:
        raise DomainError(f"alpha={alpha!r} must be >= 0")
    return alpha * omega / math.sqrt(a1 * (a1 + 1.0))


def _radius_below_one(params: HelixParams) -> tuple[float, float]:
    if params.n < 3:
        raise DomainError(f"n={params.n} must be >= 3 for a Steiner tree")
    r = steiner_radius(params.omega, params.alpha)
    if r >= 1.0:
        raise DomainError(f"Steiner radius r={r:.6g} >= 1; the helical Steiner construction is undefined")
    return a_k(params.omega, 1), r


def sausage_length_closed(params: HelixParams) -> float:
    a1, r = _radius_below_one(params)
    w, a, n = params.omega, params.alpha, params.n
    aw = a * w
    return ((n - 2) * (1.0 - r)
            + (n - 3) * aw * math.sqrt((a1 + 1.0) / a1)
            + 2.0 * math.sqrt(aw * aw + (1.0 - r) ** 2 + r * (a1 + 1.0)))


def sausage_edges(n: int) -> list[tuple[int, int]]:
    """Edges of the sausage topology in embedding vertex numbering.

    Order: ``n-2`` spokes, ``n-3`` Steiner links, then the two end edges.
    """
    s = lambda i: n + i - 1  # S_i, 1-based
    spokes = [(i, s(i)) for i in range(1, n - 1)]
    links = [(s(i), s(i + 1)) for i in range(1, n - 2)]
    return spokes + links + [(0, s(1)), (s(n - 2), n - 1)]


def sausage_embedding(params: HelixParams) -> TreeEmbedding:
    """Terminals on the unit helix and Steiner points on the radius-r helix of equal pitch."""
    _, r = _radius_below_one(params)
    t = np.arange(1, params.n - 1, dtype=float) * params.omega
    steiner = np.column_stack([r * np.cos(t), r * np.sin(t), params.alpha * t])
    tree = TreeEmbedding(helix_points(params), steiner, sausage_edges(params.n))
    tree.total_length = tree.edge_sum()
    return tree


def smt_length_asymptotic(omega: float, alpha: float, n: int = 1) -> float:
    a1 = check_a1(omega)
    return n * (1.0 + alpha * omega * math.sqrt(a1 / (a1 + 1.0)))


def _dist(p, q) -> float:
    return math.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2)


def fermat_point(a, b, c):
    """Point minimising the summed distance to three points in space.

    If some triangle angle is at least 120 degrees the answer is that vertex.
    Otherwise the first isogonic centre, from its barycentric weights
    ``|BC| / sin(A + 60deg)`` and cyclic.
    """
    la, lb, lc = _dist(b, c), _dist(a, c), _dist(a, b)
    # coincident pair: the doubled point wins
    if lc == 0.0 or lb == 0.0:
        return tuple(a)
    if la == 0.0:
        return tuple(b)
    cos_a = (lb * lb + lc * lc - la * la) / (2.0 * lb * lc)
    cos_b = (la * la + lc * lc - lb * lb) / (2.0 * la * lc)
    cos_c = (la * la + lb * lb - lc * lc) / (2.0 * la * lb)
    if cos_a <= _COS_120:
        return tuple(a)
    if cos_b <= _COS_120:
        return tuple(b)
    if cos_c <= _COS_120:
        return tuple(c)
    wa = la / _sin_plus_60(cos_a)
    wb = lb / _sin_plus_60(cos_b)
    wc = lc / _sin_plus_60(cos_c)
    tot = wa + wb + wc
    return tuple((wa * a[i] + wb * b[i] + wc * c[i]) / tot for i in range(3))


def _sin_plus_60(cos_x: float) -> float:
    cos_x = min(1.0, max(-1.0, cos_x))
    sin_x = math.sqrt(1.0 - cos_x * cos_x)
    return sin_x * 0.5 + cos_x * _SIN_60


@dataclass
class RelaxationReport:
    embedding: TreeEmbedding
    iterations: int
    final_move: float
    angle_violation_deg: float
    degenerate_vertices: list[int] = field(default_factory=list)
    lengths: list[float] = field(default_factory=list)
    """Total tree length after each sweep, starting with the initial tree."""

    @property
    def length(self) -> float:
        return self.embedding.total_length

    def converged(self, tol: float) -> bool:
        return self.final_move < tol

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "iterations": self.iterations,
            "final_move": self.final_move,
            "max_angle_violation_deg": self.angle_violation_deg,
            "degenerate": list(self.degenerate_vertices),
        }


def _neighbours(n: int, i: int) -> tuple[tuple[str, int], ...]:
    """Neighbours of S_i (1-based) as ('P', index) or ('S', index)."""
    left = ("P", 0) if i == 1 else ("S", i - 1)
    right = ("P", n - 1) if i == n - 2 else ("S", i + 1)
    return ("P", i), left, right


def _initial_steiner(params: HelixParams, terms: list) -> list:
    try:
        return [tuple(p) for p in sausage_embedding(params).steiner_points]
    except DomainError:
        pass
    # S_i touches P_{i-1}, P_i, P_{i+1} through its chain position
    return [tuple(sum(terms[i + d][c] for d in (-1, 0, 1)) / 3.0 for c in range(3))
            for i in range(1, params.n - 1)]


def relax_fixed_topology(params: HelixParams, max_iter: int = 10000, tol: float = 1e-10,
                         eps_degenerate: float = 1e-6) -> RelaxationReport:
    """Shorten the sausage tree by Gauss-Seidel Fermat-point sweeps with the topology held fixed.

    Each sweep visits ``S_1..S_{n-2}`` in order and moves each to the Fermat
    point of its three current neighbours, which cannot lengthen the tree.
    Stops when the largest move in a sweep drops below ``tol`` or after
    ``max_iter`` sweeps.
    """
    if params.n < 3:
        raise DomainError(f"n={params.n} must be >= 3 for a Steiner tree")
    n = params.n
    terms = [tuple(p) for p in helix_points(params)]
    steiner = _initial_steiner(params, terms)
    nbrs = [_neighbours(n, i) for i in range(1, n - 1)]
    edges = sausage_edges(n)

    def pos(ref):
        kind, idx = ref
        return terms[idx] if kind == "P" else steiner[idx - 1]

    def total():
        return math.fsum(_dist(pos(_ref(n, a)), pos(_ref(n, b))) for a, b in edges)

    lengths = [total()]
    iterations = 0
    final_move = math.inf
    while iterations < max_iter:
        iterations += 1
        move = 0.0
        for s, nb in enumerate(nbrs):
            p, q, u = pos(nb[0]), pos(nb[1]), pos(nb[2])
            old = steiner[s]
            new = fermat_point(p, q, u)
            # guard against rounding making the local cost go up
            if _dist(new, p) + _dist(new, q) + _dist(new, u) <= _dist(old, p) + _dist(old, q) + _dist(old, u):
                move = max(move, _dist(old, new))
                steiner[s] = new
        lengths.append(total())
        final_move = move
        if move < tol:
            break

    tree = TreeEmbedding(np.array(terms), np.array(steiner).reshape(-1, 3), edges)
    tree.total_length = tree.edge_sum()
    chord = float(np.mean(np.linalg.norm(np.diff(tree.terminals, axis=0), axis=1)))
    degenerate, violation = _steiner_diagnostics(tree, nbrs, eps_degenerate * chord)
    return RelaxationReport(tree, iterations, final_move, violation, degenerate, lengths)


def _ref(n: int, v: int) -> tuple[str, int]:
    return ("P", v) if v < n else ("S", v - n + 1)


def _steiner_diagnostics(tree: TreeEmbedding, nbrs, eps: float) -> tuple[list[int], float]:
    """Degenerate Steiner labels (1-based) and worst deviation from 120 degrees elsewhere."""
    degenerate = []
    violation = 0.0
    for s, nb in enumerate(nbrs, start=1):
        here = tree.steiner_points[s - 1]
        vecs = [(tree.terminals[idx] if kind == "P" else tree.steiner_points[idx - 1]) - here
                for kind, idx in nb]
        norms = [float(np.linalg.norm(v)) for v in vecs]
        if min(norms) < eps:
            degenerate.append(s)
            continue
        units = [v / nv for v, nv in zip(vecs, norms)]
        for x, y in ((0, 1), (0, 2), (1, 2)):
            c = float(np.clip(units[x] @ units[y], -1.0, 1.0))
            violation = max(violation, abs(math.degrees(math.acos(c)) - 120.0))
    return degenerate, violation


def finite_steiner_ratio(params: HelixParams, **relax_kwargs) -> float:
    """Relaxed sausage-tree length over the exact MST length of the same terminals."""
    report = relax_fixed_topology(params, **relax_kwargs)
    return report.length / mst_oracle(report.embedding.terminals).total_length
