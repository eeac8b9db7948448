"""Evenly spaced points on a unit-radius right circular helix.

Point ``i`` sits at ``(cos iw, sin iw, a*i*w)``; the pitch is ``2*pi*a``.
Skip-k subsequences pick every k-th point starting at offset ``j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Tetrahedral 3-sausage: consecutive points are vertices of face-glued regular tetrahedra.
SAUSAGE_OMEGA = math.pi - math.acos(2.0 / 3.0)
SAUSAGE_ALPHA = math.sqrt(30.0) / (9.0 * SAUSAGE_OMEGA)
SAUSAGE_RHO = (3.0 * math.sqrt(3.0) + math.sqrt(7.0)) / 10.0


class DomainError(ValueError):
    """Raised when parameters fall outside the region where a formula is defined."""


def check_omega(omega: float) -> None:
    if not (0.0 < omega < TWO_PI) or not math.isfinite(omega):
        raise DomainError(f"omega={omega!r} must lie in the open interval (0, 2*pi)")


def check_a1(omega: float) -> float:
    """Return ``A_1`` at ``omega``, raising unless it is strictly positive."""
    check_omega(omega)
    a1 = a_k(omega, 1)
    if a1 <= 0.0:
        raise DomainError(
            f"omega={omega!r} gives A_1 = 1 - 2cos(omega) = {a1:.3g} <= 0; "
            "need pi/3 < omega < 5pi/3")
    return a1


@dataclass(frozen=True)
class HelixParams:
    omega: float
    alpha: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n={self.n!r} must be an integer >= 2")
        check_omega(self.omega)
        if not math.isfinite(self.alpha) or self.alpha <= 0.0:
            raise DomainError(f"alpha={self.alpha!r} must be finite and > 0")


@dataclass(frozen=True)
class SkipSequence:
    j: int
    k: int
    l_max: int
    indices: tuple[int, ...]

    @property
    def first(self) -> int:
        return self.indices[0]

    @property
    def last(self) -> int:
        return self.indices[-1]

    def __len__(self):
        return len(self.indices)


def a_k(omega: float, k: int) -> float:
    """Return ``1 - 2 cos(k omega)``."""
    return 1.0 - 2.0 * math.cos(k * omega)


def a_k_plus_one(omega: float, k: int) -> float:
    """``A_k + 1 = 2 - 2cos(k omega)``, written as ``4 sin^2(k omega / 2)`` to avoid cancellation."""
    s = math.sin(0.5 * k * omega)
    return 4.0 * s * s


def chord_sq(omega: float, alpha: float, k: int) -> float:
    """Squared distance between helix points ``k`` steps apart."""
    aw = alpha * omega
    return k * k * aw * aw + a_k_plus_one(omega, k)


def helix_points(params: HelixParams) -> np.ndarray:
    """Return an ``(n, 3)`` array whose row ``i`` is point ``P_i``."""
    t = np.arange(params.n, dtype=float) * params.omega
    return np.column_stack([np.cos(t), np.sin(t), params.alpha * t])


def _check_skip(params: HelixParams, k: int, j: int = 0) -> None:
    if not 1 <= k <= params.n - 1:
        raise DomainError(f"k={k} must satisfy 1 <= k <= n-1 = {params.n - 1}")
    if not 0 <= j <= k - 1:
        raise DomainError(f"j={j} must satisfy 0 <= j <= k-1 = {k - 1}")


def subsequence(params: HelixParams, j: int, k: int) -> SkipSequence:
    _check_skip(params, k, j)
    l_max = (params.n - j - 1) // k
    return SkipSequence(j, k, l_max, tuple(range(j, j + l_max * k + 1, k)))


def union_sequence(params: HelixParams, k: int) -> tuple[list[SkipSequence], list[tuple[int, int]]]:
    """All ``k`` subsequences plus the ``k-1`` connector edges that tie them into one tree.

    Subsequence ``j`` is joined to ``j+1`` through its last point ``e`` and
    the point ``e+1`` when that exists, otherwise through ``P_j``-``P_{j+1}``.
    Every connector therefore spans a single step of the helix.
    """
    _check_skip(params, k)
    seqs = [subsequence(params, j, k) for j in range(k)]
    connectors = []
    for seq in seqs[:-1]:
        if seq.last + 1 <= params.n - 1:
            connectors.append((seq.last, seq.last + 1))
        else:
            connectors.append((seq.first, seq.first + 1))
    return seqs, connectors


def union_edges(params: HelixParams, k: int) -> list[tuple[int, int]]:
    """Edge list of the skip-k spanning tree: skip edges first, then connectors."""
    seqs, connectors = union_sequence(params, k)
    edges = [(a, b) for seq in seqs for a, b in zip(seq.indices, seq.indices[1:])]
    return edges + connectors
