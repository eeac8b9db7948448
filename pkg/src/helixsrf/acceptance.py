"""Exit criteria for the package, runnable from pytest and from ``helixsrf verify``.

Every check is hermetic and seeded; ``fast`` shrinks sample counts and grids
for a quick smoke run but keeps every tolerance.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import srf
from .helix import (SAUSAGE_ALPHA, SAUSAGE_OMEGA, SAUSAGE_RHO, HelixParams, chord_sq,
                    helix_points)
from .optimize import DEFAULT_ALPHA_RANGE, DEFAULT_OMEGA_RANGE, minimize
from .spanning import mst_oracle, spanning_length_closed
from .steiner import (finite_steiner_ratio, relax_fixed_topology, sausage_embedding,
                      sausage_length_closed, steiner_radius)

SEED = 20240607
SAUSAGE_CHORD = math.sqrt(300.0 / 81.0)


@dataclass
class Check:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float = math.inf

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def check_constants(fast: bool = False) -> tuple[bool, str]:
    dw = abs(SAUSAGE_OMEGA - 2.30052398302)
    da = abs(SAUSAGE_ALPHA - 0.26454000216)
    return dw < 1e-10 and da < 1e-10, f"|dw|={dw:.1e}, |da|={da:.1e} (tol 1e-10)"


def check_ratio_value(fast: bool = False) -> tuple[bool, str]:
    value, _ = srf.rho(SAUSAGE_OMEGA, SAUSAGE_ALPHA, 3)
    value1 = srf.rho1(SAUSAGE_OMEGA, SAUSAGE_ALPHA)
    exact = (3 * math.sqrt(3) + math.sqrt(7)) / 10
    e0, e1, e2 = abs(value - exact), abs(value1 - exact), abs(exact - 0.78419037337)
    ok = e0 < 1e-9 and e1 < 1e-9 and e2 < 1e-9
    return ok, f"rho={value:.12f}, rho1={value1:.12f}, target {exact:.12f} (tol 1e-9)"


def check_equal_edges(fast: bool = False) -> tuple[bool, str]:
    dens = [math.sqrt(chord_sq(SAUSAGE_OMEGA, SAUSAGE_ALPHA, k)) for k in (1, 2, 3)]
    pair = max(abs(a - b) for a in dens for b in dens)
    exact = max(abs(d - SAUSAGE_CHORD) for d in dens)
    return pair < 1e-12 and exact < 1e-12, f"max pairwise {pair:.1e}, vs sqrt(300/81) {exact:.1e} (tol 1e-12)"


def check_embedding_identity(fast: bool = False) -> tuple[bool, str]:
    rng = _rng(4)
    worst, count = 0.0, 0
    target = 20 if fast else 100
    while count < target:
        n = int(rng.integers(3, 101))
        w = float(rng.uniform(math.pi / 3 + 0.05, 5 * math.pi / 3 - 0.05))
        a = float(rng.uniform(0.01, 1.0))
        if steiner_radius(w, a) >= 0.99:
            continue
        p = HelixParams(w, a, n)
        closed = sausage_length_closed(p)
        worst = max(worst, abs(sausage_embedding(p).edge_sum() - closed) / closed)
        count += 1
    return worst < 1e-12, f"{count} cases, worst relative gap {worst:.1e} (tol 1e-12)"


def check_mst_dominance(fast: bool = False) -> tuple[bool, str]:
    rng = _rng(5)
    cases = 100 if fast else 500
    worst_excess = -math.inf
    for _ in range(cases):
        n = int(rng.integers(2, 201))
        w = float(rng.uniform(0.1, 2 * math.pi - 0.1))
        a = float(rng.uniform(0.05, 2.0))
        p = HelixParams(w, a, n)
        oracle = mst_oracle(helix_points(p)).total_length
        for k in range(1, min(5, n - 1) + 1):
            worst_excess = max(worst_excess, oracle - spanning_length_closed(p, k))
    saus = mst_oracle(helix_points(HelixParams(SAUSAGE_OMEGA, SAUSAGE_ALPHA, 100))).total_length
    err = abs(saus - 99 * SAUSAGE_CHORD)
    ok = worst_excess <= 1e-9 and err < 1e-9
    return ok, (f"{cases} cases, max(oracle - closed) = {worst_excess:.1e} (slack 1e-9); "
                f"n=100 sausage error {err:.1e} (tol 1e-9)")


def check_relaxation(fast: bool = False) -> tuple[bool, str]:
    p = HelixParams(SAUSAGE_OMEGA, SAUSAGE_ALPHA, 23)
    rep = relax_fixed_topology(p, tol=1e-10)
    closed = sausage_length_closed(p)
    gap = (closed - rep.length) / closed
    monotone = all(b <= a * (1 + 1e-12) for a, b in zip(rep.lengths, rep.lengths[1:]))
    ok = rep.length <= closed and gap < 1e-2 and rep.angle_violation_deg < 1.0 and monotone \
        and not rep.degenerate_vertices
    return ok, (f"length {rep.length:.9f} <= closed {closed:.9f}, gap {gap:.2e} (< 1e-2), "
                f"angle violation {rep.angle_violation_deg:.1e} deg (< 1), monotone={monotone}")


def check_anomaly(fast: bool = False) -> tuple[bool, str]:
    value, k = srf.rho(math.pi, 0.05, 3)
    finite = finite_steiner_ratio(HelixParams(3.1, 0.05, 23))
    return value > 1 and finite > 1, f"rho(pi, 0.05)={value:.4f} (k={k}), finite n=23 ratio {finite:.4f}; both > 1"


def _cos_theta_vector(pts: np.ndarray, j: int, k: int, l: int) -> float:
    a, b, c = pts[j + l * k], pts[j + (l + 1) * k], pts[j + (l + 2) * k]
    u, v = b - a, b - c
    return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))


def check_fst_formula(fast: bool = False) -> tuple[bool, str]:
    rng = _rng(8)
    cases = 200 if fast else 1000
    worst = 0.0
    for _ in range(cases):
        k = int(rng.integers(1, 6))
        j = int(rng.integers(0, k))
        l = int(rng.integers(0, 6))
        w = float(rng.uniform(0.1, 2 * math.pi - 0.1))
        a = float(rng.uniform(0.05, 2.0))
        pts = helix_points(HelixParams(w, a, j + (l + 2) * k + 1))
        worst = max(worst, abs(_cos_theta_vector(pts, j, k, l) - srf.cos_theta(w, a, k)))
    c1 = srf.cos_theta(SAUSAGE_OMEGA, SAUSAGE_ALPHA, 1)
    ok = worst < 1e-12 and abs(c1 - 0.5) < 1e-12
    return ok, f"{cases} samples, worst {worst:.1e} (tol 1e-12); cos theta_1 at sausage - 1/2 = {c1 - 0.5:.1e}"


def check_bounds(fast: bool = False) -> tuple[bool, str]:
    size = 50 if fast else 200
    lo, hi = srf.omega_interval("moore")
    ws = np.linspace(lo, hi, size)
    alphas = np.linspace(0.01, 10.0, size)
    vals = np.array([[srf.rho1(float(w), float(a)) for a in alphas] for w in ws])
    ok = vals.min() >= 0.5 - 1e-9 and vals.max() <= 1 + 1e-9
    return ok, f"{size}x{size} grid, rho1 in [{vals.min():.10f}, {vals.max():.10f}] (bounds [0.5, 1] +- 1e-9)"


def check_restriction_ordering(fast: bool = False) -> tuple[bool, str]:
    size = 50 if fast else 200
    ws = np.linspace(*DEFAULT_OMEGA_RANGE, size)
    alphas = np.linspace(*DEFAULT_ALPHA_RANGE, size)
    worst = math.inf
    for w in ws:
        for a in alphas:
            worst = min(worst, srf.rho(float(w), float(a), 3)[0] - srf.rho1(float(w), float(a)))
    res = 64 if fast else 256
    restricted = minimize("rho1", resolution=res, fst_restrict=True)
    free = minimize("rho", resolution=res)
    ok = worst >= 0.0 and restricted.value > free.value
    return ok, (f"min(rho - rho1) = {worst:.1e} >= 0; FST-restricted min rho1 {restricted.value:.6f} "
                f"> unrestricted min rho {free.value:.6f}")


def check_chirality(fast: bool = False) -> tuple[bool, str]:
    rng = _rng(11)
    cases = 200 if fast else 1000
    odd = 0.0
    for _ in range(cases):
        w = float(rng.uniform(0.05, 2 * math.pi - 0.05))
        if abs(1 - 2 * math.cos(w)) < 1e-3:
            continue
        a = float(rng.uniform(0.01, 2.0))
        odd = max(odd, abs(srf.chirality(w, -a) + srf.chirality(w, a)))
    zero = 0.0
    for w in np.linspace(math.pi / 3 + 0.1, 5 * math.pi / 3 - 0.1, 50):
        a1 = 1 - 2 * math.cos(w)
        zero = max(zero, abs(srf.chirality(float(w), math.sqrt(a1 * (a1 + 1)) / w)))
    for a in np.linspace(0.01, 2.0, 50):
        zero = max(zero, abs(srf.chirality(math.pi, float(a))))
    ok = odd < 1e-12 and zero < 1e-12
    return ok, f"max |phi(w,-a) + phi(w,a)| = {odd:.1e}; max |phi| on zero loci {zero:.1e} (tol 1e-12)"


def check_h_consistency(fast: bool = False) -> tuple[bool, str]:
    rng = _rng(12)
    cases = 200 if fast else 1000
    worst = 0.0
    for _ in range(cases):
        w = float(rng.uniform(math.pi / 3 + 0.01, 5 * math.pi / 3 - 0.01))
        a = float(rng.uniform(0.01, 2.0))
        worst = max(worst, abs(srf.constrained_h(w, a, 0.0) - srf.rho1(w, a)))
    return worst <= 1e-15, f"{cases} samples, max |H(w,a,0) - rho1| = {worst:.1e} (tol 1e-15)"


CRITERIA: list[tuple[int, str, Callable[[bool], tuple[bool, str]], float]] = [
    (1, "sausage constants", check_constants, 1.0),
    (2, "Steiner ratio at the sausage point", check_ratio_value, 1.0),
    (3, "equal-edge tie of the k-denominators", check_equal_edges, 1.0),
    (4, "sausage embedding identity", check_embedding_identity, 5.0),
    (5, "MST oracle dominance and sausage path", check_mst_dominance, 10.0),
    (6, "fixed-topology relaxation quality", check_relaxation, 5.0),
    (7, "quasi-planar ratio above one", check_anomaly, 5.0),
    (8, "contiguous-edge angle formula", check_fst_formula, 2.0),
    (9, "rho1 bounds on the Moore interval", check_bounds, 5.0),
    (10, "dominance and restriction ordering", check_restriction_ordering, 30.0),
    (11, "chirality properties", check_chirality, 2.0),
    (12, "H at zero multiplier", check_h_consistency, 1.0),
]


def run_criterion(number: int, fast: bool = False) -> Check:
    num, name, fn, budget = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn(fast)
    except Exception as exc:  # a crash is a failed criterion, not a crashed verify run
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        passed = False
        detail += f"; over runtime budget {budget:.0f}s"
    return Check(num, name, passed, detail, elapsed, budget)


def run_all(fast: bool = False) -> list[Check]:
    return [run_criterion(num, fast) for num, *_ in CRITERIA]
