"""Grid scans, minimisation and level curves over the (omega, alpha) rectangle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from skimage.measure import find_contours

from . import srf
from .helix import DomainError

QUANTITIES = ("rho", "rho1", "h", "phi", "cos_theta")

DEFAULT_OMEGA_RANGE = (math.pi / 3 + 0.01, 5 * math.pi / 3 - 0.01)
DEFAULT_ALPHA_RANGE = (0.01, 1.0)
DEFAULT_RESOLUTION = 256

# Nelder-Mead coefficients
REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5


def functional(quantity: str, k_max: int = 3, lam: float = 0.0, k: int = 1) -> Callable[[float, float], float]:
    """Scalar function ``f(omega, alpha)`` for a named quantity; raises DomainError off-domain."""
    if quantity == "rho":
        return lambda w, a: srf.rho(w, a, k_max)[0]
    if quantity == "rho1":
        return srf.rho1
    if quantity == "h":
        return lambda w, a: srf.constrained_h(w, a, lam)
    if quantity == "phi":
        return srf.chirality
    if quantity == "cos_theta":
        return lambda w, a: srf.cos_theta(w, a, k)
    raise ValueError(f"unknown quantity {quantity!r}; expected one of {', '.join(QUANTITIES)}")


def _restricted(f, fst_restrict: bool):
    if not fst_restrict:
        return f

    def g(w, a):
        if not srf.fst_feasible(w, a, 1):
            raise DomainError("no full Steiner tree for k=1 here")
        return f(w, a)
    return g


@dataclass
class ScanGrid:
    omega_axis: np.ndarray
    alpha_axis: np.ndarray
    values: np.ndarray
    """Shape ``(len(omega_axis), len(alpha_axis))``; NaN marks an absent cell."""
    quantity: str
    options: dict = field(default_factory=dict)

    @property
    def present(self) -> np.ndarray:
        return ~np.isnan(self.values)

    def long_rows(self):
        for i, w in enumerate(self.omega_axis):
            for j, a in enumerate(self.alpha_axis):
                v = self.values[i, j]
                yield float(w), float(a), (None if math.isnan(v) else float(v))


def _axis(rng: Sequence[float], nodes: int, name: str) -> np.ndarray:
    lo, hi = float(rng[0]), float(rng[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError(f"{name} range ({lo}, {hi}) is empty")
    if lo == hi:
        if nodes != 1:
            raise ValueError(f"{name} range is a single value; use 1 node, got {nodes}")
        return np.array([lo])
    if nodes < 2:
        raise ValueError(f"{name} resolution must be >= 2, got {nodes}")
    return np.linspace(lo, hi, nodes)


def _resolution(resolution) -> tuple[int, int]:
    if isinstance(resolution, (tuple, list)):
        return int(resolution[0]), int(resolution[1])
    return int(resolution), int(resolution)


def scan(quantity: str, omega_range, alpha_range, resolution=DEFAULT_RESOLUTION, *,
         k_max: int = 3, lam: float = 0.0, k: int = 1, fst_restrict: bool = False) -> ScanGrid:
    """Evaluate a quantity on an inclusive grid.

    ``resolution`` is a node count per axis (int, or ``(n_omega, n_alpha)``).
    Cells where the quantity is undefined, or FST-infeasible for k=1 under
    ``fst_restrict``, hold NaN.
    """
    n_w, n_a = _resolution(resolution)
    w_axis = _axis(omega_range, n_w, "omega")
    a_axis = _axis(alpha_range, n_a, "alpha")
    f = _restricted(functional(quantity, k_max, lam, k), fst_restrict)
    values = np.full((len(w_axis), len(a_axis)), np.nan)
    for i, w in enumerate(w_axis):
        for j, a in enumerate(a_axis):
            try:
                values[i, j] = f(float(w), float(a))
            except DomainError:
                pass
    opts = {"k_max": k_max, "lam": lam, "k": k, "fst_restrict": fst_restrict}
    return ScanGrid(w_axis, a_axis, values, quantity, opts)


@dataclass
class MinimumReport:
    omega: float
    alpha: float
    value: float
    refined: bool
    restricted: bool
    grid_cell: tuple[int, int]
    grid_value: float
    quantity: str = "rho"

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity, "omega": self.omega, "alpha": self.alpha,
            "value": self.value, "refined": self.refined, "restricted": self.restricted,
            "grid_cell": list(self.grid_cell), "grid_value": self.grid_value,
        }


def nelder_mead(f: Callable[[np.ndarray], float], simplex: np.ndarray, xtol: float = 1e-10,
                max_iter: int = 20000) -> tuple[np.ndarray, float]:
    """Plain Nelder-Mead; stops when the simplex diameter drops below ``xtol``.

    ``f`` may return ``inf`` for infeasible points. The best vertex never gets worse.
    """
    pts = np.array(simplex, dtype=float)
    vals = np.array([f(p) for p in pts])
    for _ in range(max_iter):
        order = np.argsort(vals, kind="stable")
        pts, vals = pts[order], vals[order]
        diam = max(np.linalg.norm(pts[i] - pts[j]) for i in range(len(pts)) for j in range(i))
        if diam < xtol:
            break
        centroid = pts[:-1].mean(axis=0)
        worst = pts[-1]
        xr = centroid + REFLECT * (centroid - worst)
        fr = f(xr)
        if fr < vals[0]:
            xe = centroid + EXPAND * (xr - centroid)
            fe = f(xe)
            pts[-1], vals[-1] = (xe, fe) if fe < fr else (xr, fr)
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        else:
            if fr < vals[-1]:
                xc = centroid + CONTRACT * (xr - centroid)
            else:
                xc = centroid + CONTRACT * (worst - centroid)
            fc = f(xc)
            if fc < min(fr, vals[-1]):
                pts[-1], vals[-1] = xc, fc
            else:
                pts[1:] = pts[0] + SHRINK * (pts[1:] - pts[0])
                vals[1:] = [f(p) for p in pts[1:]]
    best = int(np.argmin(vals))
    return pts[best], float(vals[best])


def minimize(quantity: str, omega_range=DEFAULT_OMEGA_RANGE, alpha_range=DEFAULT_ALPHA_RANGE,
             resolution=DEFAULT_RESOLUTION, *, k_max: int = 3, lam: float = 0.0, k: int = 1,
             fst_restrict: bool = False, refine: bool = True, xtol: float = 1e-10,
             restarts: int = 5) -> MinimumReport:
    """Grid-seeded minimum of a quantity over a closed rectangle.

    The best grid node seeds Nelder-Mead with a simplex one grid cell wide;
    the simplex is restarted at the incumbent until a restart stops improving.
    """
    grid = scan(quantity, omega_range, alpha_range, resolution,
                k_max=k_max, lam=lam, k=k, fst_restrict=fst_restrict)
    if not grid.present.any():
        raise ValueError(f"no cell of the domain admits {quantity!r}"
                         + (" under the FST restriction" if fst_restrict else ""))
    i, j = np.unravel_index(np.nanargmin(grid.values), grid.values.shape)
    grid_value = float(grid.values[i, j])
    w0, a0 = float(grid.omega_axis[i]), float(grid.alpha_axis[j])
    report = MinimumReport(w0, a0, grid_value, False, fst_restrict, (int(i), int(j)), grid_value, quantity)
    if not refine:
        return report

    f = _restricted(functional(quantity, k_max, lam, k), fst_restrict)
    w_lo, w_hi = float(omega_range[0]), float(omega_range[1])
    a_lo, a_hi = float(alpha_range[0]), float(alpha_range[1])

    def objective(x):
        w, a = float(x[0]), float(x[1])
        if not (w_lo <= w <= w_hi and a_lo <= a <= a_hi):
            return math.inf
        try:
            return f(w, a)
        except DomainError:
            return math.inf

    step = np.array([_cell(grid.omega_axis, i), _cell(grid.alpha_axis, j)])
    best_x, best_f = np.array([w0, a0]), grid_value
    for _ in range(restarts + 1):
        simplex = _inward_simplex(best_x, step, (w_lo, w_hi), (a_lo, a_hi))
        x, fx = nelder_mead(objective, simplex, xtol=xtol)
        improved = fx < best_f
        if improved:
            best_x, best_f = x, fx
        if not improved or np.linalg.norm(x - best_x) < xtol:
            break
    report.omega, report.alpha = float(best_x[0]), float(best_x[1])
    report.value = f(report.omega, report.alpha)
    report.refined = True
    return report


def _cell(axis: np.ndarray, i: int) -> float:
    if len(axis) < 2:
        return 0.0
    return float(axis[1] - axis[0]) if i == 0 else float(axis[i] - axis[i - 1])


def _inward_simplex(x, step, w_box, a_box) -> np.ndarray:
    # point the edges into the box so the start simplex stays feasible where possible
    dw = step[0] if x[0] + step[0] <= w_box[1] else -step[0]
    da = step[1] if x[1] + step[1] <= a_box[1] else -step[1]
    return np.array([x, x + [dw, 0.0], x + [0.0, da]])


@dataclass
class Polyline:
    level: float
    omega: np.ndarray
    alpha: np.ndarray

    @property
    def closed(self) -> bool:
        return len(self.omega) > 2 and self.omega[0] == self.omega[-1] and self.alpha[0] == self.alpha[-1]

    def __len__(self):
        return len(self.omega)


def contour(grid: ScanGrid, levels: Sequence[float]) -> list[Polyline]:
    """Marching-squares level curves, linearly interpolated along cell edges.

    Absent cells cut curves into open polylines. A level has to be strictly
    crossed; a grid sitting exactly at the level yields nothing.
    """
    if grid.values.shape[0] < 2 or grid.values.shape[1] < 2 or grid.present.sum() < 4:
        raise ValueError("contour needs a grid with at least 2x2 present nodes")
    mask = grid.present
    data = np.where(mask, grid.values, 0.0)
    rows = np.arange(len(grid.omega_axis))
    cols = np.arange(len(grid.alpha_axis))
    out = []
    for level in levels:
        present = grid.values[mask]
        if not (present.min() < level < present.max()):
            continue
        paths = find_contours(data, level, mask=None if mask.all() else mask)
        for path in paths:
            w = np.interp(path[:, 0], rows, grid.omega_axis)
            a = np.interp(path[:, 1], cols, grid.alpha_axis)
            out.append(Polyline(float(level), w, a))
    return out


def fst_boundary(k: int, omega_range=DEFAULT_OMEGA_RANGE, alpha_range=DEFAULT_ALPHA_RANGE,
                 resolution=DEFAULT_RESOLUTION) -> list[Polyline]:
    """Curves in the plane where skip-k contiguous edges meet at exactly 120 degrees."""
    grid = scan("cos_theta", omega_range, alpha_range, resolution, k=k)
    return contour(grid, [-0.5])


def fst_section(k: int, alpha: float, omega_range=(1e-9, 2 * math.pi - 1e-9),
                nodes: int = 4001) -> list[tuple[float, float]]:
    """Feasible omega-intervals of the skip-k FST condition along a fixed-alpha line.

    Sign changes of ``cos_theta + 1/2`` on a fine sweep are polished with Brent's method.
    """
    g = lambda w: srf.cos_theta(w, alpha, k) + 0.5
    ws = np.linspace(omega_range[0], omega_range[1], nodes)
    gs = np.array([g(float(w)) for w in ws])
    intervals = []
    start = float(ws[0]) if gs[0] >= 0 else None
    for w0, w1, g0, g1 in zip(ws, ws[1:], gs, gs[1:]):
        if (g0 >= 0) == (g1 >= 0):
            continue
        root = brentq(g, float(w0), float(w1), xtol=1e-14, rtol=4 * np.finfo(float).eps)
        if g0 < 0:
            start = root
        else:
            intervals.append((start, root))
            start = None
    if start is not None:
        intervals.append((start, float(ws[-1])))
    return intervals


def min_second_difference(values: Sequence[float]) -> float:
    """Smallest second difference of a 1-D section; negative means not convex."""
    v = np.asarray(values, dtype=float)
    v = v[~np.isnan(v)]
    if len(v) < 3:
        return 0.0
    return float(np.min(v[2:] - 2 * v[1:-1] + v[:-2]))
