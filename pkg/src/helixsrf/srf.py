"""Scalar functionals on the (omega, alpha) helix-parameter plane.

All Steiner-ratio quantities need ``A_1 = 1 - 2cos(omega) > 0``, i.e.
``pi/3 < omega < 5pi/3``; outside that strip they raise :class:`DomainError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .helix import DomainError, a_k, a_k_plus_one, check_a1, check_omega, chord_sq
from .steiner import steiner_radius

# denominators closer than this (relative) count as tied and the smaller k wins
ARGMIN_RTOL = 1e-12

MOORE_BOUND = 0.5
DU_HWANG_BOUND = math.sqrt(3.0) / 3.0


def _check_alpha(alpha: float) -> None:
    if not math.isfinite(alpha) or alpha < 0.0:
        raise DomainError(f"alpha={alpha!r} must be finite and >= 0")


def smt_per_point(omega: float, alpha: float) -> float:
    a1 = check_a1(omega)
    return 1.0 + alpha * omega * math.sqrt(a1 / (a1 + 1.0))


def rho(omega: float, alpha: float, k_max: int = 3) -> tuple[float, int]:
    """Steiner Ratio Function and the k attaining the smallest spanning chord.

    The denominator is the piecewise minimum over ``k = 1..k_max`` of the
    per-point skip-k spanning length.
    """
    _check_alpha(alpha)
    if k_max < 1:
        raise DomainError(f"k_max={k_max} must be >= 1")
    num = smt_per_point(omega, alpha)
    dens = [math.sqrt(chord_sq(omega, alpha, k)) for k in range(1, k_max + 1)]
    lowest = min(dens)
    best = next(k for k, d in enumerate(dens, start=1) if d <= lowest * (1.0 + ARGMIN_RTOL))
    return num / dens[best - 1], best


def rho1(omega: float, alpha: float) -> float:
    """Steiner ratio against the consecutive-point (k=1) spanning tree."""
    _check_alpha(alpha)
    return smt_per_point(omega, alpha) / math.sqrt(chord_sq(omega, alpha, 1))


def cos_theta(omega: float, alpha: float, k: int) -> float:
    """Cosine of the angle at the middle point of three consecutive skip-k points."""
    if k < 1:
        raise DomainError(f"k={k} must be >= 1")
    d2 = chord_sq(omega, alpha, k)
    if d2 <= 0.0:
        raise DomainError(f"skip-{k} chord vanishes at omega={omega!r}, alpha={alpha!r}")
    ak1 = a_k_plus_one(omega, k)
    return -1.0 + ak1 * ak1 / (2.0 * d2)


def fst_feasible(omega: float, alpha: float, k: int) -> bool:
    """True when contiguous skip-k edges meet at no more than 120 degrees."""
    return cos_theta(omega, alpha, k) >= -0.5


def omega_interval(bound: str = "moore") -> tuple[float, float]:
    """Omega range on which the k=1 ratio stays inside the given lower bound and 1.

    ``"moore"`` pairs with 1/2 and ``"du_hwang"`` with sqrt(3)/3.
    """
    if bound == "moore":
        lo = math.acos(1.0 / 3.0)
    elif bound == "du_hwang":
        lo = math.acos(1.0 / 4.0)
    else:
        raise ValueError(f"unknown bound {bound!r}; expected 'moore' or 'du_hwang'")
    return lo, 2.0 * math.pi - lo


def chirality(omega: float, alpha: float) -> float:
    """Chirality measure; odd in alpha and zero where the Steiner helix has unit radius."""
    check_omega(omega)
    a1 = a_k(omega, 1)
    if a1 == 0.0:
        raise DomainError(f"chirality undefined at A_1 = 0 (omega={omega!r})")
    aw = alpha * omega
    return aw * math.sin(omega) * ((a1 + 1.0) / a1) * (aw * aw - a1 * (a1 + 1.0)) / 6.0


def constrained_h(omega: float, alpha: float, lam: float) -> float:
    """``(1 + lam) * rho1 - lam * chirality``."""
    return (1.0 + lam) * rho1(omega, alpha) - lam * chirality(omega, alpha)


@dataclass
class SrfSample:
    omega: float
    alpha: float
    rho: float
    argmin_k: int
    rho1: float
    r: float
    cos_theta: list[float] = field(default_factory=list)
    fst_feasible: list[bool] = field(default_factory=list)
    phi: float = 0.0
    h: Optional[float] = None
    lam: Optional[float] = None

    @property
    def k_max(self) -> int:
        return len(self.cos_theta)

    def to_dict(self) -> dict:
        d = {
            "omega": self.omega, "alpha": self.alpha, "rho": self.rho,
            "argmin_k": self.argmin_k, "rho1": self.rho1, "r": self.r,
            "cos_theta": list(self.cos_theta), "fst_feasible": list(self.fst_feasible),
            "phi": self.phi,
        }
        if self.h is not None:
            d["lambda"] = self.lam
            d["h"] = self.h
        return d

    def csv_header(self) -> list[str]:
        ks = range(1, self.k_max + 1)
        cols = ["omega", "alpha", "rho", "argmin_k", "rho1", "r"]
        cols += [f"cos_theta_{k}" for k in ks] + [f"fst_{k}" for k in ks] + ["phi"]
        return cols + (["h"] if self.h is not None else [])

    def csv_row(self) -> list:
        row = [self.omega, self.alpha, self.rho, self.argmin_k, self.rho1, self.r]
        row += list(self.cos_theta) + [int(f) for f in self.fst_feasible] + [self.phi]
        return row + ([self.h] if self.h is not None else [])


def sample(omega: float, alpha: float, k_max: int = 3, lam: Optional[float] = None) -> SrfSample:
    value, k_best = rho(omega, alpha, k_max)
    cosines = [cos_theta(omega, alpha, k) for k in range(1, k_max + 1)]
    return SrfSample(
        omega=omega, alpha=alpha, rho=value, argmin_k=k_best,
        rho1=rho1(omega, alpha), r=steiner_radius(omega, alpha),
        cos_theta=cosines, fst_feasible=[c >= -0.5 for c in cosines],
        phi=chirality(omega, alpha),
        h=None if lam is None else constrained_h(omega, alpha, lam), lam=lam,
    )
