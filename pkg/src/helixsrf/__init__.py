"""Steiner ratio computations for evenly spaced points on a right circular helix."""

from .helix import (SAUSAGE_ALPHA, SAUSAGE_OMEGA, SAUSAGE_RHO, DomainError, HelixParams,
                    SkipSequence, a_k, helix_points, subsequence, union_sequence)
from .optimize import MinimumReport, Polyline, ScanGrid, contour, fst_boundary, minimize, scan
from .spanning import TreeEmbedding, mst_length_asymptotic, mst_oracle, spanning_length_closed
from .srf import (SrfSample, chirality, constrained_h, cos_theta, fst_feasible, omega_interval,
                  rho, rho1, sample)
from .steiner import (RelaxationReport, finite_steiner_ratio, relax_fixed_topology,
                      sausage_embedding, sausage_length_closed, smt_length_asymptotic,
                      steiner_radius)

__version__ = "0.1.0"
