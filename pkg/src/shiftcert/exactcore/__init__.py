"""Exact kernels: polynomials, symmetric matrices, PSD decisions, thresholds."""

from .linalg import (SymMatrix, all_principal_minors, det_fraction_free, is_psd,
                     max_diag_slack, principal_minors, psd_check)
from .poly import X, Poly, as_fraction
from .threshold import poly_nonneg_threshold
from .upoly import AlgebraicRoot, RatFunc

__all__ = [
    "AlgebraicRoot", "Poly", "RatFunc", "SymMatrix", "X", "all_principal_minors", "as_fraction",
    "det_fraction_free", "is_psd", "max_diag_slack", "poly_nonneg_threshold", "principal_minors",
    "psd_check",
]
