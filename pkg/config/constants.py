"""
Numeric Constants and Defaults
Tolerances, Marchenko-Pastur defaults and ensemble parameters
"""
import math

# Tolerances used across the phase-space and spectral modules
TOLERANCES = {
    # loader rejects |M - M^T| above this fraction of max|M|
    "symmetry_relative": 1e-8,
    # uncertainty check: tol = 1e-9 * max(1, max|V|)
    "uncertainty_relative": 1e-9,
    # symplecticity: tol = 1e-10 * max(1, max|S|^2)
    "symplectic_relative": 1e-10,
    # Wishart eigenvalues may dip this far below zero from roundoff
    "psd_floor": 1e-10,
    "quadrature_abs": 1e-12,
    "quadrature_rel": 1e-12,
    "quantile_xtol": 1e-13,
    "histogram_normalization": 1e-9,
    # Freedman-Diaconis treats an IQR below this fraction of max(1, max|x|) as zero
    "iqr_degenerate": 1e-12,
}

# Marchenko-Pastur criterion defaults
MP_DEFAULTS = {
    "r": 0.5,
    "paper_bounds": (3.0 - 2.0 * math.sqrt(2.0), 3.0 + 2.0 * math.sqrt(2.0)),
    "grid_points": 201,
    "grid_padding": 0.5,
    "quadrature_limit": 200,
}

# Ensemble generation defaults
ENSEMBLE_DEFAULTS = {
    "noise": 0.1,
    "squeezing": 1.0,
    "occupation": 0.0,
    "max_seed": 2**64 - 1,
}

# Every float written to CSV uses 17 significant digits
FLOAT_FORMAT = ".17g"
