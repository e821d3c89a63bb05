"""
Exceptions
Error hierarchy shared by the phase-space, spectral and CLI layers
"""


class GaussMPError(Exception):
    """Base class for all gaussmp errors"""


class DimensionMismatchError(GaussMPError, ValueError):
    """Matrix shape does not fit the mode count or is not 2N x 2N"""


class OrderingMismatchError(GaussMPError, ValueError):
    """Two objects carry different quadrature orderings"""


class PartitionError(GaussMPError, ValueError):
    """Bipartition is empty, full, out of range or unbalanced"""


class UnphysicalStateError(GaussMPError, ValueError):
    """Covariance matrix violates V + (i/2) Omega >= 0"""


class DegenerateSpectrumError(GaussMPError, ValueError):
    """Two eigenvalues coincide, so the log-gas energy is singular"""


class InvalidParameterError(GaussMPError, ValueError):
    """Parameter outside its documented range"""
