"""Filter banks, decimated DWT and multiresolution analysis."""

from .dwt import (
    BOUNDARY_MODES,
    MRADecomposition,
    WaveletCoefficients,
    dwt_forward,
    dwt_inverse,
    max_level,
    mra,
)
from .filters import SUPPORTED_WAVELETS, FilterBank, filter_bank

__all__ = [
    "BOUNDARY_MODES",
    "SUPPORTED_WAVELETS",
    "FilterBank",
    "MRADecomposition",
    "WaveletCoefficients",
    "dwt_forward",
    "dwt_inverse",
    "filter_bank",
    "max_level",
    "mra",
]
