"""Wavelet regression for multi-time-scale hydro-climate analysis.

A dependent series and its predictors are decomposed with a decimated
discrete wavelet transform; at each dyadic scale the approximations are
related by ordinary least squares and the fits are compared with R², an
F-test and AIC/AICc.
"""

__version__ = "0.1.0"

from .ingest import AlignedDataset, TimeSeries, load_csv, validate_align
from .pipeline import AnalysisConfig, MultiScaleReport, analyze_multiscale, rank_models
from .regression import BasisSpec, DesignMatrix, RegressionModel, ols_fit, predict
from .stats import FitStatistics, fit_statistics
from .synthetic import GeneratorSpec, gen_synthetic
from .wavelet import filter_bank, mra

__all__ = [
    "AlignedDataset",
    "AnalysisConfig",
    "BasisSpec",
    "DesignMatrix",
    "FitStatistics",
    "GeneratorSpec",
    "MultiScaleReport",
    "RegressionModel",
    "TimeSeries",
    "analyze_multiscale",
    "filter_bank",
    "fit_statistics",
    "gen_synthetic",
    "load_csv",
    "mra",
    "ols_fit",
    "predict",
    "rank_models",
    "validate_align",
]
