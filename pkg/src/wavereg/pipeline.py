"""Multi-time-scale wavelet regression.

For each scale ``j = 0..J`` one regression equation is fitted: scale 0 uses
the raw series, scale ``j >= 1`` regresses the dependent's approximation
``S_j`` on the predictors' approximations ``S_j``, all produced with the same
filter bank, depth and boundary rule. Scale ``j`` corresponds to a
``2**j``-year time scale for annual data.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import (
    AllRowsFailedError,
    BoundaryContaminationWarning,
    LevelTooDeepError,
    ScaleError,
    WaveRegError,
)
from .ingest import AlignedDataset
from .regression import (
    BasisSpec,
    DesignMatrix,
    RegressionModel,
    expand_basis,
    ols_fit,
)
from .stats import SMALL_SAMPLE_RATIO, FitStatistics, fit_statistics
from .synthetic import GeneratorSpec, gen_synthetic
from .wavelet import BOUNDARY_MODES, filter_bank, max_level, mra

__all__ = [
    "AnalysisConfig",
    "ScaleReport",
    "MultiScaleReport",
    "analyze_multiscale",
    "rank_models",
    "format_equation",
    "scale_label",
    "period_label",
    "GeneratorSpec",
    "gen_synthetic",
    "DEFAULT_LEVELS",
]

DEFAULT_LEVELS = 5

STATUS_OK = "ok"
STATUS_EXACT = "exact-fit"
STATUS_FAILED = "failed"


@dataclass(frozen=True)
class AnalysisConfig:
    wavelet: str = "sym8"
    levels: int | None = None
    boundary: str = "periodic"
    basis: BasisSpec = field(default_factory=BasisSpec)
    count_error_variance: bool = False
    aic_form: str = "standard"

    def __post_init__(self):
        filter_bank(self.wavelet)
        if self.boundary not in BOUNDARY_MODES:
            raise ValueError(f"unknown boundary mode {self.boundary!r}")
        if self.levels is not None and self.levels < 0:
            raise ValueError(f"levels must be >= 0 (got {self.levels})")

    def resolve_levels(self, n: int) -> int:
        """Depth actually used for ``n`` samples (default ``min(5, j_max)``)."""
        j_max = int(n).bit_length() - 1 if n >= 1 else 0
        if self.levels is None:
            return min(DEFAULT_LEVELS, j_max)
        if self.levels > j_max:
            raise LevelTooDeepError(self.levels, j_max)
        return self.levels

    def as_dict(self) -> dict:
        d = asdict(self)
        d["basis"] = str(self.basis)
        return d


def scale_label(j: int) -> str:
    return f"s{j}"


def period_label(j: int) -> str:
    return f"{2 ** j}-year scale"


def _fmt(x: float, decimals: int) -> str:
    return f"{abs(x):.{decimals}f}"


def format_equation(dependent: str, model: RegressionModel, decimals: int = 4) -> str:
    """Render ``Y = b1·X1 + b2·X2 − b0`` with the intercept last."""
    parts = []
    for i, (name, b) in enumerate(zip(model.names, model.coefficients)):
        sign = "−" if b < 0 else "+"
        if i == 0:
            parts.append(("−" if b < 0 else "") + f"{_fmt(b, decimals)}·{name}")
        else:
            parts.append(f"{sign} {_fmt(b, decimals)}·{name}")
    b0 = model.intercept
    parts.append(f"{'−' if b0 < 0 else '+'} {_fmt(b0, decimals)}")
    return f"{dependent} = " + " ".join(parts)


@dataclass(frozen=True, eq=False)
class ScaleReport:
    scale: int
    status: str
    model: RegressionModel | None = None
    stats: FitStatistics | None = None
    equation: str | None = None
    error: str | None = None
    warnings: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return scale_label(self.scale)

    @property
    def period(self) -> str:
        return period_label(self.scale)

    @property
    def failed(self) -> bool:
        return self.status == STATUS_FAILED


@dataclass(frozen=True, eq=False)
class MultiScaleReport:
    rows: tuple[ScaleReport, ...]
    dataset: dict
    config: dict
    ranking: tuple[int, ...]

    @property
    def levels(self) -> int:
        return len(self.rows) - 1

    def row(self, j: int) -> ScaleReport:
        return self.rows[j]


def rank_models(report: MultiScaleReport | tuple[ScaleReport, ...]) -> list[int]:
    """Scale indices ordered by ascending AIC.

    Ties go to the smaller scale. Exact-fit rows (no finite AIC) and failed
    rows follow the ranked rows, each group in scale order.
    """
    rows = report.rows if isinstance(report, MultiScaleReport) else tuple(report)
    if not rows or all(r.failed for r in rows):
        raise AllRowsFailedError()
    ranked = sorted(
        (r for r in rows if r.status == STATUS_OK),
        key=lambda r: (r.stats.aic, r.scale),
    )
    exact = [r.scale for r in rows if r.status == STATUS_EXACT]
    failed = [r.scale for r in rows if r.failed]
    return [r.scale for r in ranked] + exact + failed


def _fit_scale(j, y, predictors, dep_name, config) -> ScaleReport:
    design = DesignMatrix(tuple(predictors))
    if config.basis:
        design = expand_basis(design, config.basis)
    model = ols_fit(design, y)
    stats = fit_statistics(
        y,
        model.fitted,
        design.m,
        count_error_variance=config.count_error_variance,
        aic_form=config.aic_form,
    )
    status = STATUS_EXACT if stats.exact_fit else STATUS_OK
    return ScaleReport(j, status, model, stats, format_equation(dep_name, model))


def analyze_multiscale(
    data: AlignedDataset, config: AnalysisConfig | None = None
) -> MultiScaleReport:
    """Fit one regression equation per scale ``s0..sJ`` and rank them by AIC.

    A failure at one scale (e.g. collinear smooth predictors) is recorded on
    that row and does not affect the other rows.
    """
    config = config or AnalysisConfig()
    n = data.n
    J = config.resolve_levels(n)
    fb = filter_bank(config.wavelet)
    j_clean = max_level(n, fb.length)[1] if n >= 2 else 0

    decomps = {}
    if J >= 1:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BoundaryContaminationWarning)
            for s in (data.dependent, *data.independents):
                decomps[s.name] = mra(s.values, fb, J, config.boundary, name=s.name)

    dep = data.dependent.name
    basis = config.basis
    n_params = len(data.independents) + len(basis.squares) + len(basis.products) + 1
    rows = []
    for j in range(J + 1):
        if j == 0:
            y = data.dependent.values
            preds = [(s.name, s.values) for s in data.independents]
        else:
            y = decomps[dep].approximation(j)
            preds = [(s.name, decomps[s.name].approximation(j)) for s in data.independents]

        notes = []
        if j > j_clean:
            notes.append(
                f"boundary-dominated: level {j} exceeds the clean depth {j_clean} "
                f"for n={n} with {fb.name}"
            )
        if j >= 1:
            dof = decomps[dep].approx_sizes[j - 1]
            if dof < n_params + 1:
                notes.append(
                    f"degenerate scale: S_{j} spans at most {dof} dimensions, "
                    f"fewer than the {n_params + 1} needed to leave a residual degree of freedom"
                )
        try:
            row = _fit_scale(j, np.asarray(y), preds, dep, config)
        except WaveRegError as exc:
            row = ScaleReport(j, STATUS_FAILED, error=str(ScaleError(j, exc)))
        else:
            if row.stats.small_sample:
                notes.append(
                    f"n/k = {n}/{row.stats.k} <= {SMALL_SAMPLE_RATIO}: prefer AICc over AIC"
                )
        rows.append(replace(row, warnings=row.warnings + tuple(notes)))

    rows = tuple(rows)
    dataset = {
        "source": data.source,
        "dependent": dep,
        "independents": [s.name for s in data.independents],
        "n": n,
        "first_index": int(data.index[0]),
        "last_index": int(data.index[-1]),
    }
    resolved = config.as_dict()
    resolved["levels"] = J
    try:
        ranking = tuple(rank_models(rows))
    except AllRowsFailedError:
        ranking = ()
    return MultiScaleReport(rows, dataset, resolved, ranking)

