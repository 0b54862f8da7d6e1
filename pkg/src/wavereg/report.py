"""Serialization of multi-scale reports and MRA components.

Machine formats (JSON, CSV) keep full float precision; the markdown table
rounds to four decimals in the layout of a published results table.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .pipeline import MultiScaleReport, ScaleReport
from .regression import INTERCEPT
from .wavelet import MRADecomposition

__all__ = [
    "report_to_dict",
    "report_to_json",
    "report_to_csv",
    "report_to_markdown",
    "mra_to_csv",
    "MARKDOWN_COLUMNS",
]

MARKDOWN_COLUMNS = (
    "Time scale",
    "Regression equation",
    "R²",
    "F",
    "Significance level α",
    "AIC",
    "AICc",
    "p",
    "Status",
)


def _num(x):
    return None if x is None else float(x)


def _row_dict(row: ScaleReport) -> dict:
    st = row.stats
    return {
        "scale": row.scale,
        "label": row.label,
        "period": row.period,
        "equation": row.equation,
        "coefficients": row.model.as_dict() if row.model else None,
        "n": st.n if st else None,
        "k": st.k if st else None,
        "rss": _num(st.rss) if st else None,
        "tss": _num(st.tss) if st else None,
        "r2": _num(st.r2) if st else None,
        "f": _num(st.f) if st else None,
        "p": _num(st.p) if st else None,
        "significance": st.significance.value if st else None,
        "aic": _num(st.aic) if st else None,
        "aicc": _num(st.aicc) if st else None,
        "status": row.status,
        "error": row.error,
        "warnings": list(row.warnings),
    }


def report_to_dict(report: MultiScaleReport) -> dict:
    return {
        "config": dict(report.config),
        "dataset": dict(report.dataset),
        "rows": [_row_dict(r) for r in report.rows],
        "ranking": list(report.ranking),
    }


def report_to_json(report: MultiScaleReport) -> str:
    # json writes floats with repr(), which round-trips exactly
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _g17(x) -> str:
    return "" if x is None else format(float(x), ".17g")


def report_to_csv(report: MultiScaleReport) -> str:
    predictors = []
    for r in report.rows:
        if r.model:
            predictors = list(r.model.names)
            break
    header = ["scale", "label", "period", "status", "equation", "intercept"]
    header += [f"coef_{name}" for name in predictors]
    header += ["r2", "f", "p", "significance", "aic", "aicc", "rss", "tss", "n", "k",
               "warnings", "error"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in report.rows:
        d = _row_dict(r)
        coefs = d["coefficients"] or {}
        writer.writerow(
            [r.scale, r.label, r.period, r.status, r.equation or "",
             _g17(coefs.get(INTERCEPT))]
            + [_g17(coefs.get(name)) for name in predictors]
            + [_g17(d["r2"]), _g17(d["f"]), _g17(d["p"]), d["significance"] or "",
               _g17(d["aic"]), _g17(d["aicc"]), _g17(d["rss"]), _g17(d["tss"]),
               d["n"] if d["n"] is not None else "", d["k"] if d["k"] is not None else "",
               "; ".join(r.warnings), r.error or ""]
        )
    return buf.getvalue()


def _fixed(x, decimals=4) -> str:
    if x is None:
        return "n/a"
    return f"{x:.{decimals}f}".replace("-", "−")


def _pfmt(p) -> str:
    if p is None:
        return "n/a"
    if p == 0.0 or p < 1e-4:
        return f"{p:.2e}"
    return f"{p:.4f}"


def report_to_markdown(report: MultiScaleReport) -> str:
    ds = report.dataset
    lines = [
        f"Wavelet regression of {ds['dependent']} on {', '.join(ds['independents'])} "
        f"(n={ds['n']}, wavelet={report.config['wavelet']}, "
        f"boundary={report.config['boundary']}, levels={report.config['levels']})",
        "",
        "| " + " | ".join(MARKDOWN_COLUMNS) + " |",
        "|" + "|".join("---" for _ in MARKDOWN_COLUMNS) + "|",
    ]
    for r in report.rows:
        st = r.stats
        if st is None:
            cells = [f"{r.label} ({r.period})", r.error or "failed"] + ["n/a"] * 6 + [r.status]
        else:
            sig = str(st.significance)
            if st.exact_fit:
                f_cell = "exact fit"
            else:
                f_cell = _fixed(st.f)
            cells = [
                f"{r.label} ({r.period})",
                r.equation,
                _fixed(st.r2),
                f_cell,
                sig,
                _fixed(st.aic, 3),
                _fixed(st.aicc, 3),
                _pfmt(st.p),
                r.status,
            ]
        lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
    if report.ranking:
        labels = [f"s{j}" for j in report.ranking]
        lines += ["", "Ranking (best first by AIC): " + ", ".join(labels)]
    return "\n".join(lines) + "\n"


def mra_to_csv(decomp: MRADecomposition, raw, index) -> str:
    """CSV with columns ``year, raw, S_1..S_J, D_1..D_J``."""
    J = decomp.J
    header = ["year", "raw"] + [f"S_{j}" for j in range(1, J + 1)] + [f"D_{j}" for j in range(1, J + 1)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for i, year in enumerate(index):
        vals = [raw[i]] + [s[i] for s in decomp.S] + [d[i] for d in decomp.D]
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("non-finite component value")
        writer.writerow([int(year)] + [_g17(v) for v in vals])
    return buf.getvalue()
