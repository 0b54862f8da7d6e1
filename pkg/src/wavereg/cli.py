"""Command-line interface.

Subcommands::

    wavereg decompose      --input F --column C [--wavelet W] [--level J] [--boundary B]
    wavereg analyze        --input F --dependent Y --independent X1,X2 [--levels J] [--format F]
    wavereg gen-synthetic  [--n N] [--seed S] ...

Exit status is 0 on success, 1 on data or numerical failure and 2 on usage
errors. Option values can also come from a ``key = value`` file given with
``--config``; command-line flags take precedence over it.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
import warnings
from pathlib import Path

from . import __version__
from .errors import InvalidSpecError, WaveRegError
from .ingest import dataset_to_csv, load_csv, load_series
from .pipeline import AnalysisConfig, analyze_multiscale
from .regression import BasisSpec
from .report import mra_to_csv, report_to_csv, report_to_json, report_to_markdown
from .stats import AIC_FORMS
from .synthetic import GeneratorSpec, gen_synthetic
from .wavelet import BOUNDARY_MODES, SUPPORTED_WAVELETS, filter_bank, mra

log = logging.getLogger("wavereg")

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2

FORMATS = ("csv", "json", "markdown")

_DEFAULTS = {
    "wavelet": "sym8",
    "boundary": "periodic",
    "format": "markdown",
    "aic_form": "standard",
    "basis": "",
    "count_error_variance": False,
}


class UsageError(Exception):
    pass


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines. ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _resolve(args, cfg, key):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in cfg:
        return cfg[key]
    return _DEFAULTS.get(key)


def _as_int(value, key):
    if value is None:
        return None
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"{key} must be an integer (got {value!r})") from None


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def _choice(value, allowed, key):
    if value not in allowed:
        raise UsageError(f"{key} must be one of {', '.join(allowed)} (got {value!r})")
    return value


def _names(value) -> list[str]:
    return [v.strip() for v in (value or "").split(",") if v.strip()]


def _floats(value, key) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in str(value).split(",") if v.strip())
    except ValueError:
        raise UsageError(f"{key} must be a comma-separated list of numbers") from None


def write_output(text: str, path: str | None) -> None:
    """Write ``text`` to ``path`` atomically (temp file + rename), or to stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _source(path):
    return sys.stdin if path == "-" else path


def _relay_warnings(caught) -> None:
    for w in caught:
        log.warning("%s", w.message)


def cmd_decompose(args, cfg) -> int:
    path = _resolve(args, cfg, "input")
    column = _resolve(args, cfg, "column")
    if not path or not column:
        raise UsageError("decompose requires --input and --column")
    wavelet = _choice(_resolve(args, cfg, "wavelet"), SUPPORTED_WAVELETS, "wavelet")
    boundary = _choice(_resolve(args, cfg, "boundary"), BOUNDARY_MODES, "boundary")
    level = _as_int(_resolve(args, cfg, "level"), "level")

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        series = load_series(_source(path), column)
        if level is None:
            level = min(5, len(series).bit_length() - 1)
        decomp = mra(series.values, filter_bank(wavelet), level, boundary, name=column)
    _relay_warnings(caught)
    write_output(mra_to_csv(decomp, series.values, series.index), args.output)
    return EXIT_OK


def cmd_analyze(args, cfg) -> int:
    path = _resolve(args, cfg, "input")
    dependent = _resolve(args, cfg, "dependent")
    independents = _names(_resolve(args, cfg, "independent"))
    if not path:
        raise UsageError("analyze requires --input")
    if not dependent:
        raise UsageError("analyze requires --dependent")
    if not independents:
        raise UsageError("analyze requires --independent (comma-separated)")
    fmt = _choice(_resolve(args, cfg, "format"), FORMATS, "format")
    try:
        config = AnalysisConfig(
            wavelet=_choice(_resolve(args, cfg, "wavelet"), SUPPORTED_WAVELETS, "wavelet"),
            levels=_as_int(_resolve(args, cfg, "levels"), "levels"),
            boundary=_choice(_resolve(args, cfg, "boundary"), BOUNDARY_MODES, "boundary"),
            basis=BasisSpec.parse(_resolve(args, cfg, "basis")),
            count_error_variance=_as_bool(_resolve(args, cfg, "count_error_variance")),
            aic_form=_choice(_resolve(args, cfg, "aic_form"), AIC_FORMS, "aic-form"),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        data = load_csv(_source(path), dependent, independents)
        report = analyze_multiscale(data, config)
    _relay_warnings(caught)
    for row in report.rows:
        for note in row.warnings:
            log.warning("%s: %s", row.label, note)
        if row.failed:
            log.error("%s", row.error)

    render = {"csv": report_to_csv, "json": report_to_json, "markdown": report_to_markdown}[fmt]
    write_output(render(report), args.output)
    if all(row.failed for row in report.rows):
        log.error("no scale produced a fit")
        return EXIT_DATA
    return EXIT_OK


def cmd_gen_synthetic(args, cfg) -> int:
    base = GeneratorSpec()

    def get(key, default):
        value = _resolve(args, cfg, key)
        return default if value is None else value

    try:
        spec = GeneratorSpec(
            n=_as_int(get("n", base.n), "n"),
            periods=_floats(get("periods", "4,16"), "periods"),
            amplitudes=_floats(get("amplitudes", "1,1"), "amplitudes"),
            trend=float(get("trend", base.trend)),
            noise_sd=float(get("noise", base.noise_sd)),
            weights=_floats(get("weights", "2,3"), "weights"),
            intercept=float(get("intercept", base.intercept)),
            start_year=_as_int(get("start_year", base.start_year), "start-year"),
        )
        data = gen_synthetic(spec, _as_int(get("seed", 0), "seed"))
    except (InvalidSpecError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    write_output(dataset_to_csv(data), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavereg",
        description="Multi-time-scale wavelet regression of a hydrological series on climatic predictors.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with option defaults")
    common.add_argument("--output", "-o", help="output path (default: stdout)")
    common.add_argument("--quiet", "-q", action="store_true", help="suppress warnings")

    wave = argparse.ArgumentParser(add_help=False)
    wave.add_argument("--wavelet", help=f"filter bank: {', '.join(SUPPORTED_WAVELETS)} (default sym8)")
    wave.add_argument("--boundary", help=f"boundary rule: {', '.join(BOUNDARY_MODES)} (default periodic)")

    p = sub.add_parser("decompose", parents=[common, wave],
                       help="write S_1..S_J and D_1..D_J of one column as CSV")
    p.add_argument("--input", "-i", help="input CSV (- for stdin)")
    p.add_argument("--column", "-c", help="column to decompose")
    p.add_argument("--level", help="decomposition depth J (default min(5, floor(log2 n)))")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("analyze", parents=[common, wave],
                       help="fit one regression per time scale and report diagnostics")
    p.add_argument("--input", "-i", help="input CSV (- for stdin)")
    p.add_argument("--dependent", "-y", help="dependent (hydrological) column")
    p.add_argument("--independent", "-x", help="comma-separated predictor columns")
    p.add_argument("--levels", help="deepest scale J; 0 fits the raw data only")
    p.add_argument("--format", "-f", help=f"output format: {', '.join(FORMATS)} (default markdown)")
    p.add_argument("--basis", help="extra terms for a nonlinear fit, e.g. 'T^2,T*P'")
    p.add_argument("--count-error-variance", action="store_const", const=True, default=None,
                   help="count the error variance in k (k = m + 2)")
    p.add_argument("--aic-form", help="standard (2k + n ln(RSS/n)) or literal (2k + ln(RSS/n))")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen-synthetic", parents=[common],
                       help="write a synthetic trend + cycles + noise dataset")
    p.add_argument("--n", help="number of years (default 128)")
    p.add_argument("--seed", help="random seed (default 0)")
    p.add_argument("--periods", help="cycle periods in years (default 4,16)")
    p.add_argument("--amplitudes", help="cycle amplitudes (default 1,1)")
    p.add_argument("--trend", help="trend per year (default 0.05)")
    p.add_argument("--noise", help="noise standard deviation (default 0.5)")
    p.add_argument("--weights", help="dependent = intercept + sum(weights * predictors) (default 2,3)")
    p.add_argument("--intercept", help="intercept of the dependent (default 5)")
    p.add_argument("--start-year", help="first year (default 1960)")
    p.set_defaults(func=cmd_gen_synthetic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # bound per call so diagnostics follow whatever sys.stderr is right now
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("wavereg: %(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.ERROR if args.quiet else logging.WARNING)
    log.propagate = False
    try:
        cfg = read_config_file(args.config) if args.config else {}
        return args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wavereg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WaveRegError, FileNotFoundError, ValueError, ArithmeticError) as exc:
        print(f"wavereg: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    finally:
        log.removeHandler(handler)


if __name__ == "__main__":
    sys.exit(main())
