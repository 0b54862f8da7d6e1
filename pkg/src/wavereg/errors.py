"""Exception hierarchy for wavereg.

Every error raised deliberately by the library derives from
:class:`WaveRegError`, so callers can catch the whole family at once.
Errors that describe bad input data also derive from :class:`ValueError`.
"""


class WaveRegError(Exception):
    """Base class for all wavereg errors."""


# -- ingest -----------------------------------------------------------------

class IngestError(WaveRegError, ValueError):
    pass


class MissingColumnError(IngestError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"column {name!r} not found in header")


class UnparseableCellError(IngestError):
    def __init__(self, row, column, text):
        self.row = row
        self.column = column
        self.text = text
        super().__init__(
            f"row {row}, column {column!r}: cannot parse {text!r} as a finite number"
        )


class NonContiguousYearsError(IngestError):
    def __init__(self, row, year, expected):
        self.row = row
        self.year = year
        self.expected = expected
        super().__init__(
            f"row {row}: year {year} breaks the unit-step index (expected {expected})"
        )


class EmptySelectionError(IngestError):
    def __init__(self, path=None):
        where = f" in {path}" if path else ""
        super().__init__(f"no data rows{where}")


class IndexMismatchError(IngestError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"series {name!r} does not share the common index axis")


class DuplicateNameError(IngestError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"series name {name!r} used more than once")


# -- wavelet ----------------------------------------------------------------

class UnknownWaveletError(WaveRegError, ValueError):
    def __init__(self, name, known=()):
        self.name = name
        msg = f"unknown wavelet {name!r}"
        if known:
            msg += f" (supported: {', '.join(known)})"
        super().__init__(msg)


class LevelTooDeepError(WaveRegError, ValueError):
    def __init__(self, level, j_max):
        self.level = level
        self.j_max = j_max
        super().__init__(
            f"decomposition level {level} exceeds j_max={j_max} = floor(log2 n)"
        )


class EmptySignalError(WaveRegError, ValueError):
    def __init__(self):
        super().__init__("signal is empty")


class BankMismatchError(WaveRegError, ValueError):
    pass


class BoundaryContaminationWarning(UserWarning):
    """Decomposition deeper than the boundary-clean level."""


# -- regression -------------------------------------------------------------

class RankDeficientError(WaveRegError, ValueError):
    def __init__(self, columns):
        self.columns = tuple(columns)
        super().__init__(
            "design matrix is rank deficient; collinear columns: "
            + ", ".join(self.columns)
        )


class TooFewSamplesError(WaveRegError, ValueError):
    def __init__(self, n, m):
        self.n = n
        self.m = m
        super().__init__(
            f"n={n} samples cannot fit m={m} predictors plus intercept "
            f"with a residual degree of freedom (need n >= m + 2)"
        )


class DegenerateVarianceError(WaveRegError, ValueError):
    def __init__(self):
        super().__init__("dependent series is constant (total sum of squares is zero)")


class SchemaMismatchError(WaveRegError, ValueError):
    pass


class UnknownColumnError(WaveRegError, ValueError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown design column {name!r}")


class DuplicateDerivedColumnError(WaveRegError, ValueError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"derived column {name!r} already exists")


# -- stats ------------------------------------------------------------------

class LengthMismatchError(WaveRegError, ValueError):
    pass


class DegenerateFitError(WaveRegError, ValueError):
    def __init__(self):
        super().__init__("exact fit (R^2 = 1): F statistic is unbounded")


class ZeroRSSError(WaveRegError, ValueError):
    def __init__(self):
        super().__init__("residual sum of squares is zero: AIC is undefined (exact fit)")


class InsufficientSamplesError(WaveRegError, ValueError):
    def __init__(self, n, k):
        self.n = n
        self.k = k
        super().__init__(f"AICc needs n > k + 1 (got n={n}, k={k})")


class NonConvergenceError(WaveRegError, ArithmeticError):
    pass


class InternalConsistencyError(WaveRegError, ArithmeticError):
    pass


# -- pipeline ---------------------------------------------------------------

class InvalidSpecError(WaveRegError, ValueError):
    pass


class AllRowsFailedError(WaveRegError):
    def __init__(self):
        super().__init__("every scale failed; nothing to rank")


class ScaleError(WaveRegError):
    """A failure tagged with the decomposition scale where it happened."""

    def __init__(self, scale, cause):
        self.scale = scale
        self.cause = cause
        super().__init__(f"scale s{scale}: {cause}")
