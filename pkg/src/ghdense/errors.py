"""Exception types shared across the package.

Metric-axiom errors carry the indices of the first offending entry so a
caller (or the CLI) can point at the exact cell of the input matrix.
"""

from __future__ import annotations


class GhdenseError(Exception):
    """Base class for all package errors."""


class MetricError(GhdenseError, ValueError):
    """A candidate distance matrix violates a metric axiom."""

    def __init__(self, *indices: int, detail: str = ""):
        self.indices = tuple(int(k) for k in indices)
        self.detail = detail
        super().__init__(str(self))

    def __str__(self) -> str:
        name = type(self).__name__
        idx = ",".join(str(k) for k in self.indices)
        head = f"{name}({idx})" if self.indices else name
        return f"{head}: {self.detail}" if self.detail else head


class NotSquare(MetricError):
    pass


class NegativeEntry(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    pass


class Asymmetric(MetricError):
    pass


class TriangleViolation(MetricError):
    pass


class DuplicatePoints(MetricError):
    pass


class DomainMismatch(GhdenseError, ValueError):
    """Two functions do not live on the same space."""


class SpaceMismatch(GhdenseError, ValueError):
    """A map's endpoints do not match the spaces it is used with."""


class TooLarge(GhdenseError, ValueError):
    """Exhaustive enumeration would exceed the candidate-map guard."""


class ActivationNotMultiplicative(GhdenseError, ValueError):
    """Activation lacks the sigma(t)*sigma(s) = A*sigma(t*s) law."""


class SingularSystem(GhdenseError, RuntimeError):
    """Interpolation system stayed singular after lambda escalation."""


class NetExhausted(GhdenseError, RuntimeError):
    """Net shrinking used all steps without meeting its budget."""


class FitFailed(GhdenseError, RuntimeError):
    """Network fitting failed inside the pipeline."""


class InputFormatError(GhdenseError, ValueError):
    """Malformed input file; carries file name and line number."""

    def __init__(self, path: str, line: int | None, detail: str):
        self.path = path
        self.line = line
        self.detail = detail
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {detail}")
