"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DistinctCyclesError(Exception):
    """Base class for all errors raised by the package."""


class ParamError(DistinctCyclesError, ValueError):
    """Construction parameters rejected by validation."""


class EvenT(ParamError):
    pass


class TooSmallT(ParamError):
    """Index ranges are empty, out of order, or overlap for this t."""


class BudgetTooSmall(ParamError):
    pass


class NotPaperForm(ParamError):
    """t is not of the form 1260r + 169 with r >= 1."""


class NotChorded(DistinctCyclesError, ValueError):
    pass


class InvariantBreach(DistinctCyclesError, ValueError):
    pass


class Degenerate(DistinctCyclesError, ValueError):
    """A plain cycle of length 1 or 2 cannot be realised in a simple graph."""


class NotMaterializable(DistinctCyclesError, ValueError):
    pass


class MemoryCapExceeded(DistinctCyclesError):
    """Explicit materialization would exceed the configured vertex cap."""


class SinkFailure(DistinctCyclesError, OSError):
    def __init__(self, message: str, edges_written: int):
        super().__init__(f"{message} (after {edges_written} edges)")
        self.edges_written = edges_written


class OutOfRange(DistinctCyclesError, ValueError):
    pass


class EdgeListFormatError(DistinctCyclesError, ValueError):
    pass
