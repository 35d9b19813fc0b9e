"""Exception types shared across the package."""

from __future__ import annotations


class DataError(Exception):
    """Raised when an input file or corpus is missing, malformed, or empty."""


class ConfigError(Exception):
    """Raised when a run configuration is contradictory or incomplete."""


class PipelineStageError(Exception):
    """Wraps a failure inside one pipeline stage so callers see the stage name.

    The original exception is chained as ``__cause__``.
    """

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"pipeline stage {stage!r} failed: {cause}")
        self.stage = stage
        self.__cause__ = cause
