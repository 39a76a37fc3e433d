"""Exception hierarchy shared across the package."""

from __future__ import annotations


class OpalgError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(OpalgError):
    """Malformed or inconsistent input.

    Raised for bad tensors, dimension mismatches, non-subgroups,
    maps that fail an automorphism check, unreadable input files, and
    similar caller errors. Mapped to exit code 2 by the CLI.
    """


class FieldGuardError(OpalgError):
    """Positive characteristic too small for a trace-form radical.

    The radical of an operator algebra acting on an n-dimensional module
    is computed from the trace form, which is only valid in
    characteristic 0 or p > n. Mapped to exit code 3 by the CLI.
    """


class TheoremContradictionError(OpalgError):
    """Internal certificate: a structural property that is guaranteed by
    the theory failed to hold at runtime.

    This always indicates a bug (or corrupted input that slipped past
    validation), never a legitimate user error. Carries a ``certificate``
    payload describing the failed check. Mapped to exit code 4 by the CLI.
    """

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = certificate or {}
