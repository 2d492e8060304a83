"""Exception taxonomy shared across the package.

Every failure mode maps to one of these classes so the CLI can translate
them into stable exit codes.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WorkbenchError):
    """An operation was applied to an object outside its domain
    (e.g. a subgroup operation on a group variant that has no subgroup
    representation)."""


class RangeError(WorkbenchError):
    """An element or index lies outside the representable range of the
    object it was handed to (e.g. a residue vector touching coordinates
    beyond a truncated support)."""


class PreconditionError(WorkbenchError):
    """A documented precondition was violated (e.g. a sequence whose
    word lengths fail to increase strictly)."""


class ResourceCapError(WorkbenchError):
    """An enumeration would exceed a configured cap (ball size, pattern
    count, window width).  Raised instead of silently truncating."""


class UsageError(WorkbenchError):
    """Malformed CLI invocation or config file."""
