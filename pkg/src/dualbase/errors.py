"""Exceptions shared across modules."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a hard size guard (enumeration
    blowup, oversized allocation).  Maps to CLI exit code 4."""
