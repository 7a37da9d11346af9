"""Shared exception types."""


class KeyRangeError(ValueError):
    """A key lies outside [0, k**m) for the structure it was given to."""


class SizeLimitError(ValueError):
    """An operation would exceed its configured desk-scale resource limit."""


class PatternShapeError(ValueError):
    """A query pattern does not fit the target structure (length or arity)."""
