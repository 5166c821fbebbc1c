"""Exception types shared across the package."""

from __future__ import annotations


class DCenterError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DCenterError):
    """Input data failed a structural validation check.

    The optional ``witness`` records the first offending index tuple.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GroupValidationError(ValidationError):
    pass


class CocycleValidationError(ValidationError):
    pass


class CharacterTableError(ValidationError):
    pass


class ParseError(DCenterError):
    """Malformed textual input; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PreconditionError(DCenterError):
    """An operation was called outside its documented domain."""


class UnsupportedCentralizerError(DCenterError):
    """A centralizer needs character data that is neither built in nor supplied."""


class CoboundaryUnsolvableError(DCenterError):
    """No 1-cochain trivializes the given 2-cocycle at the extended modulus."""


class InternalConsistencyError(DCenterError):
    """A derived quantity violated an identity the formulas guarantee.

    This always indicates a bug in the implementation, never bad input.
    """
