"""Shared exception types.

The CLI maps these onto exit codes: parse problems exit 2, verification
failures exit 1, internal invariant breaches exit 3.
"""


class ParseError(ValueError):
    """Malformed polynomial text or certificate file."""


class RingMismatchError(ValueError):
    """Operands live over incompatible rings."""


class NotZeroDimensionalError(ValueError):
    """Operation requires a zero-dimensional ideal."""


class NotMPrimaryError(ValueError):
    """Operation requires an ideal supported only at the origin.

    Carries a witness monomial (as text) that fails membership when one is
    available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInvariantError(RuntimeError):
    """A self-check that should never fail did fail."""
