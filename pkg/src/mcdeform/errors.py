"""Exception taxonomy.

InputError covers malformed input files (bad JSON shape, malformed
rationals); ValidationError covers semantically invalid but well-formed
data.  The CLI maps them to exit codes 2 and 1 respectively.
"""


class InputError(Exception):
    pass


class ValidationError(Exception):
    pass


class ModeError(ValidationError):
    """Ring-mode mismatch (e.g. negative exponents in the polynomial ring)."""


class FiltrationError(ValidationError):
    """An element sits too low in the filtration for a series to terminate."""
