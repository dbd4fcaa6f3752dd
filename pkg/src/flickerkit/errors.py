"""Exception types shared across the package.

The CLI maps these onto exit codes: InputError (and subclasses) exit 1,
FormatError exits 2, anything else escaping a command exits 3.
"""


class FlickerError(Exception):
    """Base class for every error this package raises on purpose."""


class InputError(FlickerError):
    """Bad caller input: mismatched dimensions, out-of-range values, missing files."""


class DegenerateInputError(InputError):
    """Input whose statistics collapse: zero column sum, zero spread."""


class SingularityError(InputError):
    """Division by a quantity that must be strictly positive."""


class FormatError(FlickerError):
    """Malformed file content; the message names the offending byte or line."""
