"""
Engine exceptions

Each error carries the process exit code the CLI maps it to.
"""
from typing import Optional, Sequence


class PgxError(Exception):
    """Base error for the group engine"""

    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InputError(PgxError, ValueError):
    """Bad arguments: non-prime modulus, mixed fields, mixed variants, malformed witnesses"""


class PreconditionError(InputError):
    """An operation was called outside its precondition"""


class DescriptorSyntaxError(InputError):
    """Group descriptor could not be parsed"""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class DomainError(PgxError, ArithmeticError):
    """Arithmetic outside the domain, e.g. inverting zero"""


class CapacityError(PgxError):
    """An enumeration or construction would exceed the configured cap"""

    def __init__(self, message: str, limit: int, partial_count: Optional[int] = None):
        detail = f"{message} (limit {limit}"
        if partial_count is not None:
            detail += f", reached {partial_count}"
        super().__init__(detail + ")")
        self.limit = limit
        self.partial_count = partial_count


class ConstructionError(PgxError):
    """A group construction violated a required identity"""

    def __init__(self, identity: str, witnesses: Sequence[object] = ()):
        shown = ", ".join(repr(w) for w in witnesses)
        super().__init__(f"action violates {identity}" + (f" at {shown}" if shown else ""))
        self.identity = identity
        self.witnesses = tuple(witnesses)
