"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: refusals (violated
preconditions, excluded inputs) exit 2, internal invariant failures exit 1,
and parse/IO problems exit 3.
"""


class HalinStarError(Exception):
    """Base class for all package errors."""


class ParseError(HalinStarError):
    """Malformed instance / lists / coloring document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RefusalError(HalinStarError):
    """Input violates a stated precondition (not a bug)."""


class CycleUnsatError(HalinStarError):
    """A forced attempt on a length-5 cycle found no coloring.

    Length-5 cycles are outside the 3-list guarantee for cycles, so this is
    an expected outcome, never an internal failure.
    """


class InternalInvariantError(HalinStarError):
    """A counting bound the construction relies on was violated.

    Raising this on a valid input with large-enough lists indicates a bug;
    the message names the arithmetic inequality that should have held.
    """


class UnsatisfiableSpecError(HalinStarError):
    """Generator parameters admit no instance."""
