"""Exceptions raised by the engine.

Everything the user can cause derives from :class:`InputError`; surfaces map it to
exit code 2. :class:`InvariantViolation` marks a broken mathematical guarantee.
"""


class TrinomialError(Exception):
    """Base class for all engine errors."""


class InputError(TrinomialError):
    """Malformed or inconsistent input."""


class InvariantViolation(TrinomialError):
    """A checked invariant of the theory failed; this is a bug, not bad input."""


class ConfigError(InputError):
    pass


class SpecSyntaxError(InputError):
    """Syntax error in a spec file, derivation file or expression."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SemanticError(InputError):
    pass


class LengthMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class GroupMismatch(InputError):
    pass


class RankDeficient(InputError):
    pass


class EmptyBox(InputError):
    pass


class CapTooSmall(InputError):
    pass


class BetaSumNonzero(InputError):
    pass


class BetaCaseInvalid(InputError):
    pass


class ExponentConditionViolated(InputError):
    pass


class SupportViolation(InputError):
    pass


class InvalidWitness(InputError):
    pass


class InvalidKernelShape(InputError):
    pass


class ZeroDerivation(InputError):
    pass
