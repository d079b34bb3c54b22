"""Exception types raised across the package."""


class MarcinkiewiczError(ValueError):
    """Base class for all domain errors."""


class NotInS(MarcinkiewiczError):
    """The function has no finite decreasing rearrangement."""


class DomainMismatch(MarcinkiewiczError):
    pass


class DomainOverflow(MarcinkiewiczError):
    pass


class OutOfDomain(MarcinkiewiczError):
    pass


class UnsupportedBackend(MarcinkiewiczError):
    pass


class DivergentIntegral(MarcinkiewiczError):
    pass


class HypothesisViolated(MarcinkiewiczError):
    pass


class PremiseViolated(MarcinkiewiczError):
    pass


class NoExactTransport(NotInS):
    """Raised when no measure-preserving map realizes ``g = g* o sigma``.

    On ``(0, inf)`` with a positive tail value ``c`` every value of ``g*`` is
    at least ``c``, so a finite piece of ``g`` below ``c`` cannot be matched.
    """


class ParseError(MarcinkiewiczError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
