"""Exception types shared across the package."""


class DoesNotDivide(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class NotInvariant(Exception):
    """A hypersurface is not invariant under a vector field.

    ``which`` names the failing defining polynomial (``"f"``, ``"g"`` or the
    printed polynomial) when known.
    """

    def __init__(self, message: str, which: str | None = None):
        super().__init__(message)
        self.which = which


class ZeroPolynomialError(ValueError):
    """An operation needs a nonzero polynomial but got the zero polynomial."""


class ExtacticIdenticallyZero(ValueError):
    """The extactic polynomial vanishes identically, so multiplicities are undefined."""


class StepTooLarge(RuntimeError):
    """Numerical constraint drift exceeded the diagnostic threshold."""

    def __init__(self, message: str, drift: float):
        super().__init__(message)
        self.drift = drift


class ParseError(ValueError):
    """Malformed polynomial expression.

    ``offset`` is the byte offset into the UTF-8 encoded input and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"{message} at byte {offset}" + (f" (expected one of: {exp})" if exp else ""))
