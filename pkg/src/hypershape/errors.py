"""Exception hierarchy shared by all modules."""


class HypershapeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HypershapeError):
    """Malformed expression text.  ``offset`` is the byte offset of the failure."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UnknownIdentifier(ParseError):
    pass


class WrongModeVariable(ParseError):
    pass


class NonConstantExponent(ParseError):
    pass


class DomainError(HypershapeError, ValueError):
    """A function was evaluated outside its domain (log of <= 0, 1/0, ...)."""


class OutsideDomainBox(HypershapeError, ValueError):
    pass


class NotRegular(HypershapeError):
    """The frame {phi_u, phi_v, phi_w} is (numerically) linearly dependent."""


class FrameNotOrthogonal(HypershapeError):
    pass


class ZeroGradient(HypershapeError):
    pass


class NoConvergence(HypershapeError):
    pass


class DependentTriple(HypershapeError):
    pass


class ZeroPrincipalCurvature(HypershapeError):
    pass


class SpecError(HypershapeError):
    """Invalid surface specification file."""
