"""Exception hierarchy.  Every error the library raises derives from
:class:`TomolabError`, which the CLI maps to exit code 2."""


class TomolabError(Exception):
    """Base class for all library errors."""


class InvalidInputError(TomolabError, ValueError):
    pass


class InvalidStateError(InvalidInputError):
    pass


class NonphysicalStateError(InvalidStateError):
    pass


class NonphysicalMatrixError(NonphysicalStateError):
    pass


class InvalidParameterError(InvalidInputError):
    pass


class WrongArityError(InvalidInputError):
    pass


class DegenerateFrameError(InvalidInputError):
    pass


class UnsupportedSourceError(InvalidInputError):
    pass


class TruncationError(TomolabError):
    """A grid is too narrow or too coarse for the requested accuracy."""
