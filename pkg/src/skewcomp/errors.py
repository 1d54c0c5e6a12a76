"""Exception hierarchy shared by every module of the package."""


class SkewcompError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class RingSpecError(SkewcompError):
    pass


class ElementParseError(SkewcompError):
    pass


class RingMismatchError(SkewcompError):
    pass


class DimensionError(SkewcompError):
    pass


class NotAlternatingError(SkewcompError):
    def __init__(self, message, position):
        super().__init__(message)
        self.position = position


class NotUnimodularError(SkewcompError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class PfaffianError(SkewcompError):
    pass


class InfiniteRingError(SkewcompError):
    pass


class SearchBoundError(SkewcompError):
    pass


class ConstructionError(SkewcompError):
    """A construction produced an output violating its postcondition."""


class FormatError(SkewcompError):
    """A JSON input file does not match the expected layout."""
