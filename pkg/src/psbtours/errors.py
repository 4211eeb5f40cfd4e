class PSBError(Exception):
    """Base class for all errors raised by psbtours."""


class InvalidN(PSBError, ValueError):
    pass


class InvalidTour(PSBError, ValueError):
    pass


class NotPsb(PSBError, ValueError):
    pass


class MalformedEncoding(PSBError, ValueError):
    pass


class SizeMismatch(PSBError, ValueError):
    pass


class IdenticalTours(PSBError, ValueError):
    pass


class InvalidBlockPair(PSBError, ValueError):
    pass


class WitnessAssemblyFailure(PSBError, RuntimeError):
    """Raised when a constructed witness is not a pair of PSB tours.

    This never happens for inputs that pass the case conditions; seeing it
    means the adjacency code has a bug.
    """


class CapExceeded(PSBError, ValueError):
    pass


class TooLarge(PSBError, ValueError):
    pass


class NonFiniteCost(PSBError, ValueError):
    pass


class UnknownFormat(PSBError, ValueError):
    pass
