class SpectraError(Exception):
    """Base class for every error raised by the spectra library."""


class OddExtensionDegree(SpectraError, ValueError):
    def __init__(self, e):
        super().__init__(f"extension degree e={e} must be even and at least 2")
        self.e = e


class FieldTooLarge(SpectraError, ValueError):
    pass


class DivisionByZero(SpectraError, ZeroDivisionError):
    pass


class ZeroArgument(SpectraError, ValueError):
    pass


class ZeroAlpha(SpectraError, ValueError):
    def __init__(self):
        super().__init__("alpha must be a nonzero element of GF(2^e)")


class NotInBaseField(SpectraError, ValueError):
    pass


class NotInMu(SpectraError, ValueError):
    pass


class NotAPermutation(SpectraError):
    """sigma collided on two inputs; this means an arithmetic bug."""


class AlphaNotCube(SpectraError, ValueError):
    pass


class InvariantViolation(SpectraError):
    pass


class NotTraceOne(SpectraError, ValueError):
    pass
