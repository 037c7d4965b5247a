"""Exception hierarchy shared by every module."""


class HellmannError(Exception):
    """Base class for all library errors."""


class PoleAtNonPositiveInteger(HellmannError, ValueError):
    def __init__(self, z):
        self.z = z
        super().__init__(f"Gamma function pole at z = {z}")


class SeriesNonConvergent(HellmannError, ArithmeticError):
    pass


class DegenerateContinuation(HellmannError, ArithmeticError):
    pass


class NonPositiveRadius(HellmannError, ValueError):
    pass


class NonPositiveMass(HellmannError, ValueError):
    pass


class EvanescentChannel(HellmannError):
    """No propagating scattering state: the squared wave number is not positive."""

    def __init__(self, k2):
        self.k2 = k2
        super().__init__(f"evanescent channel: k^2 = {k2!r} <= 0")


class ComplexExponent(HellmannError):
    """The near-origin exponent (gamma or v) came out complex."""

    def __init__(self, exponent):
        self.exponent = exponent
        super().__init__(f"complex near-origin exponent {exponent!r}; "
                         "pass allow_complex_exponent=True to proceed")


class NonConvergentSum(HellmannError, ArithmeticError):
    pass


class StepSizeUnderflow(HellmannError, ArithmeticError):
    pass


class InvalidWindow(HellmannError, ValueError):
    pass


class PoorFit(HellmannError):
    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"asymptotic fit residual {residual:.3e} too large")


class MalformedConfig(HellmannError, ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class PrecisionLossWarning(RuntimeWarning):
    """A power series summed through heavy cancellation."""
