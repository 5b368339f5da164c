"""Exception and warning types shared across the package."""


class NumericalError(ArithmeticError):
    """A numerical routine produced a result outside its analytic guarantees."""


class NotPositiveDefiniteError(NumericalError):
    """The potential matrix (or one of its blocks) is not positive definite."""


class SchmidtClampWarning(RuntimeWarning):
    """A Schmidt coefficient marginally above 1 was clamped below 1."""
