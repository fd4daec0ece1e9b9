"""Exception hierarchy.

Every error raised by the library derives from :class:`QUnityError`, which
itself is a :class:`ValueError`: all failures are bad or degenerate inputs.
"""


class QUnityError(ValueError):
    pass


class CoPrimalityError(QUnityError):
    pass


class RangeError(QUnityError):
    pass


class DomainError(QUnityError):
    pass


class ParityError(QUnityError):
    pass


class ParameterConstraintError(QUnityError):
    """A parameter product sits on (or within tolerance of) a forbidden value.

    ``product`` names the offending combination, e.g. ``"ab"`` or ``"g"``,
    and ``k`` the power of the base it collides with (``None`` when the
    violation is not of the ``v = q**k`` kind).
    """

    def __init__(self, message, product=None, k=None):
        super().__init__(message)
        self.product = product
        self.k = k


class SingularParamError(QUnityError):
    pass


class SingularDenominatorError(QUnityError):
    pass


class DegenerateZeroError(QUnityError):
    pass


class NonHermitianError(QUnityError):
    pass


class ConstraintError(QUnityError):
    pass
