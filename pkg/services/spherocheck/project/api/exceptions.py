# services/spherocheck/project/api/exceptions.py


class SpherocheckError(Exception):
    """Base class of every error raised by the spherocheck service."""


class InvalidRequest(SpherocheckError):
    pass


class InvalidType(SpherocheckError):
    pass


class InvalidWeight(SpherocheckError):
    pass


class DimensionCapExceeded(SpherocheckError):
    def __init__(self, dim, cap):
        super().__init__('dimension {} exceeds the configured cap {}'.format(dim, cap))
        self.dim = dim
        self.cap = cap


class BadPrime(SpherocheckError):
    """p divides a denominator; retry with another prime."""

    def __init__(self, p):
        super().__init__('prime {} divides a denominator'.format(p))
        self.p = p


class NotAModuleCharacter(SpherocheckError):
    pass


class PreconditionError(SpherocheckError):
    pass


class SpecSyntaxError(SpherocheckError):
    def __init__(self, message, position):
        super().__init__('col {}: {}'.format(position, message))
        self.position = position


class SpecArityError(SpherocheckError):
    pass
