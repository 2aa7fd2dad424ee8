"""Exception types shared across the package."""


class AmpsumError(Exception):
    """Base class for all package errors."""


class NonInvertible(AmpsumError, ValueError):
    pass


class EvenModulus(AmpsumError, ValueError):
    pass


class Overflow(AmpsumError, ValueError):
    pass


class BadTwist(AmpsumError, ValueError):
    pass


class NotCoprime(AmpsumError, ValueError):
    pass


class DNotDividesN(AmpsumError, ValueError):
    pass


class MismatchedClasses(AmpsumError, ValueError):
    pass


class TruncationMismatch(AmpsumError, RuntimeError):
    pass


class Divergent(AmpsumError, ValueError):
    pass


class PoleAt1(AmpsumError, ValueError):
    pass


class NotPrimitive(AmpsumError, ValueError):
    pass


class PoleHit(AmpsumError, ValueError):
    pass


class ContourOutOfStrip(AmpsumError, ValueError):
    pass


class RegimeGap(AmpsumError, ArithmeticError):
    pass


class BadSpectralTag(AmpsumError, ValueError):
    pass


class NontrivialCharacter(AmpsumError, ValueError):
    pass


class ConfigError(AmpsumError, ValueError):
    pass


class CacheCorrupt(AmpsumError, IOError):
    pass


class Degenerate(AmpsumError, ValueError):
    pass


class QuadratureFailure(AmpsumError, ArithmeticError):
    pass
