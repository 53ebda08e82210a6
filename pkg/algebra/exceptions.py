"""
Exceptions raised by the algebra package
"""


class AlgebraException(Exception):
    """Base class for every failure raised by the algebra package"""
    pass


class StructuralException(AlgebraException):
    """Raised when operands live in incompatible rings or have the wrong shape"""
    pass


class DomainException(AlgebraException):
    """Raised when an operation is undefined for its input (zero polynomial, constant resultant)"""
    pass


class NotZeroDimException(AlgebraException):
    """Raised when the extended ideal is not zero-dimensional (or is the unit ideal)"""
    pass


class NotLazardShapeException(AlgebraException):
    """Raised when the reduced lex basis is not a monic triangular set"""
    pass


class NonRadicalException(AlgebraException):
    """Raised when a derivative product or iterated resultant vanishes"""
    pass


class ZeroDivisorException(AlgebraException):
    """Raised when an element is a zero-divisor modulo a triangular set"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ContradictsTheoremException(AlgebraException):
    """Raised when the epsilon substitution annihilates a nonzero Chow form"""
    pass


class GridExhaustedException(AlgebraException):
    """Raised when a grid node has fewer admissible values than required"""
    pass


class SingularGridException(AlgebraException):
    """Raised when interpolation nodes are not pairwise distinct"""
    pass


class DegreeOverflowException(AlgebraException):
    """Raised when a polynomial exceeds the per-variable degree of a grid"""
    pass


class RangeTooNarrowException(AlgebraException):
    """Raised when no prime could be drawn from the requested range"""
    pass


class BadPrimeException(AlgebraException):
    """Raised when reduction modulo p loses a generator, its X-degree or a denominator"""

    def __init__(self, message, reason='BadPrime'):
        super().__init__(message)
        self.reason = reason
