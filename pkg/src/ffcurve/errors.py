"""Exception hierarchy shared by all ffcurve modules."""


class FFCurveError(Exception):
    """Base class for all ffcurve errors."""


class NonPrimeError(FFCurveError):
    """The requested characteristic is not a prime number."""


class ReducibleModulusError(FFCurveError):
    """A supplied extension-field modulus factors over the prime field."""


class FieldMismatchError(FFCurveError):
    """Operands belong to different fields."""


class DivisionByZeroError(FFCurveError, ZeroDivisionError):
    """Division by the zero element."""


class NoEmbeddingError(FFCurveError):
    """No field embedding exists (degree does not divide)."""


class NotSeparatingError(FFCurveError):
    """x is not a separating variable (the y-partial vanishes identically)."""


class ReducibleCurveError(FFCurveError):
    """A zero divisor was exposed; the defining polynomial is reducible."""


class DegenerateMorphismError(FFCurveError):
    """Fewer independent derivative rows than required; the morphism is
    degenerate or its declared series degree is wrong."""


class CoprimalityError(FFCurveError):
    """The Frobenius exponent pair (u, m) is not coprime or not ordered."""


class PrecisionExhaustedError(FFCurveError):
    """A series computation could not be certified at the working precision."""


class KappaMismatchError(FFCurveError):
    """A supplied order sequence does not match the expected shape."""


class NotOnCurveError(FFCurveError):
    """The given point does not satisfy the curve equation."""


class SingularPointError(FFCurveError):
    """Branch expansion was requested at a singular point of the plane model."""


class UndeclaredSingularityError(FFCurveError):
    """A singular rational point was found without catalog branch metadata."""


class EmptyClassError(FFCurveError):
    """A rationality class is empty, so its minimum valuation is undefined."""

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"no rational points at extension level {level}")


class InexactDivisionError(FFCurveError):
    """Bivariate division left a nonzero remainder."""


class BadParamsError(FFCurveError):
    """Family parameters violate the family's constraints."""


class NotSmoothCertifiedError(FFCurveError):
    """The smooth-plane genus formula was invoked without a smoothness
    certificate."""


class ReportedViolation(FFCurveError):
    """A theorem-mandated relation failed.  This always signals an
    implementation bug, never a mathematical outcome."""
