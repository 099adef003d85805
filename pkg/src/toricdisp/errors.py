"""Exception hierarchy."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToricError, ValueError):
    """Malformed user input (points, scenario files, parameters)."""


class EmptyInterior(InputError):
    pass


class NotSimple(InputError):
    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class NonIntegralNormal(InputError):
    pass


class SemipositivityViolation(NotSimple):
    """A redundant constraint that cannot be read as a spurious term.

    Its hyperplane meets a smooth face, so more than ``n`` normals are active there.
    """


class NotCompact(InputError):
    pass


class ExteriorPoint(InputError):
    pass


class UnsupportedDimension(InputError):
    pass


class Inadmissible(ToricError):
    """A direction cannot carry a potential term (unbounded below)."""


class OrbifoldFacet(ToricError):
    """The facet has an imprimitive normal, so probes through it are not allowed."""


class EnumerationGuard(ToricError):
    pass


class SynthesisFailed(ToricError):
    """The valuation criterion accepted a vector that could not be realised.

    This indicates a discrepancy between the combinatorial test and the
    constructive witness and must never be swallowed.
    """


class ConsistencyViolation(ToricError):
    """A point received both a non-displaceability and a probe certificate,
    or point and region computations disagree."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotEmbedded(ToricError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
