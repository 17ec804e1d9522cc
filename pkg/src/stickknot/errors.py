"""Exception hierarchy.

The CLI maps these onto exit codes, so every failure the library can
raise on bad data derives from :class:`StickKnotError`.
"""


class StickKnotError(Exception):
    """Base class for all library errors."""


class InvalidInputError(StickKnotError, ValueError):
    """Geometrically invalid input (degenerate segment, duplicate point...)."""


class DomainError(StickKnotError, ValueError):
    """Argument outside the domain of an operation."""


class ValidationError(InvalidInputError):
    """A polygon violates one clause of the stick-knot admissibility rules.

    ``clause`` is one of ``"too-few"``, ``"duplicate"``, ``"collinear"``,
    ``"self-intersection"``.
    """

    def __init__(self, clause, message):
        super().__init__(message)
        self.clause = clause


class AngleUndefinedError(DomainError):
    """The tangent-angle bound needs the perturbation to be shorter than the tangent."""


class CertificateDegenerateError(StickKnotError):
    """The delta pipeline collapsed (a clipped arc vanished)."""


class SolverOverflowError(StickKnotError):
    """No iteration count up to the solver cap satisfies the bound."""


class ProjectionError(StickKnotError):
    """No generic projection direction was found."""


class GenerationError(StickKnotError):
    """Random polygon generation exhausted its rejection budget."""


class KnotFileError(StickKnotError):
    """Malformed knot file."""
