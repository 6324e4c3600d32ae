"""Exceptions shared across the library."""


class SexticsError(Exception):
    """Base class for all library errors."""


class FieldMismatch(SexticsError):
    """Operands belong to different number fields."""


class FieldDegreeError(SexticsError):
    """A composite field extension exceeds the supported degree cap."""


class DivisionNotExact(SexticsError):
    """Polynomial division left a nonzero remainder."""


class DegeneratePencil(SexticsError):
    """A bracketed exact division failed while building involution data."""


class Indeterminate(SexticsError):
    """Point lies in the indeterminacy locus of the birational map."""


class IdentityFailure(SexticsError):
    """A structural polynomial identity failed; indicates a transcription bug."""


class ForbiddenSection(SexticsError):
    """Section coincides with a stored section or passes through a singular point."""


class SectionOnSingularPoint(ForbiddenSection):
    """Section passes through a singular point of the ramification curve."""


class NonReducedCurve(SexticsError):
    """Curve polynomial is not squarefree."""


class NonIsolated(SexticsError):
    """Singular point is not isolated (partials share a factor)."""


class NotSimple(SexticsError):
    """Singularity is not of A-D-E type."""


class NotAType(SexticsError):
    """Lattice routine requires A-type summands only."""


class NotDefinite(SexticsError):
    """Gram matrix is not positive definite."""


class DegenerateConfiguration(SexticsError):
    """Root configuration is degenerate (vanishing discriminant)."""


class UnsupportedDegree(SexticsError):
    """Operation defined only for a small range of degrees."""


class MultipleCriticalValues(SexticsError):
    """More than one critical value survives; input is not almost-maximal."""


class NotDefined(SexticsError):
    """Requested invariant does not exist for this input."""


class ExcludedParameters(SexticsError):
    """Parameter values hit an excluded locus of the family."""


class UnknownTarget(SexticsError):
    """No constraint recipe stored for this (family, target) pair."""


class PositiveDimensional(SexticsError):
    """Eliminant vanished identically; solution set is not finite."""


class VerificationFailed(SexticsError):
    """Synthesized curve failed verification; report attached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
