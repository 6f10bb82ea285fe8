"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ChoosabilityError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(ChoosabilityError, ValueError):
    pass


class AsymmetricRotation(GraphError):
    pass


class LoopOrMultiEdge(GraphError):
    pass


class EulerViolation(GraphError):
    pass


class BadOuterHint(GraphError):
    pass


class NonPlanar(GraphError):
    pass


class NotTwoConnected(GraphError):
    pass


class NotACycle(GraphError):
    pass


class RootVertex(GraphError):
    pass


class NotOnBoundary(GraphError):
    pass


class ListError(ChoosabilityError, ValueError):
    pass


class NotRooted(ListError):
    pass


class NotPrimaryNeighbour(ListError):
    pass


class PreconditionUnmet(ListError):
    pass


class SeparationViolated(ListError):
    pass


class ListTooShort(ListError):
    pass


class ReservedColor(ListError):
    """A user list contains a negative color (negatives are reserved for apexes)."""


class NotSimple(GraphError):
    pass


class InternalProofViolation(ChoosabilityError, RuntimeError):
    """A sub-assignment the proof guarantees to be valid was not.

    Always an implementation bug. ``trace`` holds the solve transcript up to
    the failure. ``kind`` is ``"validity"`` when a recursive call received an
    assignment failing the validity check, ``"proof"`` otherwise.
    """

    def __init__(self, message: str, trace=None, kind: str = "proof"):
        super().__init__(message)
        self.trace = trace
        self.kind = kind


class CapExceeded(ChoosabilityError):
    def __init__(self, message: str, partial):
        super().__init__(message)
        self.partial = partial


class PaletteTooSmall(ChoosabilityError, ValueError):
    pass


class FormatError(ChoosabilityError, ValueError):
    """Malformed input file; ``where`` names the offending line or field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
