"""Exception hierarchy shared across the package."""


class QuadrimmError(Exception):
    """Base class for all package errors."""


class StructureError(QuadrimmError):
    """Malformed combinatorial data (non-bijective permutation, bad pairing...)."""


class NotACrossingError(QuadrimmError):
    """Straight-through continuation requested at a vertex of degree != 4."""


class UnsupportedDegreeError(QuadrimmError):
    """An operation restricted to degree-3/4 maps met another degree."""


class DegenerateSmoothingError(QuadrimmError):
    """Smoothing a degree-2 vertex whose two darts form a loop."""


class DisconnectedError(QuadrimmError):
    """Operation requires a connected map."""

    def __init__(self, message, witness_vertex=None):
        super().__init__(message)
        self.witness_vertex = witness_vertex


class PreconditionError(QuadrimmError):
    """Caller violated an operation precondition."""


class BudgetError(QuadrimmError):
    """Requested bounds exceed the configured search budget."""

    def __init__(self, message, suggestion=None):
        super().__init__(message)
        self.suggestion = suggestion
