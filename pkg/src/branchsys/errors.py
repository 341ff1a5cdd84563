"""Exception types shared across the engine."""

from __future__ import annotations


class BranchSystemError(Exception):
    """Base class for all engine errors."""


# -- scalar arithmetic ------------------------------------------------------

class MixedField(BranchSystemError):
    """Arithmetic attempted between values of different quadratic fields."""


class NonPositiveRadicand(BranchSystemError):
    """Square root requested of a non-positive rational."""


# -- graphs ------------------------------------------------------------------

class GraphError(BranchSystemError):
    pass


class DanglingEdge(GraphError):
    """An edge references a vertex that is not declared."""


class DuplicateId(GraphError):
    """A vertex or edge id occurs more than once."""


class UnknownVertex(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class NotAPath(GraphError):
    """Edge sequence whose consecutive range/source vertices do not match."""


class NonUniqueSimpleCycle(GraphError):
    """Two distinct simple exitless cycles share a base point (internal
    consistency check; cannot occur for exitless cycles)."""


class NotABasePoint(GraphError):
    """Vertex is not the base point of an exitless simple cycle."""


class GraphMismatch(BranchSystemError):
    """Terms over different graphs combined."""


class SinkOrInfiniteEmitter(BranchSystemError):
    """Vertex relation expansion requested at a vertex that emits no edges."""


# -- branching systems -------------------------------------------------------

class LayoutError(BranchSystemError):
    pass


class EmptyRangeDomain(LayoutError):
    """D_{r(e)} is empty, so no bijection onto R_e exists."""


class ThetaOutOfRange(BranchSystemError):
    """Rotation angle outside [0, 1)."""


# -- faithfulness ------------------------------------------------------------

class RationalTheta(BranchSystemError):
    """Separating set requested where the cycle angle is rational."""


class ConditionLHolds(BranchSystemError):
    """Converse uniqueness construction requested on a Condition (L) graph."""


# -- parsing / io -------------------------------------------------------------

class TermSyntaxError(BranchSystemError):
    """Malformed term literal."""


class InputError(BranchSystemError):
    """Malformed graph/config/system file."""
