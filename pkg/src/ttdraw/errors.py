"""Exception taxonomy shared across the package."""


class TTDrawError(Exception):
    """Base class for all library errors."""


class MalformedGraph(TTDrawError):
    """Input graph has self-loops, multi-edges, or too few vertices."""


class NotATwoTree(TTDrawError):
    """Simplicial elimination got stuck before reaching a single edge."""


class ResourceLimit(TTDrawError):
    """Requested object exceeds the configured size cap."""


class StructureViolation(TTDrawError):
    """Layer/component structure contradicts the 2-tree invariants."""


class DegenerateTriangle(TTDrawError):
    """Collinear points where a proper triangle is required."""


class EmptyRegion(TTDrawError):
    """Half-plane clipping annihilated a convex region."""


class PreconditionViolated(TTDrawError):
    """Caller-supplied geometry does not satisfy an operation's contract."""


class NumericalCollapse(TTDrawError):
    """A placement would fall below what double precision can certify."""

    def __init__(self, msg, *, layer=None, component=None):
        super().__init__(msg)
        self.layer = layer
        self.component = component


class InvalidInitial(TTDrawError):
    """Optimizer seeded with a non-planar drawing."""


class TooLarge(TTDrawError):
    """Instance exceeds the brute-force enumeration caps."""


class ZeroLengthEdge(TTDrawError):
    """A drawn edge has zero length; ratios are undefined."""


class ChainBroken(TTDrawError):
    """Nested triangle chain could not be extended; reports failing level."""

    def __init__(self, msg, level):
        super().__init__(msg)
        self.level = level
