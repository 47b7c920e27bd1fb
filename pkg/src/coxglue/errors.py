"""Exception hierarchy shared by all coxglue modules."""


class CoxglueError(Exception):
    """Base class for all domain errors."""


class GeneratorIndexError(CoxglueError):
    """A word refers to a generator index outside the system."""


class CapExceeded(CoxglueError):
    """Ball enumeration grew past the configured element cap."""


class UnknownStratum(CoxglueError):
    """A stratum id does not exist in the stratified complex."""


class NotWFinite(CoxglueError):
    """Some stratum carries a non-spherical mirror set."""


class NotNice(CoxglueError):
    """A codimension-2 stratum does not lie in exactly two codimension-1 strata."""


class Truncated(CoxglueError):
    """Operation requires a complete (untruncated) complex."""


class NotAnAction(CoxglueError):
    """The supplied permutation assignment violates a Coxeter relation."""


class InsufficientRadius(CoxglueError):
    """The truncated complex does not cover a fundamental domain of the kernel."""


class NotSpanningTree(CoxglueError):
    """The supplied edge set is not a spanning tree of the scwol 1-skeleton."""


class NotEnumerable(CoxglueError):
    """A local development would require enumerating an infinite coset space."""


class EdgeTooShort(CoxglueError):
    """A piecewise spherical edge length is below pi/2."""


class InvalidTriangle(CoxglueError):
    """Spherical triangle data violates the spherical triangle constraints."""


class NotCentral(CoxglueError):
    """The chosen twisting element is not central in its edge group."""


class InvalidBlock(CoxglueError):
    """A block does not match the chamber graph it claims to come from."""


class SchemaError(CoxglueError):
    """Project file fails schema validation; carries a JSON-pointer path."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer


class DanglingReference(CoxglueError):
    """A cross-reference in a project file does not resolve."""
