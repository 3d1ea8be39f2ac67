"""Exception types shared across the package."""


class PropcalcError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(PropcalcError):
    """A graph term violates a structural invariant (cycle, arity, wiring)."""


class ParseError(PropcalcError):
    """The term language parser rejected its input."""


class WeightingError(PropcalcError):
    """An edge weighting violates the conservation or boundary conditions."""


class CompositionError(PropcalcError):
    """Biarity mismatch in a vertical composition."""


class InternalError(PropcalcError):
    """An internal invariant failed; indicates a bug, reported as exit code 2."""
