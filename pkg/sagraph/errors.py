"""Exception hierarchy for sagraph."""


class SaGraphError(Exception):
    """Base class for all sagraph errors."""


class InputError(SaGraphError, ValueError):
    """Malformed or out-of-range input."""


class InvalidGraphError(InputError):
    """A graph that fails validation was passed to an operation requiring a valid graph."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid graph: " + "; ".join(violations))


class VertexNotFoundError(InputError, KeyError):
    """Vertex is not part of the graph."""

    def __init__(self, vertex: object):
        self.vertex = vertex
        super().__init__(f"vertex not found: {vertex}")

    def __str__(self) -> str:
        return self.args[0]


class DegreeZeroError(InputError):
    """An isolated vertex where every vertex needs a neighbor."""


class QBelowOneError(InputError):
    """A rescaling function q takes a value below one."""


class DivergentTailError(InputError):
    """A power tail sum with exponent p <= 1 was requested."""


class FamilyParameterError(InputError):
    """Family parameters outside their admissible range."""


class FamilyShapeError(InputError):
    """Graph does not have the shape a family-specific constructor expects."""


class CoveringError(InputError):
    """Covering does not satisfy the good-covering conditions."""


class TruncationTooSmallError(InputError):
    """A truncation does not contain the region a check needs."""


class ParameterOrderError(InputError):
    """Cutoff parameters are not correctly ordered."""


class GoleniaConditionError(InputError):
    """lambda + Deg(x) + W(x) vanishes at a vertex on the checked path."""

    def __init__(self, vertex: object):
        self.vertex = vertex
        super().__init__(f"lambda + Deg + W vanishes at vertex {vertex}")


class NumericalError(SaGraphError, RuntimeError):
    """A numerical routine failed."""


class SpectralError(NumericalError):
    """Eigensolver did not converge."""

    def __init__(self, message: str, iterations: int | None = None):
        self.iterations = iterations
        super().__init__(message if iterations is None else f"{message} (iterations: {iterations})")
