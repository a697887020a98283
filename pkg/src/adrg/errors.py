"""Exception hierarchy.

Everything raised on purpose by this package derives from ``AdrgError`` so
batch callers can tell a rejected graph from a genuine bug.
"""


class AdrgError(Exception):
    """Base class for all expected failures."""


class Graph6Error(AdrgError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ValidationError(AdrgError):
    """The graph violates a standing assumption (connected, regular, small enough)."""


class Disconnected(ValidationError):
    pass


class Irregular(ValidationError):
    def __init__(self, u: int, v: int, deg_u: int, deg_v: int):
        super().__init__(f"vertex {u} has degree {deg_u} but vertex {v} has degree {deg_v}")
        self.u, self.v = u, v
        self.deg_u, self.deg_v = deg_u, deg_v


class TooSmall(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class NotSimple(ValidationError):
    pass


class SpectralError(AdrgError):
    pass


class ClusterAmbiguity(SpectralError):
    def __init__(self, gap: float, index: int, lo: float, hi: float):
        super().__init__(
            f"eigenvalue gap {gap:.3e} after sorted index {index} lies in the "
            f"ambiguity band ({lo:.1e}, {hi:.1e}); refusing to guess the grouping"
        )
        self.gap, self.index = gap, index


class IntegerOverflow(SpectralError):
    pass


class NormalizationDegenerate(SpectralError):
    pass


class ZeroDenominator(SpectralError):
    pass


class DegreeOverflow(AdrgError, ValueError):
    pass


class NotBipartite(AdrgError):
    pass


class EmptyDistanceClass(AdrgError, ValueError):
    def __init__(self, h: int, diameter: int):
        super().__init__(f"no pairs at distance {h} (diameter is {diameter})")
        self.h, self.diameter = h, diameter


class InvalidRange(AdrgError, ValueError):
    pass


class FilterError(AdrgError, ValueError):
    pass
