"""Exception types shared across the package."""


class PlanarCayleyError(Exception):
    """Base class for all errors raised by this package."""


class InvalidScheme(PlanarCayleyError, ValueError):
    pass


class MalformedVector(PlanarCayleyError, ValueError):
    pass


class DegreeTooSmall(PlanarCayleyError, ValueError):
    pass


class DomainError(PlanarCayleyError, ValueError):
    """An angle formula was evaluated outside its domain."""


class NoSolution(PlanarCayleyError):
    """No edge length makes the corner angles sum to a full turn."""


class NeedsMorePrecision(PlanarCayleyError):
    """A certified comparison was inconclusive at the current precision."""


class ResourceLimit(PlanarCayleyError):
    pass


class IncompleteBall(PlanarCayleyError):
    pass


class EmptyBall(PlanarCayleyError):
    pass


class InconsistentInverses(PlanarCayleyError, ValueError):
    pass


class MissingInverse(PlanarCayleyError, ValueError):
    pass


class OracleFailure(PlanarCayleyError):
    pass
