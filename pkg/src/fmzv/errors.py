"""Exception types shared across the package."""


class InvalidParameters(ValueError):
    """Arguments violate an operation's preconditions."""


class TruncationMismatch(ValueError):
    """Truncated series of different lengths were combined."""


class WeightNotReducible(ValueError):
    """A rational weight has no image mod p (p divides its denominator)."""


class PoleError(ValueError):
    """An evaluation argument hits a pole of the summand (it lies in {1, ..., p-1})."""


class DegenerateTuple(RuntimeError):
    """Resampling failed to produce a tuple with all required denominators nonzero."""
