"""Semantic exception hierarchy shared across the package."""


class InterfiltError(Exception):
    """Base class for all errors raised by this package."""


class ZeroConditioningEvent(InterfiltError):
    """Conditioning on an event of probability zero."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"conditioning event b={index} has probability zero")


class PointOutsideDomain(InterfiltError):
    """Point evaluation of a map outside its domain."""

    def __init__(self, x: float):
        self.x = x
        super().__init__(f"point {x!r} lies outside the map domain")


class DegenerateDenominator(InterfiltError):
    """The interference-coefficient denominator vanishes for outcome j."""

    def __init__(self, j: int):
        self.j = j
        super().__init__(
            f"normalized deviation undefined for outcome {j}: "
            "a lifted probability or a marginal is zero"
        )


class NonFiniteLambda(InterfiltError):
    """A normalized deviation is NaN or infinite."""


class NotDoubleStochastic(InterfiltError):
    """Matrix fails the double-stochasticity condition."""


class ParamsOutOfRange(InterfiltError, ValueError):
    """Model-family parameters outside their admissible open intervals."""


class ModelValidationError(InterfiltError, ValueError):
    """An ensemble model violates a structural invariant."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
