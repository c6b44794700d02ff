"""
Exception hierarchy for the non-monotone line-search library.
"""


class NmlsError(Exception):
    """Base class for all library errors."""


class InvalidParameter(NmlsError, ValueError):
    """A parameter is outside its admissible range."""


class ConfigError(NmlsError, ValueError):
    """A configuration file or section is malformed."""


class BudgetExhausted(NmlsError):
    """The evaluation budget does not allow another evaluation."""

    def __init__(self, used: int, budget: int):
        super().__init__(f"Evaluation budget exhausted ({used}/{budget})")
        self.used = used
        self.budget = budget


class NonFiniteValue(NmlsError):
    """An objective value or gradient component is NaN or infinite."""

    def __init__(self, what: str, point=None):
        super().__init__(f"Non-finite {what}")
        self.what = what
        self.point = point


class DegenerateSlope(NmlsError, ValueError):
    """The Armijo slope term is not strictly negative."""


class ZeroGradient(NmlsError, ValueError):
    """A search direction was requested at a stationary point."""


class LineSearchFailure(NmlsError):
    """Backtracking did not find an acceptable step."""

    def __init__(self, iteration: int, backtracks: int):
        super().__init__(
            f"No acceptable step at iteration {iteration} after {backtracks} backtracks"
        )
        self.iteration = iteration
        self.backtracks = backtracks


class UnknownFunction(NmlsError, KeyError):
    """A benchmark function name is not registered."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"Unknown function: {self.name!r}"


class SchemaMismatch(NmlsError):
    """A results file has an unexpected header or line layout."""


class MissingProblem(NmlsError):
    """A problem lacks a record for one of the compared methods."""


class ThetaOne(NmlsError, ValueError):
    """The iteration-count bound is not available for theta = 1."""


class MissingConstants(NmlsError, ValueError):
    """A verification harness needs a Lipschitz constant and a lower bound."""


class InvariantViolation(NmlsError, AssertionError):
    """A quantity violated a bound that holds by construction."""
