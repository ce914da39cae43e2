"""Exception types shared across the package.

The CLI maps each class onto a fixed exit code, see ``nonoverlap.cli``.
"""


class ParameterError(ValueError):
    """Invalid arguments: wrong lengths, alphabets or out-of-range parameters."""


class RecipeInfeasible(ParameterError):
    """A parameter recipe produced values outside the valid range."""


class CapacityError(RuntimeError):
    """The request is too large for exhaustive enumeration or search."""
