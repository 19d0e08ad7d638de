"""Exception hierarchy shared by all modules."""


class InputError(ValueError):
    """Invalid input: overlapping bodies, bad parameters, dimension mismatch."""


class DegenerateInputError(InputError):
    """Input is valid but hits a degenerate branch (e.g. collinear centers)."""


class NumericalError(ArithmeticError):
    """A numerical routine failed to converge or left its valid domain."""


class CapabilityError(NotImplementedError):
    """The requested operation is not supported for this shape or dimension."""
