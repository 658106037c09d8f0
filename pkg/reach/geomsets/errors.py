class DimensionMismatchError(ValueError):
    """Operands live in spaces of different dimension."""


class SingularMatrixError(ValueError):
    """Matrix is singular or too ill-conditioned to invert."""


class EmptySetError(ValueError):
    """Operation requires a nonempty set."""


class UnboundedSetError(ValueError):
    """Operation requires a bounded set."""


def check_dim(expected: int, actual: int, what: str = "set") -> None:
    if expected != actual:
        raise DimensionMismatchError(f"{what}: expected dimension {expected}, got {actual}")
