"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent caller input."""


class ResourceLimitError(RuntimeError):
    """A configured size guard would be exceeded."""


class UnsupportedRingError(TypeError):
    """Operation requires a ring capability the given ring lacks."""


class SingularMatrixError(ArithmeticError):
    """Matrix inversion failed; carries the rank actually found when the
    failure came from elimination."""

    def __init__(self, message: str, rank: int | None = None):
        super().__init__(message)
        self.rank = rank
