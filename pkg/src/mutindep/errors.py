"""Exception types shared across the package."""


class NotPositiveDefiniteError(ArithmeticError):
    """A symmetric factorization hit a nonpositive pivot.

    Signals a singular or indefinite (sub)matrix.  `part` identifies which
    matrix failed during a batch of dichotomy tests ("full", "members" or
    "complement") and `elements` holds the 1-based variable indices of the
    offending submatrix, when known.
    """

    def __init__(self, message, part=None, elements=None):
        super().__init__(message)
        self.part = part
        self.elements = tuple(elements) if elements is not None else None


class DegenerateDataError(ValueError):
    """Input data cannot support the requested computation (e.g. a constant
    column, or a sample correlation matrix that is not positive definite)."""


class InternalNumericError(RuntimeError):
    """A numerical invariant was violated beyond floating-point slack.

    Raised, for instance, when a test statistic that must be nonnegative
    comes out below -1e-9, which indicates a broken determinant rather than
    ordinary cancellation noise.
    """


def not_pd_submatrix(part, elements=None):
    """Build a NotPositiveDefiniteError naming the failing (sub)matrix."""
    if part == "full":
        return NotPositiveDefiniteError(
            "correlation matrix is not positive definite", part="full"
        )
    listed = ", ".join(str(e) for e in elements)
    return NotPositiveDefiniteError(
        f"correlation submatrix over variables ({listed}) is not positive definite",
        part=part,
        elements=elements,
    )
