"""Exception types shared by all modules."""


class ValidationError(ValueError):
    """Raised when an input fails a structural contract (shape, hermiticity,
    trace, positivity, malformed file)."""


class NumericDomainError(ValueError):
    """Raised when inputs are structurally valid but the requested quantity
    is undefined or singular there (zero eigenvalue in a metric denominator,
    infinite exponent, pure state where mixedness is required, ...)."""


class RejectionBudgetError(NumericDomainError):
    """Rejection sampler exhausted its proposal budget.

    Carries the observed acceptance rate so the caller can judge whether a
    larger budget would help.
    """

    def __init__(self, message: str, acceptance_rate: float):
        super().__init__(f"{message} (acceptance rate {acceptance_rate:.3g})")
        self.acceptance_rate = acceptance_rate
