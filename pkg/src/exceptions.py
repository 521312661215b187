"""Exception hierarchy. Each class carries the process exit status the CLI uses."""


class ConicError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code = 1


class UsageError(ConicError, ValueError):
    """Bad arguments: a contract violation by the caller."""

    exit_code = 2


class DataError(ConicError):
    """Input data that breaks a relation it must satisfy (norm, cache document, trivial point)."""

    exit_code = 3


class HypothesisError(DataError):
    """Input lies outside the hypotheses under which the structure theorems hold."""


class InapplicableDiscriminantError(HypothesisError):
    """D failed the applicability test and no unverified-D override was given."""

    def __init__(self, D: int, reasons: list):
        self.D = D
        self.reasons = list(reasons)
        codes = ", ".join(str(r) for r in self.reasons)
        super().__init__(f"D={D} is outside the theorem hypotheses ({codes}); pass --unverified-D to explore it anyway")


class InvariantViolation(DataError):
    """An invariant that the theory guarantees did not hold. Always a bug or a false hypothesis."""


class LemmaViolation(InvariantViolation):
    """No pair, or more than one pair, solves a^2 + D*b^2 = p^2 for a split prime p."""


class FactorizationFailed(InvariantViolation):
    """Peeling a generator off an element reduced the prime exponent in neither direction."""


class VerificationMismatch(ConicError):
    """Regenerated results disagree with golden data or with the brute-force oracle."""

    exit_code = 4
