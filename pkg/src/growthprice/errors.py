"""Exception types shared across the package."""


class GrowthPriceError(Exception):
    """Base class for every error raised by this package."""


class SpecParseError(GrowthPriceError):
    """A game spec document could not be parsed."""


class GameValidationError(GrowthPriceError):
    """A game violates the standing assumptions; carries the full verdict."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__("; ".join(verdict.problems) or "invalid game")


class DomainError(GrowthPriceError, ValueError):
    """An argument lies outside the admissible domain of an operation."""


class InternalConsistencyError(GrowthPriceError):
    """Two computations that must agree did not; indicates a solver defect,
    not a user error."""
