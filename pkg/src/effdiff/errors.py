"""Exception hierarchy."""


class EffDiffError(Exception):
    pass


class DomainError(EffDiffError, ValueError):
    """Argument outside the mathematical domain of the function."""


class DegenerateInputError(EffDiffError, ValueError):
    """Data for which the statistic is undefined, e.g. zero variance in a denominator."""


class SearchFailure(EffDiffError, ArithmeticError):
    """The noncentrality-parameter search left its bracket cap without converging."""
