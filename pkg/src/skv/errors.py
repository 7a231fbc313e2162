"""Exception hierarchy shared across the package."""


class SkvError(Exception):
    """Base class for all package errors."""


class ArithmeticDomainError(SkvError):
    """Invalid arithmetic input (division by zero, non-coprime Galois index, ...)."""


class DivisionByZero(ArithmeticDomainError):
    pass


class OrderCapExceeded(SkvError):
    """A cyclotomic order exceeded the configured resource bound."""


class GroupError(SkvError):
    """Invalid group data (bad multiplication table, non-subgroup, ...)."""


class NotMonomialError(GroupError):
    """The irreducible-character search via monomial certificates did not complete."""


class CentralityError(SkvError):
    """A group-ring element expected to be central is not."""


class FixtureError(SkvError):
    """Malformed or inconsistent fixture data."""


class InternalCheckError(SkvError):
    """A self-verifying exact identity failed; indicates an arithmetic bug."""
