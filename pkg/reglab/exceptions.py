"""Exceptions raised by reglab."""


class ReglabError(Exception):
    """Base class for every reglab failure."""


class DomainError(ReglabError, ValueError):
    """An argument lies outside the domain of an operation."""


class ContractError(ReglabError):
    """A hypothesis or a post-condition of a construction does not hold.

    ``detail`` carries whatever makes the failure reproducible: the offending
    pair, a witness, the failing cell.
    """

    def __init__(self, message: str, detail=None) -> None:
        """Initialise."""
        super().__init__(message)
        self.detail = detail


class SearchExhaustedError(ContractError):
    """A complete search finished without finding what was asked for."""


class CapacityError(ReglabError):
    """An exact computation would exceed its configured budget."""


class InputError(ReglabError):
    """A file or argument could not be parsed."""

    def __init__(self, message: str, location: str | None = None) -> None:
        """Initialise."""
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
