"""Exception types raised across the package."""


class RelGrowthError(Exception):
    """Base class for all package errors."""


class DomainError(RelGrowthError, ValueError):
    """An argument lies outside the domain of a formula (log of zero, etc.)."""


class FitError(RelGrowthError):
    """A curve or regression fit could not be carried out on the data."""


class InputError(RelGrowthError, ValueError):
    """Malformed user input: CSV panels, scenario files, CLI arguments."""
