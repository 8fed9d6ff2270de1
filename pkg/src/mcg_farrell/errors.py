"""Exception types shared by the engine and the CLI."""


class FarrellError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FarrellError, ValueError):
    """An input lies outside the mathematical domain of an operation
    (genus 0, a composite "prime", a residue outside [1, p-1], ...)."""


class UnsupportedCase(FarrellError):
    """The input is well formed but no computation rule covers it."""


class UnsupportedAction(UnsupportedCase):
    """A permutation action on H*(K_t) that is not in the curated tables."""
