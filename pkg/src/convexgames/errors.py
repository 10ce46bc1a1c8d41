"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class GameError(Exception):
    """Base class for every error raised by convexgames."""

    exit_code = 1


class InputError(GameError, ValueError):
    """Malformed or inconsistent input (bad coalition, bad file, bad parameters)."""

    exit_code = 2


class DomainError(GameError):
    """Input is well formed but outside the domain an algorithm accepts (e.g. n = 1)."""

    exit_code = 2


class ConvexityError(DomainError):
    """The game was expected to be convex and is not."""

    exit_code = 3


class SizeError(GameError):
    """A configured enumeration bound was exceeded."""

    exit_code = 4


class VerificationError(GameError):
    """A solver result disagreed with its brute-force counterpart."""

    exit_code = 5
