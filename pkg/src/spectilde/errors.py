class SpectildeError(Exception):
    pass


class SizeBoundError(SpectildeError, ValueError):
    """A carrier or point set exceeds its configured size bound."""


class InvariantError(SpectildeError, AssertionError):
    """An internal consistency check failed.

    Raised instead of a bare ``assert`` so the checks survive ``python -O``.
    """


def check(condition, message):
    if not condition:
        raise InvariantError(message)
