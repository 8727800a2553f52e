"""Exception hierarchy shared by the library and the CLI."""


class TdlabError(Exception):
    """Base class for all errors raised by tdlab."""


class ParameterError(TdlabError, ValueError):
    """A family parameter or argument violates its documented range."""


class SizeError(TdlabError):
    """A computation would exceed a configured resource cap."""


class NoTotalDominatingSet(TdlabError):
    """The graph has an isolated vertex, so no total dominating set exists."""


class UnsupportedFamily(TdlabError):
    """No closed-form polynomial is known for the requested family."""


class ConvergenceError(TdlabError):
    """The root solver did not converge.

    ``best`` holds the last iterate and ``residuals`` the matching
    backward errors, so callers can still report a partial table.
    """

    def __init__(self, message, best=None, residuals=None):
        super().__init__(message)
        self.best = best
        self.residuals = residuals
