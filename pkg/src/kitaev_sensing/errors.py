"""Exception types raised by the library."""


class CriticalLineError(ValueError):
    """A quantity is undefined because the couplings sit on a critical line."""


class ConvergenceError(RuntimeError):
    """A discretized integral did not settle close enough to its expected value."""
