"""Exception hierarchy.

Everything raised for bad mathematical input derives from ``KleinError`` so
callers (the CLI in particular) can separate domain failures from bugs.
"""


class KleinError(ValueError):
    """Base class for domain errors."""


class DegenerateError(KleinError):
    """Coincident points, degenerate frames, or boundary configurations."""


class LocusError(KleinError):
    """A period matrix is not in the expected Siegel-space locus."""


class LatticeError(KleinError):
    """A map of complex tori does not respect the lattices."""


class ConvergenceError(KleinError):
    """An iterative numerical scheme failed to converge."""


class InvariantViolation(RuntimeError):
    """A forward computation produced output contradicting a proven identity.

    This signals a bug, not bad input.
    """
