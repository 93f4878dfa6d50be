"""Exception hierarchy shared by every module of the package.

All errors derive from :class:`SinfracError`, so callers (notably the CLI)
can map any precondition failure to a single "invalid input" path.
"""

from __future__ import annotations


class SinfracError(ValueError):
    """Base class for all input/precondition failures raised by sinfrac."""


class PoleProximity(SinfracError):
    """An evaluation point lies within the pole guard of a denominator node."""


class DegenerateNodes(SinfracError):
    """Denominator nodes coincide modulo pi (closer than the separation margin)."""


class ParityViolation(SinfracError):
    """An integer shift parameter has the wrong parity or exceeds its bound."""


class DegreeTooHigh(SinfracError):
    """A numerator has more harmonics than the requested expansion supports."""


class DegreeMismatch(SinfracError):
    """A numerator degree or node count does not fit an identity's hypothesis."""


class RangeViolation(SinfracError):
    """A (kappa, k) pair lies outside the range where an identity holds."""


class RegionExhausted(SinfracError):
    """Sampling rejected more than 99% of candidate points."""


class IllConditioned(SinfracError):
    """A numeric oracle could not resolve its target to the required accuracy."""


class IndexCapExceeded(SinfracError):
    """A coefficient index beyond the configured cap was requested."""
