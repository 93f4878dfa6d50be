"""Closed-form partial-fraction expansions of trigonometric ratios.

The package builds expansions of ``prod sin(a_j - z) / prod sin(b_j - z)``
and of ``T(z) / prod sin(z - b_k)`` for trigonometric polynomials ``T`` into
exponential terms plus simple poles, and checks each expansion against
independent numeric oracles.
"""

from .core import (
    ClosedFormExpansion,
    ExpTerm,
    LaurentTrigPoly,
    PhaseVector,
    PoleTerm,
    Provenance,
    SeriesCoefficients,
    direct_ratio,
    eval_expansion,
    split_periodic,
    trig_ratio,
)
from .errors import (
    DegenerateNodes,
    DegreeMismatch,
    DegreeTooHigh,
    IllConditioned,
    IndexCapExceeded,
    ParityViolation,
    PoleProximity,
    RangeViolation,
    RegionExhausted,
    SinfracError,
)

__version__ = "0.1.0"
