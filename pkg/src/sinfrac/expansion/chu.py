"""Chu's expansion of ``P(exp(iz)) / prod sin(z - b_k)`` and its extensions.

Indexing: ``b`` holds the ``n + 1`` nodes ``b_0..b_n`` and ``P`` is a Laurent
polynomial in ``w = exp(iz)``.  The base expansion allows ``|t| <= n + 1``;
the extended forms admit ``excess`` further harmonics on each side.
"""

from __future__ import annotations

import cmath

import numpy as np

from ..core import ClosedFormExpansion, LaurentTrigPoly, PhaseVector, Provenance, two_i_power
from ..errors import DegreeTooHigh
from .wdomain import WExpansion, _add, _square_weights


def _chu_poles(P: LaurentTrigPoly, gammas: tuple[complex, ...]) -> dict[tuple[int, int], complex]:
    """Pole part shared by every Chu-type expansion.

    Each node contributes ``A_k/2 * (P(g)/(w-g) + (-1)**n P(-g)/(w+g))`` with
    ``A_k = g**n / prod_{j!=k}(g**2 - gamma_j**2)``.
    """
    n = len(gammas) - 1
    weights = _square_weights(gammas)
    sign = -1.0 if n % 2 else 1.0
    poles: dict[tuple[int, int], complex] = {}
    for k, g in enumerate(gammas):
        half = g**n * weights[k] / 2
        plus = half * P.evaluate_w(g)
        minus = half * sign * P.evaluate_w(-g)
        _add(poles, (k, 1), plus + minus)
        _add(poles, (k, 0), g * (plus - minus))
    return poles


def _extra_polynomial(P: LaurentTrigPoly, gammas: tuple[complex, ...], excess: int) -> dict[int, complex]:
    """Polynomial part of the extended expansions (``excess`` in 0..3)."""
    n = len(gammas) - 1
    c = P.coeff
    g2 = np.asarray(gammas) ** 2
    neg_prod = complex(np.prod(-g2))
    s1 = complex(np.sum(g2))
    poly: dict[int, complex] = {0: c(n + 1)}
    if excess >= 1:
        poly[1] = c(n + 2)
        poly[-1] = c(-n - 2) / neg_prod
    if excess >= 2:
        poly[2] = c(n + 3)
        poly[0] += c(n + 3) * s1
        poly[-2] = c(-n - 3) / neg_prod
    if excess >= 3:
        poly[3] = c(n + 4)
        poly[1] += c(n + 4) * s1
        poly[-1] += c(-n - 4) * complex(np.sum(1 / g2)) / neg_prod
        poly[-3] = c(-n - 4) / neg_prod
    return poly


def chu_w_expansion(P: LaurentTrigPoly, b, excess: int = 0) -> WExpansion:
    """``P(w) w**(n+1) / prod (w**2 - gamma_k**2)`` as a w-domain expansion."""
    b = PhaseVector.coerce(b)
    if len(b) < 1:
        raise ValueError("at least one node is required")
    if excess not in (0, 1, 2, 3):
        raise ValueError("excess must be 0, 1, 2 or 3")
    b.require_distinct()
    n = len(b) - 1
    if P.degree > n + 1 + excess:
        raise DegreeTooHigh(
            f"numerator degree {P.degree} exceeds n+1+excess = {n + 1 + excess}"
        )
    gammas = tuple(cmath.exp(1j * x) for x in b)
    return WExpansion(gammas, _extra_polynomial(P, gammas, excess), _chu_poles(P, gammas))


def _prefactor(b: PhaseVector) -> complex:
    return two_i_power(len(b)) * cmath.exp(1j * b.total)


def chu_expand(P: LaurentTrigPoly, b) -> ClosedFormExpansion:
    """Expand ``P(exp(iz)) / prod_k sin(z - b_k)`` for ``deg P <= n + 1``.

    The result is one constant (from ``c_{n+1}``) plus, at every node, pole
    terms with ``mu = 0`` and ``mu = -1``.
    """
    b = PhaseVector.coerce(b)
    w = chu_w_expansion(P, b, 0)
    return w.to_z(b, _prefactor(b), Provenance.make("chu", P=P, b=b))


def chu_extended_expand(P: LaurentTrigPoly, b, excess: int) -> ClosedFormExpansion:
    """Chu's expansion for numerators with up to ``excess`` (1, 2 or 3) extra harmonics.

    The extra harmonics produce exponential terms with frequencies up to
    ``+-excess``; the pole part is identical to :func:`chu_expand`.
    """
    if excess not in (1, 2, 3):
        raise ValueError("excess must be 1, 2 or 3")
    b = PhaseVector.coerce(b)
    w = chu_w_expansion(P, b, excess)
    return w.to_z(b, _prefactor(b), Provenance.make("chu-ext", P=P, b=b, excess=excess))
