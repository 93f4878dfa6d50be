"""Expansions of ``F(z) = prod sin(a_j - z) / prod sin(b_j - z)`` and Meijer's sums.

Indexing: ``a`` and ``b`` are 0-based here; the classical statements number
them ``a_1..a_r`` and ``b_1..b_n``, so ``b[j]`` is node ``b_{j+1}``.  Throughout,
``kappa = len(a) - len(b)`` and ``nu = sum(a) - sum(b)``.

Pole terms are stored against ``sin(z - b_j)``.  Since
``sin(b_j - z) = -sin(z - b_j)``, each classical pole coefficient
``sin(a - b_j) / prod_{l != j} sin(b_l - b_j)`` enters with a minus sign.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..core import (
    ClosedFormExpansion,
    ExpTerm,
    PhaseVector,
    PoleTerm,
    Provenance,
    check_pole_guard,
    two_i_power,
)
from ..errors import RangeViolation
from ..sympoly import braaksma_C, braaksma_D, omega


def _sine_at(phases: PhaseVector, x: float) -> float:
    """``prod_j sin(phases_j - x)``."""
    return float(np.prod(np.sin(phases.array - x)))


def _meijer_weights(a: PhaseVector, b: PhaseVector) -> np.ndarray:
    """``sin(a - b_t) / prod_{j != t} sin(b_j - b_t)`` for every node ``t``."""
    out = np.empty(len(b))
    for t, bt in enumerate(b):
        out[t] = _sine_at(a, bt) / _sine_at(b.without(t), bt)
    return out


def braaksma_expand(a, b, k: int) -> ClosedFormExpansion:
    """Closed form of ``F(z)`` with split index ``k`` (any integer).

    Exponential part: ``C_j exp(i delta_j z)`` for ``0 <= j <= k-1`` plus
    ``D_j exp(i delta_j z)`` for ``k <= j <= kappa`` where
    ``delta_j = -kappa + 2j``.  Pole part: one term per node with
    ``mu = 2k - kappa - 1``.  Every ``k`` yields the same function; ``k``
    only trades upper-half-plane for lower-half-plane coefficients.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    b.require_distinct()
    kappa = len(a) - len(b)
    exps: list[ExpTerm] = []
    if k > 0:
        C = braaksma_C(a, b, k - 1)
        exps += [ExpTerm(C[j], -kappa + 2 * j) for j in range(k)]
    if k <= kappa:
        D = braaksma_D(a, b, k)
        exps += [ExpTerm(D[j], -kappa + 2 * j) for j in range(k, kappa + 1)]
    mu = 2 * k - kappa - 1
    weights = _meijer_weights(a, b)
    poles = [PoleTerm(j, bj, -weights[j], mu) for j, bj in enumerate(b)]
    return ClosedFormExpansion.build(exps, poles, Provenance.make("braaksma", a=a, b=b, k=k))


def meijer_lemma3(a, b, k: int) -> tuple[complex, complex]:
    """Both sides of Meijer's weighted node sum.

    ``lhs = (2i)**(kappa+1) sum_t exp(i(2k-kappa) b_t) sin(a - b_t)/prod_{j!=t} sin(b_j - b_t)``
    and ``rhs = exp(i nu) OmegaBar_{kappa-k} - (-1)**kappa exp(-i nu) Omega_k``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    b.require_distinct()
    kappa = len(a) - len(b)
    nu = a.total - b.total
    weights = _meijer_weights(a, b)
    phase = np.exp(1j * (2 * k - kappa) * b.array)
    lhs = two_i_power(kappa + 1) * complex(np.sum(phase * weights))
    depth = max(kappa - k, k, 0)
    om, om_bar = omega(a, b, depth), omega(a, b, depth, conjugated=True)
    sign = -1 if kappa % 2 else 1
    rhs = cmath.exp(1j * nu) * om_bar.get(kappa - k) - sign * cmath.exp(-1j * nu) * om.get(k)
    return lhs, complex(rhs)


def _check_lemma4_range(kappa: int, k: int) -> None:
    if kappa > -1 or not 0 <= k <= -kappa - 1:
        raise RangeViolation(f"need kappa <= -1 and 0 <= k <= -kappa-1; got kappa={kappa}, k={k}")


def meijer_lemma4_expand(a, b, k: int) -> ClosedFormExpansion:
    """Pole sum ``sum_t exp(i(kappa+2k+1)(z-b_t)) w_t / sin(z - b_t)``, equal to ``-F(z)``.

    Here ``w_t = sin(a - b_t)/prod_{j!=t} sin(b_j - b_t)``; requires
    ``kappa <= -1`` and ``0 <= k <= -kappa - 1``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    kappa = len(a) - len(b)
    _check_lemma4_range(kappa, k)
    b.require_distinct()
    weights = _meijer_weights(a, b)
    mu = kappa + 2 * k + 1
    poles = [PoleTerm(t, bt, weights[t], mu) for t, bt in enumerate(b)]
    return ClosedFormExpansion.build((), poles, Provenance.make("meijer4", a=a, b=b, k=k))


def meijer_lemma4_check(a, b, k: int, z, pole_guard: float = 0.2):
    """Return ``(lhs, rhs)`` at ``z``: the pole sum and ``-F(z)``."""
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    expansion = meijer_lemma4_expand(a, b, k)
    zz = np.asarray(z, dtype=complex)
    check_pole_guard(b.phases, zz, pole_guard)
    lhs = expansion.evaluate(zz, pole_guard)
    num = np.prod(np.sin(a.array - zz[..., None]), axis=-1)
    den = np.prod(np.sin(b.array - zz[..., None]), axis=-1)
    rhs = -num / den
    if np.ndim(rhs) == 0:
        return complex(lhs), complex(rhs)
    return lhs, rhs


def braaksma_to_meijer(a, b, k: int) -> tuple[complex, complex, complex]:
    """Evaluate Meijer's node sum through a Braaksma expansion on one fewer node.

    Drop the last node ``b_last``, build ``braaksma_expand(a, b[:-1], kappa+1-k)``
    and evaluate only its exponential part at ``z = b_last``; multiplied by
    ``(2i)**(kappa+1) exp(i(2k-kappa) b_last)`` this equals both sides of
    :func:`meijer_lemma3`.  Returns ``(via_braaksma, lhs, rhs)``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    if len(b) < 1:
        raise ValueError("at least one node is required")
    b.require_distinct()
    kappa = len(a) - len(b)
    last = b[len(b) - 1]
    shorter = b[: len(b) - 1]
    reduced = braaksma_expand(a, shorter, kappa + 1 - k)
    value = reduced.exp_part().evaluate(last, pole_guard=0)
    factor = two_i_power(kappa + 1) * cmath.exp(1j * (2 * k - kappa) * last)
    lhs, rhs = meijer_lemma3(a, b, k)
    return complex(factor * value), lhs, rhs


def ptolemy_sides(a, b) -> tuple[float, float]:
    """Hermite's sine identity for equally many numerator and denominator phases.

    Returns ``(sum_t prod_j sin(a_j - b_t) / prod_{j!=t} sin(b_j - b_t),
    sin(sum(a) - sum(b)))`` computed as a plain double loop.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    if len(a) != len(b) or len(b) < 1:
        raise ValueError("need equally many (and at least one) numerator and denominator phases")
    b.require_distinct()
    lhs = 0.0
    for t in range(len(b)):
        num = 1.0
        for aj in a:
            num *= math.sin(aj - b[t])
        den = 1.0
        for j in range(len(b)):
            if j != t:
                den *= math.sin(b[j] - b[t])
        lhs += num / den
    return lhs, math.sin(a.total - b.total)
