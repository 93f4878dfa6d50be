"""Finite-sum identities obtained by comparing residues at infinity.

Each identity is returned as a pair ``(lhs, rhs)`` of complex numbers; the
caller decides on tolerances.  Nodes ``b`` are 0-based (``n + 1`` entries),
``gamma_k = exp(i b_k)``, and ``P`` is a Laurent polynomial in ``w``.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

from ..core import LaurentTrigPoly, PhaseVector, node_sine_products
from ..errors import DegreeMismatch
from .wdomain import _square_weights

KINDS = ("sumres1", "sumres3", "exotic", "kappa2im", "even_kappa_sine", "kappa3_exotic")


def _node_residue_sum(P: LaurentTrigPoly, gammas: np.ndarray, n: int) -> complex:
    """``1/2 sum_k gamma_k**n (P(gamma_k) + (-1)**n P(-gamma_k)) / prod_{j!=k}(gamma_k**2 - gamma_j**2)``."""
    weights = _square_weights(tuple(gammas))
    sign = -1.0 if n % 2 else 1.0
    total = 0j
    for k, g in enumerate(gammas):
        total += g**n * (P.evaluate_w(g) + sign * P.evaluate_w(-g)) * weights[k]
    return total / 2


def _sumres(P: LaurentTrigPoly, b: PhaseVector, third: bool) -> tuple[complex, complex]:
    n = len(b) - 1
    limit = n + (4 if third else 3)
    if P.degree > limit:
        raise DegreeMismatch(f"numerator degree {P.degree} exceeds n+{limit - n} = {limit}")
    gammas = np.exp(1j * b.array)
    g2 = gammas**2
    c = P.coeff
    lhs = c(n) + c(n + 2) * np.sum(g2)
    if third:
        pairs = sum(g2[j] * g2[k] for j, k in itertools.combinations(range(n + 1), 2))
        lhs += c(n + 4) * (np.sum(g2**2) + pairs)
    tail = c(-n - 2)
    if third:
        tail += c(-n - 4) * np.sum(1 / g2)
    sign = 1.0 if (n + 1) % 2 == 0 else -1.0
    rhs = tail * sign / np.prod(g2) + _node_residue_sum(P, gammas, n)
    return complex(lhs), complex(rhs)


def _sine_weights(a: PhaseVector, b: PhaseVector) -> np.ndarray:
    """``prod_t sin(b_k - a_t) / prod_{j!=k} sin(b_k - b_j)`` for each node."""
    S = node_sine_products(b)
    return np.array([np.prod(np.sin(bk - a.array)) for bk in b]) / S


def _require_offset(a: PhaseVector, b: PhaseVector, offset: int, kind: str) -> None:
    if len(a) != len(b) + offset:
        raise DegreeMismatch(f"{kind} needs len(a) = len(b) + {offset}; got {len(a)} and {len(b)}")


def residue_identity(kind: str, b, a=None, P: LaurentTrigPoly | None = None) -> tuple[complex, complex]:
    """Evaluate both sides of a residue-sum identity.

    Kinds:

    * ``sumres1``: coefficient balance for ``deg P <= n + 3``.
    * ``sumres3``: the analogous balance for ``deg P <= n + 4``.
    * ``exotic``: ``4 sum_k exp(i(nu + b_k)) sin(b_k - a)/S_k =
      sum exp(2ia) - sum exp(2ib) - exp(2i nu)`` with ``len(a) = len(b) + 1``.
    * ``kappa2im``: ``4 sum_k sin(b_k - a)/S_k = sum sin(B - A + 2a_j) -
      sum sin(B - A + 2b_k)`` with ``len(a) = len(b) + 2``.
    * ``even_kappa_sine``: for ``len(a) = len(b) + 2*lam`` the sine sum over
      ``lam - m`` distinct ``a`` phases and ``m`` repeatable nodes, divided by
      ``4**lam``, equals ``sum_k prod_t sin(b_k - a_t)/S_k``.
    * ``kappa3_exotic``: the second-order exponential identity for
      ``len(a) = len(b) + 3``.

    For ``sumres1``/``sumres3`` pass ``P`` or ``a`` (then
    ``P(exp(iz)) = prod_t sin(z - a_t)``).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown residue identity {kind!r}; expected one of {KINDS}")
    b = PhaseVector.coerce(b)
    if len(b) < 1:
        raise ValueError("at least one node is required")
    b.require_distinct()
    if kind in ("sumres1", "sumres3"):
        if P is None:
            if a is None:
                raise ValueError(f"{kind} needs a numerator P or phases a")
            P = LaurentTrigPoly.sine_product(PhaseVector.coerce(a))
        return _sumres(P, b, third=(kind == "sumres3"))
    if a is None:
        raise ValueError(f"{kind} needs numerator phases a")
    a = PhaseVector.coerce(a)
    A, B = a.total, b.total
    if kind == "exotic":
        _require_offset(a, b, 1, kind)
        nu = A - B
        w = _sine_weights(a, b)
        lhs = 4 * np.sum(np.exp(1j * (nu + b.array)) * w)
        rhs = np.sum(np.exp(2j * a.array)) - np.sum(np.exp(2j * b.array)) - cmath.exp(2j * nu)
        return complex(lhs), complex(rhs)
    if kind == "kappa2im":
        _require_offset(a, b, 2, kind)
        lhs = 4 * np.sum(_sine_weights(a, b))
        rhs = np.sum(np.sin(B - A + 2 * a.array)) - np.sum(np.sin(B - A + 2 * b.array))
        return complex(lhs), complex(rhs)
    if kind == "kappa3_exotic":
        _require_offset(a, b, 3, kind)
        ea, eb = np.exp(2j * a.array), np.exp(2j * b.array)
        pairs_a = sum(x * y for x, y in itertools.combinations(ea, 2))
        pairs_b = sum(x * y for x, y in itertools.combinations(eb, 2))
        lhs = pairs_a - np.sum(ea) * np.sum(eb) + np.sum(eb**2) + pairs_b
        shift = cmath.exp(1j * (A - B))
        w = _sine_weights(a, b)
        rhs = shift**2 * (np.sum(1 / ea) - np.sum(1 / eb)) + 16 * shift * np.sum(
            np.exp(1j * b.array) * w
        )
        return complex(lhs), complex(rhs)
    # even_kappa_sine
    kappa = len(a) - len(b)
    if kappa < 0 or kappa % 2:
        raise DegreeMismatch(f"even_kappa_sine needs len(a) - len(b) even and >= 0; got {kappa}")
    lam = kappa // 2
    lhs = 0.0
    for m in range(lam + 1):
        inner = 0.0
        for chosen_a in itertools.combinations(a.phases, lam - m):
            for chosen_b in itertools.combinations_with_replacement(b.phases, m):
                inner += math.sin(B - A + 2 * (sum(chosen_b) + sum(chosen_a)))
        lhs += (-1) ** m * inner
    lhs /= 4**lam
    rhs = float(np.sum(_sine_weights(a, b)))
    return complex(lhs), complex(rhs)
