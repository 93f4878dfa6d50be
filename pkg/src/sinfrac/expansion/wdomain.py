"""Rational expansions in the variable ``w = exp(iz)``.

With ``gamma_k = exp(i b_k)`` every node contributes the quadratic factor
``w**2 - gamma_k**2 = 2i exp(i(z + b_k)) sin(z - b_k)``.  A w-domain expansion
is a Laurent polynomial part plus terms ``coeff * w**q / (w**2 - gamma_k**2)``;
:meth:`WExpansion.to_z` maps it onto the z-domain term algebra.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..core import ClosedFormExpansion, ExpTerm, PhaseVector, PoleTerm, Provenance
from ..errors import DegenerateNodes, ParityViolation
from ..sympoly import complete_homogeneous

_SQUARE_SEPARATION = 1e-12


@dataclass(frozen=True)
class WExpansion:
    """``sum_p poly[p] w**p + sum_{(k,q)} poles[k,q] w**q / (w**2 - gammas[k]**2)``."""

    gammas: tuple[complex, ...]
    poly: dict[int, complex] = field(default_factory=dict)
    poles: dict[tuple[int, int], complex] = field(default_factory=dict)

    def evaluate(self, w):
        ww = np.asarray(w, dtype=complex)
        total = np.zeros(ww.shape, dtype=complex)
        for p, c in self.poly.items():
            total = total + c * ww**p
        for (k, q), c in self.poles.items():
            total = total + c * ww**q / (ww**2 - self.gammas[k] ** 2)
        return total if total.ndim else complex(total)

    __call__ = evaluate

    def to_z(self, b: PhaseVector, prefactor: complex, provenance: Provenance) -> ClosedFormExpansion:
        """Multiply by ``prefactor`` and rewrite in terms of ``z`` with ``w = exp(iz)``.

        ``w**q / (w**2 - gamma**2) = exp(i(q-2)b)/(2i) * exp(i(q-1)(z-b)) / sin(z-b)``.
        """
        exps = [ExpTerm(prefactor * c, p) for p, c in self.poly.items()]
        poles = [
            PoleTerm(k, b[k], prefactor * c * cmath.exp(1j * (q - 2) * b[k]) / 2j, q - 1)
            for (k, q), c in self.poles.items()
        ]
        return ClosedFormExpansion.build(exps, poles, provenance)


def _square_weights(gammas: Sequence[complex]) -> np.ndarray:
    """``1 / prod_{j != k} (gamma_k**2 - gamma_j**2)`` for every ``k``."""
    g2 = np.asarray(gammas, dtype=complex) ** 2
    diff = g2[:, None] - g2[None, :]
    np.fill_diagonal(diff, 1.0)
    if g2.size > 1:
        off = np.abs(diff[~np.eye(g2.size, dtype=bool)])
        if off.min() < _SQUARE_SEPARATION:
            raise DegenerateNodes("gamma values are not distinct in squares")
    return 1.0 / np.prod(diff, axis=1)


def monomial_expand(m: int, b_count: int, theta: int, gammas: Sequence[complex]) -> WExpansion:
    """Expand ``w**(m+n) / prod_k (w**2 - gamma_k**2)`` with ``n + 1 = b_count`` nodes.

    The shift ``theta`` selects which power of ``w`` sits over each quadratic
    factor: the result is

        sum_{j=0}^{(m-n-theta)/2 - 1} h_j(gamma**2) w**(m-n-2-2j)
        + sum_k gamma_k**(m+n-theta) / prod_{j!=k}(gamma_k**2 - gamma_j**2)
                * w**theta / (w**2 - gamma_k**2)

    and is valid for every integer ``theta <= m + n`` with ``theta = m + n (mod 2)``.
    """
    gammas = tuple(complex(g) for g in gammas)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if b_count != len(gammas) or b_count < 1:
        raise ValueError("b_count must equal the number of gamma values (at least one)")
    n = b_count - 1
    if theta > m + n or (m + n - theta) % 2:
        raise ParityViolation(f"theta={theta} must be <= m+n={m + n} with the same parity")
    weights = _square_weights(gammas)
    poly: dict[int, complex] = {}
    top = (m - n - theta) // 2 - 1
    if top >= 0:
        h = complete_homogeneous([g * g for g in gammas], top)
        for j in range(top + 1):
            poly[m - n - 2 - 2 * j] = h[j]
    poles = {(k, theta): g ** (m + n - theta) * weights[k] for k, g in enumerate(gammas)}
    return WExpansion(gammas, poly, poles)


def _add(d: dict, key, value: complex) -> None:
    d[key] = d.get(key, 0j) + value


def w_power_expand(m: int, gammas: Sequence[complex], form: str) -> WExpansion:
    """Simple-fraction expansions of ``w**(+-m+n+1) / prod_k (w**2 - gamma_k**2)``.

    ``form`` selects one of four closed forms in which each quadratic factor
    is split into ``1/(w - gamma)`` and ``1/(w + gamma)``:

    * ``"sum-"``:  ``w**(m+n+1)`` with pole numerators ``w * gamma**(m+n-1)``
    * ``"sum+"``:  ``w**(m+n+1)`` with pole numerators ``gamma**(m+n)``
    * ``"neg-sum-"``: ``w**(-m+n+1)`` with pole numerators ``gamma**(-m+n)``
    * ``"neg-sum+"``: ``w**(-m+n+1)`` with pole numerators ``w * gamma**(-m+n-1)``

    The number of polynomial terms depends on ``(m + n) mod 2``.
    """
    gammas = tuple(complex(g) for g in gammas)
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = len(gammas) - 1
    parity = (m + n) % 2
    weights = _square_weights(gammas)
    negative = form.startswith("neg-")
    with_w = form in ("sum-", "neg-sum+")
    if form not in ("sum-", "sum+", "neg-sum-", "neg-sum+"):
        raise ValueError(f"unknown form {form!r}")
    count = (m - n - parity) // 2 if form.endswith("-") else (m - n + parity) // 2
    poly: dict[int, complex] = {}
    if count > 0:
        if negative:
            g2 = [1 / (g * g) for g in gammas]
            scale = 1 / np.prod([-(g * g) for g in gammas])
            h = complete_homogeneous(g2, count - 1)
            for j in range(count):
                poly[-(m - n - 1 - 2 * j)] = scale * h[j]
        else:
            h = complete_homogeneous([g * g for g in gammas], count - 1)
            for j in range(count):
                poly[m - n - 1 - 2 * j] = h[j]
    if negative:
        power = -m + n - 1 if with_w else -m + n
    else:
        power = m + n - 1 if with_w else m + n
    poles: dict[tuple[int, int], complex] = {}
    shift = 1 if with_w else 0
    for k, g in enumerate(gammas):
        half = weights[k] / 2
        plus, minus = half * g**power, half * (-g) ** power
        # 1/(w - g) = (w + g)/(w^2 - g^2) and 1/(w + g) = (w - g)/(w^2 - g^2)
        _add(poles, (k, 1 + shift), plus + minus)
        _add(poles, (k, shift), g * (plus - minus))
    return WExpansion(gammas, poly, poles)
