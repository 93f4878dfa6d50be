"""Symmetric-polynomial kernels and the coefficient sequences built from them.

The coefficient families here are the entire-part coefficients of the
expansions: the upper/lower half-plane series coefficients ``C_j`` and
``D_j`` of ``prod sin(a - z) / prod sin(b - z)``, the generating-function
coefficients ``Omega_m``, and the ``E_j``/``F_k`` families used for general
trigonometric numerators.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .core import LaurentTrigPoly, PhaseVector, SeriesCoefficients, two_i_power
from .errors import IndexCapExceeded

MAX_INDEX = 64
"""Largest coefficient index any kernel will produce."""


def _check_cap(upto: int, cap: int = MAX_INDEX) -> None:
    if upto < 0:
        raise ValueError("index bound must be nonnegative")
    if upto > cap:
        raise IndexCapExceeded(f"index {upto} exceeds the cap of {cap}")


def elementary_symmetric(values: Sequence[complex], upto: int) -> list[complex]:
    """Return ``[e_0, ..., e_upto]`` of ``values``.

    Each value is folded in with ``e_k <- e_k + x * e_{k-1}`` (descending
    ``k``), which never subtracts and so stays accurate on the unit circle.
    Entries beyond ``len(values)`` are zero.
    """
    _check_cap(upto)
    e = np.zeros(upto + 1, dtype=complex)
    e[0] = 1.0
    for count, x in enumerate(values, start=1):
        top = min(count, upto)
        e[1 : top + 1] = e[1 : top + 1] + x * e[0:top]
    return [complex(v) for v in e]


def complete_homogeneous(values: Sequence[complex], upto: int) -> list[complex]:
    """Return ``[h_0, ..., h_upto]`` of ``values``.

    Multiplies the truncated series by ``1/(1 - x t)`` one value at a time:
    ``h_k <- h_k + x * h_{k-1}`` in ascending ``k``.
    """
    _check_cap(upto)
    h = np.zeros(upto + 1, dtype=complex)
    h[0] = 1.0
    for x in values:
        for k in range(1, upto + 1):
            h[k] += x * h[k - 1]
    return [complex(v) for v in h]


def _signed_elementary(values: Sequence[complex], upto: int) -> np.ndarray:
    e = np.asarray(elementary_symmetric(values, upto))
    return e * (-1.0) ** np.arange(upto + 1)


def _kappa_nu(a: PhaseVector, b: PhaseVector) -> tuple[int, float]:
    return len(a) - len(b), a.total - b.total


def braaksma_C(a, b, upto: int) -> SeriesCoefficients:
    """Upper half-plane coefficients ``C_0..C_upto``.

    ``C_0 = (2i)**(-kappa) * exp(i nu)`` and
    ``C_j = C_0 * sum_{k+l=j} (-1)**k e_k(exp(-2ia)) h_l(exp(-2ib))``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    kappa, nu = _kappa_nu(a, b)
    _check_cap(upto)
    c0 = two_i_power(-kappa) * complex(math.cos(nu), math.sin(nu))
    A = _signed_elementary(np.exp(-2j * a.array), upto)
    B = np.asarray(complete_homogeneous(np.exp(-2j * b.array), upto))
    conv = np.convolve(A, B)[: upto + 1]
    return SeriesCoefficients("C", {j: c0 * conv[j] for j in range(upto + 1)})


def braaksma_D(a, b, downto: int) -> SeriesCoefficients:
    """Lower half-plane coefficients ``D_kappa, D_{kappa-1}, ..., D_downto``.

    ``D_kappa = (-2i)**(-kappa) * exp(-i nu)`` and
    ``D_{kappa-s} = D_kappa * sum_{k+l=s} (-1)**k e_k(exp(2ia)) h_l(exp(2ib))``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    kappa, nu = _kappa_nu(a, b)
    if downto > kappa:
        raise ValueError(f"D_j is defined for j <= kappa = {kappa}; got downto={downto}")
    depth = kappa - downto
    _check_cap(depth)
    dk = two_i_power(-kappa, -1) * complex(math.cos(nu), -math.sin(nu))
    A = _signed_elementary(np.exp(2j * a.array), depth)
    B = np.asarray(complete_homogeneous(np.exp(2j * b.array), depth))
    conv = np.convolve(A, B)[: depth + 1]
    return SeriesCoefficients("D", {kappa - s: dk * conv[s] for s in range(depth + 1)})


def _truncated_mul(p: np.ndarray, q: np.ndarray, upto: int) -> np.ndarray:
    return np.convolve(p, q)[: upto + 1]


def omega(a, b, upto: int, conjugated: bool = False) -> SeriesCoefficients:
    """Taylor coefficients of ``prod(1 - x exp(2ia)) / prod(1 - x exp(2ib))``.

    With ``conjugated=True`` the exponents change sign.  This route multiplies
    truncated power series factor by factor (linear numerator factors and
    geometric denominator series), independently of the symmetric-function
    kernels above, so it can serve as a cross-check for ``C_j`` and ``D_j``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    _check_cap(upto)
    s = -2j if conjugated else 2j
    series = np.zeros(upto + 1, dtype=complex)
    series[0] = 1.0
    for x in np.exp(s * a.array):
        factor = np.zeros(upto + 1, dtype=complex)
        factor[0] = 1.0
        if upto >= 1:
            factor[1] = -x
        series = _truncated_mul(series, factor, upto)
    for x in np.exp(s * b.array):
        geometric = x ** np.arange(upto + 1)
        series = _truncated_mul(series, geometric, upto)
    kind = "OmegaBar" if conjugated else "Omega"
    return SeriesCoefficients(kind, {m: series[m] for m in range(upto + 1)})


def theorem3_E(b, upto: int, sign: int = 1) -> SeriesCoefficients:
    """``E_j = (sign*2i)**(n+1) h_j(exp(sign*2ib)) exp(sign*i*B)`` for ``j = 0..upto``.

    Here ``n + 1 = len(b)`` and ``B`` is the sum of the nodes.
    """
    b = PhaseVector.coerce(b)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    total = b.total
    pref = two_i_power(len(b), sign) * complex(math.cos(total), sign * math.sin(total))
    h = complete_homogeneous(np.exp(sign * 2j * b.array), upto)
    kind = "Eplus" if sign == 1 else "Eminus"
    return SeriesCoefficients(kind, {j: pref * h[j] for j in range(upto + 1)})


def theorem3_F(T: LaurentTrigPoly, b, k: int, sign: int = 1) -> complex:
    """``F_k = sum_{j=0}^{floor((m-n-k-1)/2)} c_{sign*(2j+k+n+1)} E_j``.

    ``m`` is the degree of ``T`` and ``n + 1 = len(b)``.  Empty sums give 0.
    """
    b = PhaseVector.coerce(b)
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = len(b) - 1
    top = (T.degree - n - k - 1) // 2
    if top < 0:
        return 0j
    E = theorem3_E(b, top, sign)
    return complex(sum(T.coeff(sign * (2 * j + k + n + 1)) * E[j] for j in range(top + 1)))


def theorem3_F_series(T: LaurentTrigPoly, b, sign: int = 1) -> SeriesCoefficients:
    """All nonzero-range ``F_k`` for ``k = 0..m-n-1`` as a series."""
    b = PhaseVector.coerce(b)
    top = T.degree - len(b)
    values = {k: theorem3_F(T, b, k, sign) for k in range(max(top + 1, 0))}
    return SeriesCoefficients("Fplus" if sign == 1 else "Fminus", values)
