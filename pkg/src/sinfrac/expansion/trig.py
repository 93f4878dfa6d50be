"""Expansions of ``T(z) / prod_k sin(z - b_k)`` for trigonometric numerators.

Indexing: ``b`` holds the ``n + 1`` nodes ``b_0..b_n`` (so ``n = len(b) - 1``)
and, for sine-product numerators, ``a`` holds ``a_0..a_r``.  Node weights are
``S_k = prod_{j != k} sin(b_k - b_j)``.
"""

from __future__ import annotations

import cmath
from typing import Sequence

import numpy as np

from ..core import (
    ClosedFormExpansion,
    ExpTerm,
    LaurentTrigPoly,
    PhaseVector,
    PoleTerm,
    Provenance,
    i_power,
    node_sine_products,
    split_periodic,
)
from ..errors import DegreeMismatch, ParityViolation
from ..sympoly import complete_homogeneous, elementary_symmetric, theorem3_E, theorem3_F

VARIANTS = ("M", "P", "PM", "PM+", "PM-")


def parity_shift(t: int, n: int) -> int:
    """``sign(t) * ((t + n) mod 2)`` with ``sign(0) = +1``."""
    return (1 if t >= 0 else -1) * ((t + n) % 2)


def _nodes(b) -> tuple[PhaseVector, int, np.ndarray]:
    b = PhaseVector.coerce(b)
    if len(b) < 1:
        raise ValueError("at least one node is required")
    b.require_distinct()
    return b, len(b) - 1, node_sine_products(b)


def _check_theta(m: int, n: int, theta: int) -> None:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if theta > m + n or (m + n - theta) % 2:
        raise ParityViolation(f"theta={theta} must be <= m+n={m + n} with the same parity")


def exp_monomial_expand(m: int, b, theta: int, sign: int = 1) -> ClosedFormExpansion:
    """Expand ``exp(sign*i*m*z) / prod_k sin(z - b_k)``.

    For ``sign=+1`` the entire part is ``sum_j E_j^+ exp(i(m-n-2j-1)z)`` over
    ``j < (m-n-theta)/2`` and each node carries
    ``exp(i m b_k) / S_k`` at ``mu = theta``; ``sign=-1`` mirrors this with
    ``E_j^-`` and ``mu = -theta``.
    """
    b, n, S = _nodes(b)
    _check_theta(m, n, theta)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    count = (m - n - theta) // 2
    exps: list[ExpTerm] = []
    if count > 0:
        E = theorem3_E(b, count - 1, sign)
        exps = [ExpTerm(E[j], sign * (m - n - 2 * j - 1)) for j in range(count)]
    poles = [
        PoleTerm(k, bk, cmath.exp(sign * 1j * m * bk) / S[k], sign * theta)
        for k, bk in enumerate(b)
    ]
    prov = Provenance.make("exp-monomial", m=m, b=b, theta=theta, sign=sign)
    return ClosedFormExpansion.build(exps, poles, prov)


def trig_monomial_expand(m: int, a: float, b, theta: int) -> ClosedFormExpansion:
    """Expand ``sin(m z - a) / prod_k sin(z - b_k)`` for an admissible ``theta``.

    Poles are ``sin(m b_k - a + theta (z - b_k)) / (S_k sin(z - b_k))``; the
    entire part vanishes when ``theta >= m - n``.
    """
    b, n, _ = _nodes(b)
    _check_theta(m, n, theta)
    up = exp_monomial_expand(m, b, theta, +1)
    down = exp_monomial_expand(m, b, theta, -1)
    combined = up.scaled(cmath.exp(-1j * a) / 2j) + down.scaled(-cmath.exp(1j * a) / 2j)
    return combined.with_provenance(Provenance.make("trig-monomial", m=m, a=a, b=b, theta=theta))


def general_expand(T: LaurentTrigPoly, b, variant: str = "PM") -> ClosedFormExpansion:
    """Expand ``T(z) / prod_k sin(z - b_k)`` for a numerator of any degree.

    ``variant`` chooses how each harmonic's pole phase is assigned:

    * ``"M"``: harmonic ``t`` contributes ``c_t exp(i t b_k) / S_k`` at
      ``mu = parity_shift(t, n)``; entire part uses ``F_k`` for ``k >= 1``.
    * ``"P"``: the same with ``mu = -parity_shift(t, n)``; the entire part
      also includes the constant ``F_0^+ + F_0^-``.
    * ``"PM"``: the average of the two one-sided forms below; the
      pi-periodic/antiperiodic parts of ``T`` are evaluated at the nodes, one
      of them over ``sin`` and the other over ``cot``, according to the parity
      of ``n``.
    * ``"PM+"`` / ``"PM-"``: constant ``F_0^-`` / ``F_0^+`` with the
      ``cot``-type part replaced by ``exp(+-i(z - b_k)) / sin(z - b_k)``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    b, n, S = _nodes(b)
    m = T.degree
    top = m - n - 1
    F = {(k, s): theorem3_F(T, b, k, s) for k in range(max(top + 1, 0)) for s in (1, -1)}
    exps: list[ExpTerm] = []
    for k in range(1, top + 1):
        exps += [ExpTerm(F[k, 1], k), ExpTerm(F[k, -1], -k)]
    f0_plus, f0_minus = F.get((0, 1), 0j), F.get((0, -1), 0j)
    poles: list[PoleTerm] = []
    if variant in ("M", "P"):
        flip = 1 if variant == "M" else -1
        if variant == "P":
            exps.append(ExpTerm(f0_plus + f0_minus, 0))
        for t, c in T.harmonics().items():
            mu = flip * parity_shift(t, n)
            for k, bk in enumerate(b):
                poles.append(PoleTerm(k, bk, c * cmath.exp(1j * t * bk) / S[k], mu))
    else:
        periodic, antiperiodic = split_periodic(T)
        # the part sitting over a plain sine: T_p for even n, T_a for odd n
        plain, paired = (periodic, antiperiodic) if n % 2 == 0 else (antiperiodic, periodic)
        if variant == "PM":
            exps.append(ExpTerm((f0_plus + f0_minus) / 2, 0))
            shifts = ((1, 0.5), (-1, 0.5))
        else:
            side = 1 if variant == "PM+" else -1
            exps.append(ExpTerm(f0_minus if side == 1 else f0_plus, 0))
            shifts = ((side, 1.0),)
        for k, bk in enumerate(b):
            poles.append(PoleTerm(k, bk, plain(bk) / S[k], 0))
            value = paired(bk) / S[k]
            for mu, weight in shifts:
                poles.append(PoleTerm(k, bk, weight * value, mu))
    prov = Provenance.make(f"general-{variant.lower()}", T=T, b=b, variant=variant)
    return ClosedFormExpansion.build(exps, poles, prov)


def sine_product_coefficient(a, b, t: int, sign: int) -> complex:
    """``F^{sign}_{kappa-2t}`` for the numerator ``prod_j sin(z - a_j)``.

    Computed from symmetric functions of the phases:
    ``2**-kappa (sign*i)**-kappa exp(sign*i(B - A))
    * sum_{m=0}^{t} (-1)**(t-m) e_{t-m}(exp(sign*2ia)) h_m(exp(sign*2ib))``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    kappa = len(a) - len(b)
    if not 0 <= 2 * t <= kappa:
        raise ValueError("need 0 <= 2t <= kappa")
    e = elementary_symmetric(np.exp(sign * 2j * a.array), t)
    h = complete_homogeneous(np.exp(sign * 2j * b.array), t)
    inner = sum((-1) ** (t - m) * e[t - m] * h[m] for m in range(t + 1))
    unit = i_power(-kappa) if sign == 1 else i_power(kappa)
    return 2.0**-kappa * unit * cmath.exp(sign * 1j * (b.total - a.total)) * inner


def sine_product_expand(a, b) -> ClosedFormExpansion:
    """Expand ``prod_{t=0}^{r} sin(z - a_t) / prod_{k=0}^{n} sin(z - b_k)``.

    With ``kappa = r - n = len(a) - len(b)``: for odd ``kappa`` every node
    carries ``T(b_k)/S_k`` at ``mu = 0``; for even ``kappa`` it carries
    ``T(b_k)/S_k * cot(z - b_k)`` and the entire part gains the constant
    ``(F_0^+ + F_0^-)/2``.  The other entire terms are the conjugate pairs
    ``F^+_{kappa-2t} exp(i(kappa-2t)z) + F^-_{kappa-2t} exp(-i(kappa-2t)z)``.
    """
    a = PhaseVector.coerce(a)
    b, n, S = _nodes(b)
    kappa = len(a) - len(b)
    exps: list[ExpTerm] = []
    lam = kappa // 2
    for t in range(0, lam + 1):
        freq = kappa - 2 * t
        plus, minus = sine_product_coefficient(a, b, t, 1), sine_product_coefficient(a, b, t, -1)
        if freq == 0:
            exps.append(ExpTerm((plus + minus) / 2, 0))
        else:
            exps += [ExpTerm(plus, freq), ExpTerm(minus, -freq)]
    poles: list[PoleTerm] = []
    for k, bk in enumerate(b):
        value = float(np.prod(np.sin(bk - a.array))) / S[k]
        if kappa % 2:
            poles.append(PoleTerm(k, bk, value, 0))
        else:
            poles += [PoleTerm(k, bk, value / 2, 1), PoleTerm(k, bk, value / 2, -1)]
    return ClosedFormExpansion.build(exps, poles, Provenance.make("sine-product", a=a, b=b))


def symmetric_series(kind: str, coeffs: Sequence[float]) -> LaurentTrigPoly:
    """Laurent polynomial with ``c_{-t} = c_t`` (cos) or ``c_{-t} = -c_t`` (sin)."""
    if kind not in ("cos", "sin"):
        raise ValueError("kind must be 'cos' or 'sin'")
    coeffs = [float(c) for c in coeffs]
    if kind == "sin" and coeffs and coeffs[0] != 0:
        raise DegreeMismatch("a sine series has no constant term; coeffs[0] must be 0")
    reflect = 1.0 if kind == "cos" else -1.0
    harm: dict[int, complex] = {}
    for t, c in enumerate(coeffs):
        if c == 0:
            continue
        harm[t] = c
        if t:
            harm[-t] = reflect * c
    return LaurentTrigPoly.from_harmonics(harm)


def cos_sin_series_expand(kind: str, coeffs: Sequence[float], b) -> ClosedFormExpansion:
    """Expand a real cosine or sine series over ``prod_k sin(z - b_k)``.

    ``coeffs[t]`` is the coefficient of ``cos(tz)`` or ``sin(tz)``; for the
    cosine series the constant term is ``coeffs[0] / 2``.  The coefficients are
    symmetrised to ``c_{-t} = +-c_t``, ``F_k^+-`` are taken from the resulting
    Laurent polynomial, and node ``k`` carries
    ``sum_t c_t cos(t b_k + parity_shift(t,n)(z - b_k)) / (2 S_k sin(z - b_k))``
    (``sin`` in place of ``cos`` for a sine series).
    """
    b, n, S = _nodes(b)
    T = symmetric_series(kind, coeffs)
    m = T.degree
    pref = 0.5 if kind == "cos" else 1 / 2j
    exps: list[ExpTerm] = []
    for k in range(1, m - n):
        exps += [
            ExpTerm(pref * theorem3_F(T, b, k, 1), k),
            ExpTerm(pref * theorem3_F(T, b, k, -1), -k),
        ]
    poles: list[PoleTerm] = []
    for t, c in T.harmonics().items():
        mu = parity_shift(t, n)
        for k, bk in enumerate(b):
            up, down = cmath.exp(1j * t * bk), cmath.exp(-1j * t * bk)
            if kind == "cos":
                pair = (c * up / 2, c * down / 2)
            else:
                pair = (c * up / 2j, -c * down / 2j)
            poles.append(PoleTerm(k, bk, pair[0] / (2 * S[k]), mu))
            poles.append(PoleTerm(k, bk, pair[1] / (2 * S[k]), -mu))
    prov = Provenance.make(f"{kind}-series", coeffs=tuple(float(c) for c in coeffs), b=b)
    return ClosedFormExpansion.build(exps, poles, prov)
