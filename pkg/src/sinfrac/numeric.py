"""Sampling, error metrics, conditioning and the Fourier-fit coefficient oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import mpmath
import numpy as np
from scipy.stats import qmc

from .core import PhaseVector, SeriesCoefficients
from .errors import IllConditioned, IndexCapExceeded, RegionExhausted

FIXED_PROBES = (1 + 0.5j, -2 + 1j, 0.1 - 1.5j, complex(math.pi / 3, 0.0))
"""Points every sample set starts with (nudged if they violate the guard)."""

FREQUENCY_BAND_LIMIT = 45.0
"""Upper bound on ``|freq| * half_height`` for sampled points."""

GROWTH_BUDGET = 100.0
"""Largest tolerated ratio between a single term and the function it sums to."""

FIT_HEIGHT = 20.0
FIT_MAX_COUNT = 16
FIT_RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class SamplePlan:
    """Where and how many points to sample.

    Points lie in ``Re z in [-pi, pi]``, ``Im z in [-half_height, half_height]``
    and keep ``|sin(z - b_k)| >= sin(pole_guard)`` for every node.
    """

    count: int = 64
    half_height: float = 3.0
    pole_guard: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.half_height < 0:
            raise ValueError("half_height must be nonnegative")

    def with_height(self, half_height: float) -> "SamplePlan":
        return replace(self, half_height=half_height)


def band_height(
    base: float,
    max_frequency: float,
    term_growth: float = 0.0,
    natural_growth: float = 0.0,
    budget: float = GROWTH_BUDGET,
) -> float:
    """Clamp the sampling half-height so floating-point cancellation stays bounded.

    Two limits apply on top of ``base``: ``|freq| * height <= 45`` keeps every
    exponential finite and well scaled, and ``excess * height <= ln(budget)``
    where ``excess = term_growth - natural_growth`` is how much faster the
    largest individual term grows with ``|Im z|`` than the function itself.
    Without the second limit the terms of an expansion can exceed the sum by
    ``exp(excess * height)`` and the roundoff in their cancellation swamps
    the comparison.
    """
    height = base
    if max_frequency > 0:
        height = min(height, FREQUENCY_BAND_LIMIT / max_frequency)
    excess = term_growth - natural_growth
    if excess > 0:
        height = min(height, math.log(budget) / excess)
    return height


def _guard_ok(z: complex, centers: np.ndarray, bound: float) -> bool:
    return centers.size == 0 or float(np.min(np.abs(np.sin(z - centers)))) >= bound


def _nudge(probe: complex, centers: np.ndarray, bound: float, step: float) -> complex:
    """Move ``probe`` along the real axis by the smallest multiple of ``step`` that clears the guard."""
    if _guard_ok(probe, centers, bound):
        return probe
    for i in range(1, 10_000):
        for direction in (1, -1):
            shifted = probe + direction * i * step
            if _guard_ok(shifted, centers, bound):
                return shifted
    raise RegionExhausted("could not place a fixed probe outside the pole guard")


def sample_points(plan: SamplePlan, b: PhaseVector | Sequence[float] = ()) -> np.ndarray:
    """Deterministic guarded sample points for pointwise comparisons.

    The first points are :data:`FIXED_PROBES` (imaginary parts clipped to the
    band, then nudged along the real axis if guarded); the rest come from a
    scrambled Halton sequence seeded by ``plan.seed`` and are rejected when
    they fall inside the pole guard.  Raises :class:`RegionExhausted` if more
    than 99% of candidates are rejected.
    """
    centers = np.asarray(tuple(b), dtype=float)
    bound = math.sin(min(plan.pole_guard, math.pi / 2)) if plan.pole_guard > 0 else 0.0
    height = plan.half_height
    points: list[complex] = []
    for probe in FIXED_PROBES[: plan.count]:
        clipped = complex(probe.real, max(-height, min(height, probe.imag)))
        points.append(_nudge(clipped, centers, bound, max(plan.pole_guard, 1e-3) / 4))
    need = plan.count - len(points)
    if need > 0:
        sampler = qmc.Halton(d=2, scramble=True, rng=np.random.default_rng(plan.seed))
        drawn = accepted = 0
        while accepted < need:
            batch = sampler.random(max(2 * need, 64))
            zs = (2 * batch[:, 0] - 1) * math.pi + 1j * (2 * batch[:, 1] - 1) * height
            for z in zs:
                drawn += 1
                if _guard_ok(z, centers, bound):
                    points.append(complex(z))
                    accepted += 1
                    if accepted == need:
                        break
            if drawn >= 1000 and accepted < 0.01 * drawn:
                raise RegionExhausted(
                    f"pole guard rejected {drawn - accepted} of {drawn} candidate points"
                )
    return np.asarray(points, dtype=complex)


def rel_error(x, y):
    """``|x - y| / (1 + max(|x|, |y|))``, elementwise for arrays."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    out = np.abs(x - y) / (1.0 + np.maximum(np.abs(x), np.abs(y)))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ConditionEstimate:
    """How much precision the pole coefficients of a node set can cost.

    ``digits_lost = log10(pole_coeff_magnitude)`` is reported alongside results
    and never folded into tolerances.  With fewer than two nodes the
    separation is reported as 1 (the largest possible ``|sin|``) and the
    pole coefficient magnitude as 1 (empty product).
    """

    min_node_separation: float
    pole_coeff_magnitude: float
    digits_lost: float


def condition_estimate(b: PhaseVector | Sequence[float]) -> ConditionEstimate:
    arr = np.asarray(tuple(b), dtype=float)
    if arr.size < 2:
        return ConditionEstimate(1.0, 1.0, 0.0)
    diff = np.sin(arr[:, None] - arr[None, :])
    np.fill_diagonal(diff, 1.0)
    sep = float(np.min(np.abs(diff)))
    magnitude = float(np.max(1.0 / np.abs(np.prod(diff, axis=0))))
    return ConditionEstimate(sep, magnitude, math.log10(magnitude))


def fit_series_coefficients(
    a,
    b,
    half_plane: int,
    count: int,
    height: float = FIT_HEIGHT,
) -> SeriesCoefficients:
    """Recover leading half-plane series coefficients of ``F`` by discrete Fourier analysis.

    ``F(z) = prod sin(a_j - z) / prod sin(b_j - z)`` is sampled on the line
    ``Im z = half_plane * height`` at equispaced real parts over one period
    of ``F(z) exp(half_plane * i * kappa * z)``.  On that line the order-``j``
    coefficient is damped by ``exp(-2 j height)``; the samples are therefore
    computed with mpmath at a working precision large enough to resolve the
    damped coefficients, and the Fourier estimates are rescaled afterwards.
    The neglected tail is of relative size ``exp(-2 * height * count)``.

    Returns ``C_0..C_{count-1}`` for ``half_plane=+1`` and
    ``D_kappa..D_{kappa-count+1}`` for ``half_plane=-1``.  Raises
    :class:`IllConditioned` when the fitted series does not reproduce the
    samples to a relative residual of ``1e-8``.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    if half_plane not in (1, -1):
        raise ValueError("half_plane must be +1 or -1")
    if not 1 <= count <= FIT_MAX_COUNT:
        raise IndexCapExceeded(f"count must be between 1 and {FIT_MAX_COUNT}")
    kappa = len(a) - len(b)
    samples = 2 * count + 4
    digits = int(math.ceil(2 * height * count / math.log(10))) + 30
    with mpmath.workdps(digits):
        H = mpmath.mpf(height)
        xs = [mpmath.pi * l / samples for l in range(samples)]
        values = []
        for x in xs:
            z = mpmath.mpc(x, half_plane * H)
            num = mpmath.fprod(mpmath.sin(aj - z) for aj in a)
            den = mpmath.fprod(mpmath.sin(bj - z) for bj in b)
            values.append(num / den * mpmath.exp(half_plane * 1j * kappa * z))
        estimates = []
        for j in range(count):
            acc = mpmath.fsum(
                v * mpmath.exp(-half_plane * 2j * j * x) for v, x in zip(values, xs)
            )
            estimates.append(acc / samples)
        # reconstruct the sampled function from the fitted (damped) coefficients
        recon_err = mpmath.mpf(0)
        scale = mpmath.mpf(0)
        for v, x in zip(values, xs):
            approx = mpmath.fsum(
                c * mpmath.exp(half_plane * 2j * j * x) for j, c in enumerate(estimates)
            )
            recon_err = max(recon_err, abs(v - approx))
            scale = max(scale, abs(v))
        residual = float(recon_err / scale) if scale else 0.0
        coeffs = [complex(c * mpmath.exp(2 * j * H)) for j, c in enumerate(estimates)]
    if residual > FIT_RESIDUAL_LIMIT:
        raise IllConditioned(f"Fourier fit residual {residual:.2e} exceeds {FIT_RESIDUAL_LIMIT:g}")
    if half_plane == 1:
        return SeriesCoefficients("C", {j: c for j, c in enumerate(coeffs)})
    return SeriesCoefficients("D", {kappa - j: c for j, c in enumerate(coeffs)})
