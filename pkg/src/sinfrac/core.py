"""Domain types and trigonometric primitives shared by every identity builder.

Conventions used throughout the package:

* Phase vectors are 0-based tuples of real radians.  ``kappa = len(a) - len(b)``.
* A :class:`LaurentTrigPoly` stores ``T(z) = sum_t c_t exp(i t z)`` for
  ``t = -m..m``.  The same object doubles as a Laurent polynomial
  ``P(w) = sum_t c_t w**t`` under ``w = exp(i z)``.
* Every expansion is normalised into one term algebra: exponential terms
  ``coeff * exp(i*freq*z)`` and pole terms
  ``coeff * exp(i*mu*(z - center)) / sin(z - center)``.  Cotangents are
  stored as the pair ``mu = +1, mu = -1`` with half weight each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DegenerateNodes, PoleProximity

SEPARATION_MIN = 1e-3
"""Default margin (radians) for nodes to count as distinct modulo pi."""

CANONICAL_DROP = 1e-14
"""Relative magnitude below which a merged coefficient is treated as zero."""

DEFAULT_POLE_GUARD = 0.2
"""Default pole guard (radians) for evaluation entry points."""


# ---------------------------------------------------------------------------
# small exact helpers
# ---------------------------------------------------------------------------

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def i_power(p: int) -> complex:
    """Return ``1j**p`` exactly for any integer ``p``."""
    return _I_POWERS[p % 4]


def two_i_power(p: int, sign: int = 1) -> complex:
    """Return ``(sign*2i)**p`` exactly, for ``sign`` in {+1, -1}.

    The value is a power of two times a unit in {1, i, -1, -i}, so it is
    assembled with :func:`math.ldexp` instead of ``complex.__pow__``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    # (-2i)**p = 2**p * (-i)**p and (-i)**p = i**(-p)
    unit = i_power(p) if sign == 1 else i_power(-p)
    return complex(math.ldexp(unit.real, p), math.ldexp(unit.imag, p))


# ---------------------------------------------------------------------------
# PhaseVector
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhaseVector:
    """Ordered, finite real phases (radians).

    Used both for numerator phases ``a`` and denominator nodes ``b``.  Nodes
    must additionally be distinct modulo pi, which is checked on demand by
    :meth:`require_distinct` rather than at construction, because numerator
    phases may repeat freely.
    """

    phases: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        values = tuple(float(p) for p in np.ravel(np.asarray(self.phases, dtype=float)))
        if not all(math.isfinite(v) for v in values):
            raise ValueError("phases must be finite")
        object.__setattr__(self, "phases", values)

    @classmethod
    def coerce(cls, value: "PhaseVector | Iterable[float]") -> "PhaseVector":
        return value if isinstance(value, PhaseVector) else cls(tuple(value))

    def __len__(self) -> int:
        return len(self.phases)

    def __iter__(self) -> Iterator[float]:
        return iter(self.phases)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return PhaseVector(self.phases[index])
        return self.phases[index]

    @property
    def length(self) -> int:
        return len(self.phases)

    @property
    def total(self) -> float:
        """Sum of the phases."""
        return math.fsum(self.phases)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.phases, dtype=float)

    def without(self, index: int) -> "PhaseVector":
        """Copy with the entry at ``index`` removed."""
        return PhaseVector(self.phases[:index] + self.phases[index + 1 :])

    def min_separation(self) -> float:
        """Smallest ``|sin(b_j - b_k)|`` over pairs; ``inf`` for fewer than two phases."""
        arr = self.array
        if arr.size < 2:
            return math.inf
        diff = np.abs(np.sin(arr[:, None] - arr[None, :]))
        iu = np.triu_indices(arr.size, 1)
        return float(diff[iu].min())

    def is_distinct(self, separation_min: float = SEPARATION_MIN) -> bool:
        return self.min_separation() >= math.sin(separation_min)

    def require_distinct(self, separation_min: float = SEPARATION_MIN) -> "PhaseVector":
        """Return ``self`` or raise :class:`DegenerateNodes`."""
        sep = self.min_separation()
        if sep < math.sin(separation_min):
            raise DegenerateNodes(
                f"nodes coincide modulo pi: min |sin(b_j-b_k)| = {sep:.3g} "
                f"< sin({separation_min:g})"
            )
        return self


def node_sine_products(b: PhaseVector | Sequence[float]) -> np.ndarray:
    """Return ``S_k = prod_{j != k} sin(b_k - b_j)`` for every node ``k``."""
    arr = np.asarray(tuple(b), dtype=float)
    diff = np.sin(arr[:, None] - arr[None, :])
    np.fill_diagonal(diff, 1.0)
    return np.prod(diff, axis=1)


def sine_product_at(phases: PhaseVector | Sequence[float], z) -> np.ndarray | complex:
    """Evaluate ``prod_j sin(z - phases_j)`` (vectorised over ``z``)."""
    arr = np.asarray(tuple(phases), dtype=float)
    zz = np.asarray(z, dtype=complex)
    out = np.prod(np.sin(zz[..., None] - arr), axis=-1)
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# LaurentTrigPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentTrigPoly:
    """Exponential polynomial ``T(z) = sum_{t=-m}^{m} c_t exp(i t z)``.

    ``coeffs`` lists ``c_{-m}, ..., c_m``.  The degree is canonical: the
    outermost pair is trimmed while both entries are exactly zero, so
    ``c_{-m}`` or ``c_m`` is nonzero unless the polynomial vanishes.
    """

    coeffs: tuple[complex, ...] = (0j,)

    def __post_init__(self) -> None:
        values = [complex(c) for c in self.coeffs]
        if not values:
            values = [0j]
        if len(values) % 2 == 0:
            raise ValueError("coefficient list must have odd length (indices -m..m)")
        while len(values) > 1 and values[0] == 0 and values[-1] == 0:
            values = values[1:-1]
        object.__setattr__(self, "coeffs", tuple(values))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_harmonics(cls, harmonics: Mapping[int, complex]) -> "LaurentTrigPoly":
        """Build from a sparse ``{t: c_t}`` mapping."""
        items = {int(t): complex(c) for t, c in harmonics.items()}
        m = max((abs(t) for t in items), default=0)
        dense = [0j] * (2 * m + 1)
        for t, c in items.items():
            dense[t + m] += c
        return cls(tuple(dense))

    @classmethod
    def constant(cls, value: complex) -> "LaurentTrigPoly":
        return cls((complex(value),))

    @classmethod
    def monomial(cls, t: int, coeff: complex = 1.0) -> "LaurentTrigPoly":
        """``coeff * exp(i t z)``."""
        return cls.from_harmonics({t: coeff})

    @classmethod
    def sine_harmonic(cls, m: int, phase: float) -> "LaurentTrigPoly":
        """``sin(m z - phase)``."""
        if m == 0:
            return cls.constant(-math.sin(phase))
        return cls.from_harmonics(
            {m: np.exp(-1j * phase) / 2j, -m: -np.exp(1j * phase) / 2j}
        )

    @classmethod
    def sine_product(cls, phases: PhaseVector | Sequence[float]) -> "LaurentTrigPoly":
        """``prod_t sin(z - a_t)`` expanded into harmonics."""
        result = cls.constant(1.0)
        for a in phases:
            factor = cls.from_harmonics({1: np.exp(-1j * a) / 2j, -1: -np.exp(1j * a) / 2j})
            result = result * factor
        return result

    @classmethod
    def cos_series(cls, coeffs: Sequence[float]) -> "LaurentTrigPoly":
        """``c_0/2 + sum_{t>=1} c_t cos(t z)``."""
        harm: dict[int, complex] = {0: complex(coeffs[0]) / 2} if len(coeffs) else {}
        for t, c in enumerate(coeffs[1:], start=1):
            harm[t] = harm.get(t, 0) + c / 2
            harm[-t] = harm.get(-t, 0) + c / 2
        return cls.from_harmonics(harm)

    @classmethod
    def sin_series(cls, coeffs: Sequence[float]) -> "LaurentTrigPoly":
        """``sum_{t>=1} c_t sin(t z)``; ``coeffs[0]`` is ignored."""
        harm: dict[int, complex] = {}
        for t, c in enumerate(coeffs[1:], start=1):
            harm[t] = c / 2j
            harm[-t] = -c / 2j
        return cls.from_harmonics(harm)

    # -- accessors ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def coeff(self, t: int) -> complex:
        m = self.degree
        return self.coeffs[t + m] if -m <= t <= m else 0j

    def harmonics(self) -> dict[int, complex]:
        """Nonzero coefficients as a ``{t: c_t}`` mapping."""
        m = self.degree
        return {i - m: c for i, c in enumerate(self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, z):
        """Evaluate ``T(z)`` (vectorised over ``z``)."""
        zz = np.asarray(z, dtype=complex)
        m = self.degree
        t = np.arange(-m, m + 1)
        out = np.exp(1j * np.multiply.outer(zz, t)) @ np.asarray(self.coeffs)
        return out if np.ndim(out) else complex(out)

    def evaluate_w(self, w):
        """Evaluate as a Laurent polynomial ``P(w) = sum_t c_t w**t``."""
        ww = np.asarray(w, dtype=complex)
        m = self.degree
        t = np.arange(-m, m + 1)
        out = np.power.outer(ww, t.astype(float)) @ np.asarray(self.coeffs)
        return out if np.ndim(out) else complex(out)

    # -- arithmetic -----------------------------------------------------------

    def _padded(self, m: int) -> np.ndarray:
        pad = m - self.degree
        return np.pad(np.asarray(self.coeffs), (pad, pad))

    def __add__(self, other: "LaurentTrigPoly") -> "LaurentTrigPoly":
        m = max(self.degree, other.degree)
        return LaurentTrigPoly(tuple(self._padded(m) + other._padded(m)))

    def __neg__(self) -> "LaurentTrigPoly":
        return LaurentTrigPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LaurentTrigPoly") -> "LaurentTrigPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentTrigPoly):
            return LaurentTrigPoly(tuple(np.convolve(self.coeffs, other.coeffs)))
        return LaurentTrigPoly(tuple(complex(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def reflected(self) -> "LaurentTrigPoly":
        """``T(-z)``: coefficient ``c_t`` moves to index ``-t``."""
        return LaurentTrigPoly(tuple(reversed(self.coeffs)))


def split_periodic(T: LaurentTrigPoly) -> tuple[LaurentTrigPoly, LaurentTrigPoly]:
    """Split ``T`` into its pi-periodic and pi-antiperiodic parts.

    The periodic part keeps the even harmonics and the antiperiodic part the
    odd ones, so ``T_p(z) = (T(z) + T(z+pi))/2``.
    """
    m = T.degree
    even = [c if (i - m) % 2 == 0 else 0j for i, c in enumerate(T.coeffs)]
    odd = [c if (i - m) % 2 else 0j for i, c in enumerate(T.coeffs)]
    return LaurentTrigPoly(tuple(even)), LaurentTrigPoly(tuple(odd))


# ---------------------------------------------------------------------------
# Term algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpTerm:
    """``coeff * exp(i * freq * z)``."""

    coeff: complex
    freq: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "freq", int(self.freq))

    def __call__(self, z):
        return self.coeff * np.exp(1j * self.freq * np.asarray(z, dtype=complex))


@dataclass(frozen=True)
class PoleTerm:
    """``coeff * exp(i * phase_freq * (z - center)) / sin(z - center)``."""

    node_index: int
    center: float
    coeff: complex
    phase_freq: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "node_index", int(self.node_index))
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "phase_freq", int(self.phase_freq))

    def __call__(self, z):
        u = np.asarray(z, dtype=complex) - self.center
        return self.coeff * np.exp(1j * self.phase_freq * u) / np.sin(u)


def _freeze(value: Any) -> Any:
    if isinstance(value, PhaseVector):
        return value.phases
    if isinstance(value, LaurentTrigPoly):
        return tuple(sorted(value.harmonics().items()))
    if isinstance(value, (list, tuple, np.ndarray)):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


@dataclass(frozen=True)
class Provenance:
    """Identity-family tag plus the parameters an expansion was built from."""

    family: str
    params: tuple[tuple[str, Any], ...] = ()

    @classmethod
    def make(cls, family: str, **params: Any) -> "Provenance":
        return cls(family, tuple(sorted((k, _freeze(v)) for k, v in params.items())))

    def get(self, key: str, default: Any = None) -> Any:
        return dict(self.params).get(key, default)


def check_pole_guard(centers: Sequence[float], z, pole_guard: float) -> None:
    """Raise :class:`PoleProximity` if ``|sin(z - c)| < sin(pole_guard)`` for some center."""
    if pole_guard <= 0 or len(centers) == 0:
        return
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    gap = np.abs(np.sin(zz[:, None] - np.asarray(centers, dtype=float)[None, :]))
    bound = math.sin(min(pole_guard, math.pi / 2))
    if np.any(gap < bound):
        i, k = np.unravel_index(int(np.argmin(gap)), gap.shape)
        raise PoleProximity(
            f"pole proximity: z={complex(zz[i])} is within {pole_guard:g} of node {centers[k]!r}"
        )


@dataclass(frozen=True)
class ClosedFormExpansion:
    """Sum of exponential terms and simple-pole terms.

    Use :meth:`build` to obtain the canonical form (merged, thresholded and
    sorted terms); the plain constructor stores terms verbatim, which the
    document parser relies on for exact round trips.
    """

    exp_terms: tuple[ExpTerm, ...] = ()
    pole_terms: tuple[PoleTerm, ...] = ()
    provenance: Provenance = field(default_factory=lambda: Provenance("empty"))

    def __post_init__(self) -> None:
        object.__setattr__(self, "exp_terms", tuple(self.exp_terms))
        object.__setattr__(self, "pole_terms", tuple(self.pole_terms))

    @classmethod
    def build(
        cls,
        exp_terms: Iterable[ExpTerm] = (),
        pole_terms: Iterable[PoleTerm] = (),
        provenance: Provenance | None = None,
        drop_tol: float = CANONICAL_DROP,
    ) -> "ClosedFormExpansion":
        """Merge like terms, drop roundoff-level coefficients and sort."""
        exp_acc: dict[int, complex] = {}
        for term in exp_terms:
            exp_acc[term.freq] = exp_acc.get(term.freq, 0j) + term.coeff
        pole_acc: dict[tuple[int, int], complex] = {}
        centers: dict[int, float] = {}
        for term in pole_terms:
            known = centers.setdefault(term.node_index, term.center)
            if known != term.center:
                raise ValueError(f"node {term.node_index} has two different centers")
            key = (term.node_index, term.phase_freq)
            pole_acc[key] = pole_acc.get(key, 0j) + term.coeff
        scale = max(
            [abs(c) for c in exp_acc.values()] + [abs(c) for c in pole_acc.values()],
            default=0.0,
        )
        cutoff = drop_tol * scale

        def keep(c: complex) -> bool:
            return c != 0 and abs(c) > cutoff

        exps = tuple(ExpTerm(c, f) for f, c in sorted(exp_acc.items()) if keep(c))
        poles = tuple(
            PoleTerm(k, centers[k], c, mu) for (k, mu), c in sorted(pole_acc.items()) if keep(c)
        )
        return cls(exps, poles, provenance or Provenance("anonymous"))

    # -- evaluation ---------------------------------------------------------

    def centers(self) -> dict[int, float]:
        return {t.node_index: t.center for t in self.pole_terms}

    def evaluate(self, z, pole_guard: float = DEFAULT_POLE_GUARD):
        """Evaluate at a point or array of points."""
        zz = np.asarray(z, dtype=complex)
        check_pole_guard(list(self.centers().values()), zz, pole_guard)
        total = np.zeros(zz.shape, dtype=complex)
        for term in self.exp_terms:
            total = total + term(zz)
        for term in self.pole_terms:
            total = total + term(zz)
        return total if total.ndim else complex(total)

    __call__ = evaluate

    # -- structure ----------------------------------------------------------

    def is_canonical(self) -> bool:
        again = ClosedFormExpansion.build(self.exp_terms, self.pole_terms, self.provenance)
        return again == self

    def exp_part(self) -> "ClosedFormExpansion":
        return ClosedFormExpansion(self.exp_terms, (), self.provenance)

    def pole_part(self) -> "ClosedFormExpansion":
        return ClosedFormExpansion((), self.pole_terms, self.provenance)

    def max_frequency(self) -> int:
        """Largest ``|freq|`` among exponential terms and ``|mu|`` among pole terms."""
        return max(
            [abs(t.freq) for t in self.exp_terms] + [abs(t.phase_freq) for t in self.pole_terms],
            default=0,
        )

    def growth_rate(self) -> float:
        """Largest exponential rate at which any single term grows with ``|Im z|``."""
        rates = [abs(t.freq) for t in self.exp_terms]
        rates += [abs(t.phase_freq) - 1 for t in self.pole_terms]
        return float(max(rates, default=0))

    def scaled(self, factor: complex) -> "ClosedFormExpansion":
        return ClosedFormExpansion.build(
            (ExpTerm(t.coeff * factor, t.freq) for t in self.exp_terms),
            (PoleTerm(t.node_index, t.center, t.coeff * factor, t.phase_freq) for t in self.pole_terms),
            self.provenance,
        )

    def __neg__(self) -> "ClosedFormExpansion":
        return self.scaled(-1)

    def __add__(self, other: "ClosedFormExpansion") -> "ClosedFormExpansion":
        return ClosedFormExpansion.build(
            self.exp_terms + other.exp_terms, self.pole_terms + other.pole_terms, self.provenance
        )

    def with_provenance(self, provenance: Provenance) -> "ClosedFormExpansion":
        return ClosedFormExpansion(self.exp_terms, self.pole_terms, provenance)

    def term_map(self) -> dict[tuple, complex]:
        """``{('exp', freq): c, ('pole', k, mu): c}`` view used for comparisons."""
        out: dict[tuple, complex] = {("exp", t.freq): t.coeff for t in self.exp_terms}
        out.update({("pole", t.node_index, t.phase_freq): t.coeff for t in self.pole_terms})
        return out

    def coefficient_distance(self, other: "ClosedFormExpansion") -> float:
        """Largest term-by-term coefficient mismatch, relative to the coefficient scale.

        Each matching pair of terms contributes ``|x - y| / scale`` where
        ``scale`` is the largest coefficient magnitude in either expansion.
        A shared scale is used because small coefficients are often computed
        with cancellation (e.g. a numerator evaluated at a node near one of
        its zeros), so their individual relative error says more about the
        evaluation than about the identity.  Terms present on one side only
        count as a mismatch of 1 unless they are at roundoff level
        (``10 * CANONICAL_DROP * scale``).
        """
        mine, theirs = self.term_map(), other.term_map()
        scale = max([abs(c) for c in mine.values()] + [abs(c) for c in theirs.values()], default=0.0)
        if scale == 0.0:
            return 0.0
        worst = 0.0
        for key in set(mine) | set(theirs):
            x, y = mine.get(key), theirs.get(key)
            if x is None or y is None:
                lone = abs(x if y is None else y)
                worst = max(worst, 0.0 if lone <= 10 * CANONICAL_DROP * scale else 1.0)
                continue
            worst = max(worst, abs(x - y) / scale)
        return worst

    def close_to(self, other: "ClosedFormExpansion", rel_tol: float = 1e-12) -> bool:
        """Term-by-term equality up to ``rel_tol`` (see :meth:`coefficient_distance`)."""
        if self.centers().keys() & other.centers().keys():
            for k in self.centers().keys() & other.centers().keys():
                if self.centers()[k] != other.centers()[k]:
                    return False
        return self.coefficient_distance(other) <= rel_tol


@dataclass(frozen=True)
class SeriesCoefficients:
    """Indexed complex sequence such as ``C_j``, ``D_j`` or ``E_j``."""

    kind: str
    values: tuple[tuple[int, complex], ...]

    KINDS = ("C", "D", "Omega", "OmegaBar", "Eplus", "Eminus", "Fplus", "Fminus")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        items = self.values.items() if isinstance(self.values, Mapping) else self.values
        object.__setattr__(
            self, "values", tuple(sorted((int(i), complex(c)) for i, c in items))
        )

    def __getitem__(self, index: int) -> complex:
        return dict(self.values)[index]

    def get(self, index: int, default: complex = 0j) -> complex:
        return dict(self.values).get(index, default)

    def indices(self) -> list[int]:
        return [i for i, _ in self.values]

    def as_dict(self) -> dict[int, complex]:
        return dict(self.values)

    def __len__(self) -> int:
        return len(self.values)


# ---------------------------------------------------------------------------
# Evaluation entry points
# ---------------------------------------------------------------------------


def direct_ratio(a, b, z, pole_guard: float = DEFAULT_POLE_GUARD):
    """Evaluate ``prod_j sin(a_j - z) / prod_j sin(b_j - z)`` directly.

    Vectorised over ``z``.  Raises :class:`PoleProximity` when ``z`` is within
    ``pole_guard`` of a node (pass ``pole_guard=0`` to disable the check).
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    zz = np.asarray(z, dtype=complex)
    check_pole_guard(b.phases, zz, pole_guard)
    num = np.prod(np.sin(a.array - zz[..., None]), axis=-1)
    den = np.prod(np.sin(b.array - zz[..., None]), axis=-1)
    out = num / den
    return out if out.ndim else complex(out)


def trig_ratio(T: LaurentTrigPoly, b, z, pole_guard: float = DEFAULT_POLE_GUARD):
    """Evaluate ``T(z) / prod_j sin(z - b_j)`` directly (vectorised)."""
    b = PhaseVector.coerce(b)
    zz = np.asarray(z, dtype=complex)
    check_pole_guard(b.phases, zz, pole_guard)
    out = np.asarray(T(zz)) / np.asarray(sine_product_at(b, zz))
    return out if np.ndim(out) else complex(out)


def eval_expansion(e: ClosedFormExpansion, z, pole_guard: float = DEFAULT_POLE_GUARD):
    """Sum every term of ``e`` at ``z``; see :meth:`ClosedFormExpansion.evaluate`."""
    return e.evaluate(z, pole_guard)
