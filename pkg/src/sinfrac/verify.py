"""Seeded verification campaigns for every identity builder.

A campaign draws random instances of one identity family, builds the
closed form through :mod:`sinfrac.expansion` and compares it against an
independent evaluation (direct products of sines, a second closed form or
a brute-force sum).  Results are aggregated into a
:class:`VerificationReport` whose JSON form is byte-identical for identical
inputs.

Size conventions per family:

* ``F(z)`` families (``braaksma``, ``meijer*``, ``genptolemy``): ``r = len(a)``
  and ``n = len(b)``.
* Every other family uses the ``n + 1`` nodes ``b_0..b_n``; ``r`` is the
  numerator degree ``m`` (or ``len(a) - 1`` for sine-product numerators).
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import expansion as X
from .core import (
    ClosedFormExpansion,
    LaurentTrigPoly,
    PhaseVector,
    direct_ratio,
    sine_product_at,
    trig_ratio,
)
from .errors import SinfracError
from .numeric import (
    SamplePlan,
    band_height,
    condition_estimate,
    fit_series_coefficients,
    rel_error,
    sample_points,
)
from .sympoly import braaksma_C, braaksma_D, omega

MAX_SIZE = 12
"""Largest ``r`` or ``n`` a campaign may request."""

MIN_TOLERANCE = 1e-12
DEFAULT_HEIGHT = 3.0
DEFAULT_POLE_GUARD = 0.2
DEFAULT_MIN_SEPARATION = 0.05
STRESS_MIN_SEPARATION = 2e-3
DIGITS_LOST_WARNING = 3.0
_SEED_MASK = (1 << 64) - 1


# ---------------------------------------------------------------------------
# Exact serialization helpers
# ---------------------------------------------------------------------------


def hexify(value: Any) -> Any:
    """Convert parameters to JSON-ready values with floats as hexadecimal text."""
    if isinstance(value, PhaseVector):
        return [float(x).hex() for x in value]
    if isinstance(value, LaurentTrigPoly):
        return {str(t): hexify(c) for t, c in sorted(value.harmonics().items())}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value).hex()
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real).hex(), float(value.imag).hex()]
    if isinstance(value, dict):
        return {str(k): hexify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [hexify(v) for v in value]
    return value


def unhex_phases(values: Sequence[str]) -> tuple[float, ...]:
    """Inverse of :func:`hexify` for a list of real phases."""
    return tuple(float.fromhex(v) for v in values)


# ---------------------------------------------------------------------------
# Campaign description and result
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceSpec:
    """What to verify and how hard.

    ``r_range`` and ``n_range`` are inclusive; ``None`` selects the family's
    default.  ``k_policy`` lists the split indices to try for families that
    take one (``None`` selects the family's default range); indices outside
    a family's admissible range are skipped.  ``points`` overrides the
    family's sample count.  ``duplicate_nodes`` makes the last node equal to
    the first, which exercises the degenerate-node error path.
    """

    identity: str
    r_range: tuple[int, int] | None = None
    n_range: tuple[int, int] | None = None
    k_policy: tuple[int, ...] | None = None
    seed: int = 0
    trials: int = 200
    tolerance: float = 1e-9
    points: int | None = None
    min_separation: float = DEFAULT_MIN_SEPARATION
    duplicate_nodes: bool = False

    def __post_init__(self) -> None:
        if not self.tolerance >= MIN_TOLERANCE:
            raise ValueError(f"tolerance must be at least {MIN_TOLERANCE:g}")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        for name in ("r_range", "n_range"):
            rng = getattr(self, name)
            if rng is None:
                continue
            lo, hi = rng
            if not 0 <= lo <= hi <= MAX_SIZE:
                raise ValueError(f"{name} must satisfy 0 <= lo <= hi <= {MAX_SIZE}")
        if self.points is not None and self.points < 1:
            raise ValueError("points must be positive")
        if not 0 < self.min_separation < math.pi / 2:
            raise ValueError("min_separation must lie in (0, pi/2)")


@dataclass(frozen=True)
class VerificationReport:
    """Aggregated outcome of a campaign or coefficient cross-check.

    ``checks`` maps each comparison label to ``[max_error, tolerance]``.
    ``failing`` holds the worst failing comparison with its parameters in
    hexadecimal-float text (and the sample point, if any), enough to rebuild
    the instance bit for bit.  ``errors`` lists trials that raised a
    precondition error.  ``warnings`` never affect ``passed``.
    """

    identity: str
    seed: int
    trials: int
    tolerance: float
    max_error: float
    passed: bool
    checks: dict[str, list[float]] = field(default_factory=dict)
    failing: dict[str, Any] | None = None
    errors: list[dict[str, Any]] = field(default_factory=list)
    condition: dict[str, float] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} {self.identity}: trials={self.trials} "
            f"max_error={self.max_error:.3e} tol={self.tolerance:.1e}"
        )
        if self.errors:
            line += f" errors={len(self.errors)}"
        return line


# ---------------------------------------------------------------------------
# Comparisons produced by a trial
# ---------------------------------------------------------------------------


@dataclass
class Check:
    """One comparison inside a trial.

    ``kind`` is ``"points"`` (``lhs``/``rhs`` are vectorised functions of
    ``z``), ``"value"`` (two numbers) or ``"distance"`` (``lhs`` is already a
    nonnegative discrepancy).  ``tolerance`` overrides the campaign tolerance
    for checks that have their own criterion.
    """

    label: str
    kind: str
    lhs: Any
    rhs: Any = None
    height: float = DEFAULT_HEIGHT
    centers: tuple[float, ...] = ()
    absolute: bool = False
    tolerance: float | None = None


class Trial:
    """Random draws and bookkeeping for a single trial."""

    def __init__(self, spec: InstanceSpec, index: int, r: int, n: int, ks: Sequence[int] | None):
        self.spec = spec
        self.index = index
        self.rng = np.random.default_rng([spec.seed & _SEED_MASK, index])
        self.r = r
        self.n = n
        self.ks = ks
        self.params: dict[str, Any] = {"r": r, "n": n}
        self.nodes: PhaseVector = PhaseVector(())

    def phases(self, count: int, name: str) -> PhaseVector:
        vec = PhaseVector.coerce(self.rng.uniform(0.0, math.pi, count))
        self.params[name] = vec
        return vec

    def node_phases(self, count: int, name: str = "b") -> PhaseVector:
        """Nodes in ``[0, pi)`` with ``|sin(b_j - b_k)| >= sin(min_separation)``."""
        bound = math.sin(self.spec.min_separation)
        for _ in range(10_000):
            draw = self.rng.uniform(0.0, math.pi, count)
            diff = np.abs(np.sin(draw[:, None] - draw[None, :]))
            np.fill_diagonal(diff, 1.0)
            if count < 2 or diff.min() >= bound:
                break
        else:  # pragma: no cover - only reachable with absurd separations
            raise SinfracError("could not draw separated nodes")
        if self.spec.duplicate_nodes and count >= 1:
            draw = np.append(draw[:-1], draw[0]) if count >= 2 else np.append(draw, draw[0])
        vec = PhaseVector.coerce(draw)
        self.params[name] = vec
        self.nodes = vec
        return vec

    def laurent(self, degree: int, name: str = "T", real: bool = False) -> LaurentTrigPoly:
        """Random Laurent polynomial with nonzero top harmonic."""
        harm = {}
        for t in range(-degree, degree + 1):
            c = self.rng.normal()
            if not real:
                c = complex(c, self.rng.normal())
            harm[t] = c
        if degree > 0 and self.rng.random() < 0.5:
            harm[-degree] = 0.0  # one-sided top degree is common in practice
        T = LaurentTrigPoly.from_harmonics(harm)
        self.params[name] = T
        return T

    def real_coeffs(self, count: int, name: str = "coeffs") -> list[float]:
        values = [float(x) for x in self.rng.normal(size=count)]
        self.params[name] = values
        return values

    def plan_seed(self) -> int:
        return int(self.rng.integers(0, 2**63 - 1))


# ---------------------------------------------------------------------------
# Comparison helpers
# ---------------------------------------------------------------------------


def _expansion_check(
    label: str, e: ClosedFormExpansion, direct: Callable, centers, natural_growth: float
) -> Check:
    height = band_height(DEFAULT_HEIGHT, e.max_frequency(), e.growth_rate(), natural_growth)
    return Check(label, "points", e.evaluate, direct, height=height, centers=tuple(centers))


def _pair_check(label: str, e1: ClosedFormExpansion, e2: ClosedFormExpansion, centers, natural: float) -> Check:
    height = min(
        band_height(DEFAULT_HEIGHT, e.max_frequency(), e.growth_rate(), natural) for e in (e1, e2)
    )
    return Check(label, "points", e1.evaluate, e2.evaluate, height=height, centers=tuple(centers))


def _f_growth(a: PhaseVector, b: PhaseVector) -> float:
    return float(max(len(a) - len(b), 0))


def _trig_growth(m: int, b: PhaseVector) -> float:
    return float(max(m - len(b), 0))


def _default_ks(kappa: int) -> list[int]:
    return list(range(-2, kappa + 3))


def _select_ks(trial: Trial, admissible: Sequence[int]) -> list[int]:
    if trial.ks is None:
        return list(admissible)
    allowed = set(admissible)
    return [k for k in trial.ks if k in allowed]


# ---------------------------------------------------------------------------
# Family runners
# ---------------------------------------------------------------------------


def _run_braaksma(t: Trial) -> list[Check]:
    a, b = t.phases(t.r, "a"), t.node_phases(t.n)
    kappa = t.r - t.n
    checks = []
    for k in _select_ks(t, _default_ks(kappa)):
        e = X.braaksma_expand(a, b, k)
        checks.append(
            _expansion_check(f"k={k}", e, lambda z, a=a, b=b: direct_ratio(a, b, z, 0), b, _f_growth(a, b))
        )
    return checks


def _run_k_invariance(t: Trial) -> list[Check]:
    a, b = t.phases(t.r, "a"), t.node_phases(t.n)
    ks = _select_ks(t, _default_ks(t.r - t.n))
    expansions = {k: X.braaksma_expand(a, b, k) for k in ks}
    checks = []
    for i, k1 in enumerate(ks):
        for k2 in ks[i + 1 :]:
            checks.append(
                _pair_check(f"k={k1} vs k={k2}", expansions[k1], expansions[k2], b, _f_growth(a, b))
            )
    return checks


def _run_meijer3(t: Trial) -> list[Check]:
    a, b = t.phases(t.r, "a"), t.node_phases(t.n)
    kappa = t.r - t.n
    checks = []
    for k in _select_ks(t, range(0, kappa + 1)):
        lhs, rhs = X.meijer_lemma3(a, b, k)
        checks.append(Check(f"lemma3 k={k}", "value", lhs, rhs))
        if kappa == 0 and k == 0:
            plain, sine = X.ptolemy_sides(a, b)
            checks.append(Check("lemma3 vs plain double sum", "value", lhs, 2j * plain))
            checks.append(Check("plain double sum vs sin(nu)", "value", plain, sine))
    return checks


def _run_meijer4(t: Trial) -> list[Check]:
    a, b = t.phases(t.r, "a"), t.node_phases(t.n)
    kappa = t.r - t.n
    checks = []
    for k in _select_ks(t, range(0, -kappa)):
        pole_sum = X.meijer_lemma4_expand(a, b, k)
        height = band_height(DEFAULT_HEIGHT, pole_sum.max_frequency(), pole_sum.growth_rate(), 0.0)
        checks.append(
            Check(
                f"lemma4 k={k}",
                "points",
                lambda z, k=k: X.meijer_lemma4_check(a, b, k, z, 0)[0],
                lambda z, k=k: X.meijer_lemma4_check(a, b, k, z, 0)[1],
                height=height,
                centers=b.phases,
            )
        )
        shifted = X.braaksma_expand(a, b, k + kappa + 1)
        checks.append(
            Check(
                f"lemma4 k={k} vs braaksma k={k + kappa + 1} termwise",
                "distance",
                shifted.coefficient_distance(-pole_sum),
                tolerance=1e-12,
            )
        )
    return checks


def _run_braaksma_to_meijer(t: Trial) -> list[Check]:
    a, b = t.phases(t.r, "a"), t.node_phases(t.n)
    kappa = t.r - t.n
    checks = []
    for k in _select_ks(t, range(0, max(kappa, 0) + 1)):
        via, lhs, rhs = X.braaksma_to_meijer(a, b, k)
        checks.append(Check(f"reduced expansion vs lemma3 lhs k={k}", "value", via, lhs))
        checks.append(Check(f"reduced expansion vs lemma3 rhs k={k}", "value", via, rhs))
    return checks


def _run_genptolemy(t: Trial) -> list[Check]:
    a, b = t.phases(t.n, "a"), t.node_phases(t.n)
    lhs, rhs = X.ptolemy_sides(a, b)
    return [Check("double sum vs sin(nu)", "value", lhs, rhs)]


def _run_monomial(t: Trial) -> list[Check]:
    m = t.r
    b = t.node_phases(t.n + 1)
    n = t.n
    gammas = np.exp(1j * b.array)
    g2 = gammas**2

    def base(z, power):
        w = np.exp(1j * np.asarray(z, dtype=complex))
        return w**power / np.prod(w[..., None] ** 2 - g2, axis=-1)

    checks = []
    top = m + n
    thetas = list(range(top, -top - 3, -2))
    for theta in thetas:
        wexp = X.monomial_expand(m, n + 1, theta, gammas)
        span = max([abs(p) for p in wexp.poly] + [abs(q) for _, q in wexp.poles] + [top])
        height = band_height(DEFAULT_HEIGHT, span, span, 0.0)
        checks.append(
            Check(
                f"theta={theta}",
                "points",
                lambda z, w=wexp: w.evaluate(np.exp(1j * np.asarray(z, dtype=complex))),
                lambda z: base(z, top),
                height=height,
                centers=b.phases,
            )
        )
    for form in ("sum-", "sum+", "neg-sum-", "neg-sum+"):
        wexp = X.w_power_expand(m, gammas, form)
        power = (-m if form.startswith("neg") else m) + n + 1
        span = max([abs(p) for p in wexp.poly] + [abs(q) for _, q in wexp.poles] + [abs(power)])
        height = band_height(DEFAULT_HEIGHT, span, span, 0.0)
        checks.append(
            Check(
                f"form={form}",
                "points",
                lambda z, w=wexp: w.evaluate(np.exp(1j * np.asarray(z, dtype=complex))),
                lambda z, p=power: base(z, p),
                height=height,
                centers=b.phases,
            )
        )
    return checks


def _chu_P(t: Trial, degree: int) -> LaurentTrigPoly:
    return t.laurent(degree, "P")


def _run_chu(t: Trial) -> list[Check]:
    b = t.node_phases(t.n + 1)
    P = _chu_P(t, min(t.r, t.n + 1))
    e = X.chu_expand(P, b)
    return [_expansion_check("chu", e, lambda z: trig_ratio(P, b, z, 0), b, _trig_growth(P.degree, b))]


def _run_chu_ext(t: Trial) -> list[Check]:
    b = t.node_phases(t.n + 1)
    checks = []
    for excess in (1, 2, 3):
        P = _chu_P(t, t.n + 1 + excess)
        t.params[f"P{excess}"] = t.params.pop("P")
        e = X.chu_extended_expand(P, b, excess)
        checks.append(
            _expansion_check(
                f"excess={excess}", e, lambda z, P=P: trig_ratio(P, b, z, 0), b, _trig_growth(P.degree, b)
            )
        )
    return checks


def _thetas(m: int, n: int, low: int) -> list[int]:
    return list(range(m + n, low - 1, -2))


def _run_exp_monomial(t: Trial) -> list[Check]:
    m = t.r
    b = t.node_phases(t.n + 1)
    checks = []
    for sign in (1, -1):
        for theta in _thetas(m, t.n, m - t.n - 6):
            e = X.exp_monomial_expand(m, b, theta, sign)

            def direct(z, sign=sign):
                zz = np.asarray(z, dtype=complex)
                return np.exp(sign * 1j * m * zz) / sine_product_at(b, zz)

            checks.append(_expansion_check(f"sign={sign:+d} theta={theta}", e, direct, b, _trig_growth(m, b)))
    return checks


def _run_trig_monomial(t: Trial) -> list[Check]:
    m = t.r
    b = t.node_phases(t.n + 1)
    a = float(t.rng.uniform(0.0, math.pi))
    t.params["a"] = a
    checks = []
    for theta in _thetas(m, t.n, m - t.n - 6):
        e = X.trig_monomial_expand(m, a, b, theta)

        def direct(z):
            zz = np.asarray(z, dtype=complex)
            return np.sin(m * zz - a) / sine_product_at(b, zz)

        label = f"theta={theta}" + (" poles only" if theta >= m - t.n else "")
        checks.append(_expansion_check(label, e, direct, b, _trig_growth(m, b)))
    return checks


def _general_runner(variants: Sequence[str], pairwise: Sequence[str] = ()) -> Callable[[Trial], list[Check]]:
    """Check each variant against ``T/prod sin``, and the ``pairwise`` variants against each other."""

    def run(t: Trial) -> list[Check]:
        b = t.node_phases(t.n + 1)
        T = t.laurent(t.r, "T")
        growth = _trig_growth(T.degree, b)
        built = {v: X.general_expand(T, b, v) for v in dict.fromkeys([*variants, *pairwise])}
        checks = [
            _expansion_check(f"variant={v}", built[v], lambda z: trig_ratio(T, b, z, 0), b, growth)
            for v in variants
        ]
        for i, v1 in enumerate(pairwise):
            for v2 in pairwise[i + 1 :]:
                checks.append(_pair_check(f"{v1} vs {v2}", built[v1], built[v2], b, growth))
        return checks

    return run


def _run_sine_product(t: Trial) -> list[Check]:
    a, b = t.phases(t.r + 1, "a"), t.node_phases(t.n + 1)
    e = X.sine_product_expand(a, b)
    T = LaurentTrigPoly.sine_product(a)
    via_general = X.general_expand(T, b, "PM")

    def direct(z):
        zz = np.asarray(z, dtype=complex)
        return sine_product_at(a, zz) / sine_product_at(b, zz)

    growth = _trig_growth(len(a), b)
    return [
        _expansion_check("sine product", e, direct, b, growth),
        Check(
            "termwise vs general PM",
            "distance",
            e.coefficient_distance(via_general),
            tolerance=1e-12,
        ),
    ]


def _series_runner(kind: str) -> Callable[[Trial], list[Check]]:
    def run(t: Trial) -> list[Check]:
        b = t.node_phases(t.n + 1)
        coeffs = t.real_coeffs(t.r + 1)
        if kind == "sin":
            coeffs[0] = 0.0
        zs = np.arange(len(coeffs))

        def direct(z):
            zz = np.asarray(z, dtype=complex)[..., None]
            basis = np.cos(zs * zz) if kind == "cos" else np.sin(zs * zz)
            weights = np.array(coeffs, dtype=float)
            if kind == "cos":
                weights[0] /= 2
            return np.sum(weights * basis, axis=-1) / sine_product_at(b, zz[..., 0])

        e = X.cos_sin_series_expand(kind, coeffs, b)
        return [_expansion_check(f"{kind} series", e, direct, b, _trig_growth(len(coeffs) - 1, b))]

    return run


def _residue_runner(kind: str) -> Callable[[Trial], list[Check]]:
    def run(t: Trial) -> list[Check]:
        b = t.node_phases(t.n + 1)
        if kind in ("sumres1", "sumres3"):
            P = t.laurent(t.r, "P")
            lhs, rhs = X.residue_identity(kind, b, P=P)
        else:
            a = t.phases(t.r + 1, "a")
            lhs, rhs = X.residue_identity(kind.replace("-", "_"), b, a=a)
        return [Check(kind, "value", lhs, rhs, absolute=True)]

    return run


def _run_coefficients(t: Trial) -> list[Check]:
    a, b = t.phases(t.r, "a"), t.node_phases(t.n)
    report = cross_check_coefficients(a, b, 9)
    checks = [
        Check(label, "distance", err, tolerance=tol) for label, (err, tol) in sorted(report.checks.items())
    ]
    for item in report.errors:
        raise SinfracError(item["message"])
    return checks


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """A verifiable identity family."""

    tag: str
    covers: tuple[str, ...]
    runner: Callable[[Trial], list[Check]]
    r_range: tuple[int, int]
    n_range: tuple[int, int]
    admissible: Callable[[int, int], bool] = lambda r, n: True
    points: int = 64
    description: str = ""


def _families() -> dict[str, Family]:
    fams = [
        Family("braaksma", ("braaksma_expand",), _run_braaksma, (0, 6), (0, 6),
               description="F(z) against its closed form for every split index k"),
        Family("braaksma-k-invariance", ("braaksma_expand",), _run_k_invariance, (0, 6), (0, 6),
               description="closed forms of F(z) agree across split indices"),
        Family("meijer3", ("meijer_lemma3", "ptolemy_sides"), _run_meijer3, (0, 8), (1, 5),
               admissible=lambda r, n: 0 <= r - n <= 3,
               description="weighted node sums against Omega-series values"),
        Family("meijer4", ("meijer_lemma4_check", "meijer_lemma4_expand", "braaksma_expand"),
               _run_meijer4, (0, 5), (1, 6), admissible=lambda r, n: -3 <= r - n <= -1, points=32,
               description="pure pole sums equal to -F(z) when kappa < 0"),
        Family("braaksma-to-meijer", ("braaksma_to_meijer",), _run_braaksma_to_meijer, (0, 8), (1, 5),
               admissible=lambda r, n: 0 <= r - n <= 3,
               description="node sums recovered from a closed form on one fewer node"),
        Family("genptolemy", ("ptolemy_sides",), _run_genptolemy, (1, 6), (1, 6),
               description="sine double sum against sin(sum a - sum b)"),
        Family("monomial", ("monomial_expand", "w_power_expand"), _run_monomial, (0, 8), (0, 4),
               description="w-domain monomial expansions for every shift"),
        Family("chu", ("chu_expand",), _run_chu, (0, 6), (0, 5),
               description="numerators with at most n+1 harmonics"),
        Family("chu-ext", ("chu_extended_expand",), _run_chu_ext, (0, 0), (0, 5),
               description="numerators with one to three extra harmonics"),
        Family("exp-monomial", ("exp_monomial_expand",), _run_exp_monomial, (0, 10), (0, 4),
               admissible=lambda r, n: r <= n + 6,
               description="exp(+-imz) over a sine product for every admissible shift"),
        Family("trig-monomial", ("trig_monomial_expand",), _run_trig_monomial, (0, 10), (0, 4),
               admissible=lambda r, n: r <= n + 6,
               description="sin(mz - a) over a sine product for every admissible shift"),
        Family("general-m", ("general_expand",), _general_runner(("M",)), (0, 11), (0, 5),
               admissible=lambda r, n: r <= n + 6, description="general numerators, variant M"),
        Family("general-p", ("general_expand",), _general_runner(("P",)), (0, 11), (0, 5),
               admissible=lambda r, n: r <= n + 6, description="general numerators, variant P"),
        Family("general-pm", ("general_expand",), _general_runner(("PM", "PM+", "PM-"), ("M", "P", "PM")),
               (0, 11), (0, 5), admissible=lambda r, n: r <= n + 6,
               description="general numerators, averaged and one-sided variants, all variants pairwise"),
        Family("sine-product", ("sine_product_expand", "general_expand"), _run_sine_product, (0, 9), (0, 5),
               admissible=lambda r, n: -2 <= r - n <= 4,
               description="sine-product numerators, pointwise and termwise"),
        Family("cos-series", ("cos_sin_series_expand",), _series_runner("cos"), (0, 10), (0, 4),
               admissible=lambda r, n: r <= n + 6, description="real cosine series numerators"),
        Family("sin-series", ("cos_sin_series_expand",), _series_runner("sin"), (1, 10), (0, 4),
               admissible=lambda r, n: r <= n + 6, description="real sine series numerators"),
        Family("sumres1", ("residue_identity",), _residue_runner("sumres1"), (0, 8), (0, 5),
               admissible=lambda r, n: r <= n + 3, description="coefficient balance, deg P <= n+3"),
        Family("sumres3", ("residue_identity",), _residue_runner("sumres3"), (0, 9), (0, 5),
               admissible=lambda r, n: r <= n + 4, description="coefficient balance, deg P <= n+4"),
        Family("exotic", ("residue_identity",), _residue_runner("exotic"), (1, 6), (0, 5),
               admissible=lambda r, n: r == n + 1, description="exponential node sum, kappa = 1"),
        Family("kappa2im", ("residue_identity",), _residue_runner("kappa2im"), (2, 7), (0, 5),
               admissible=lambda r, n: r == n + 2, description="sine node sum, kappa = 2"),
        Family("even-kappa-sine", ("residue_identity",), _residue_runner("even-kappa-sine"), (0, 8), (0, 4),
               admissible=lambda r, n: r >= n and (r - n) % 2 == 0 and r - n <= 4,
               description="nested sine sums against node sums, even kappa"),
        Family("kappa3-exotic", ("residue_identity",), _residue_runner("kappa3-exotic"), (3, 8), (0, 5),
               admissible=lambda r, n: r == n + 3, description="second-order exponential node sum, kappa = 3"),
        Family("coefficients", (), _run_coefficients, (0, 5), (0, 5),
               description="closed-form series coefficients against the Fourier-fit oracle"),
    ]
    return {f.tag: f for f in fams}


REGISTRY: dict[str, Family] = _families()
"""Every campaign family by tag."""


# ---------------------------------------------------------------------------
# Campaign engine
# ---------------------------------------------------------------------------


def _draw_sizes(rng: np.random.Generator, family: Family, spec: InstanceSpec) -> tuple[int, int]:
    r_lo, r_hi = spec.r_range or family.r_range
    n_lo, n_hi = spec.n_range or family.n_range
    pairs = [(r, n) for r in range(r_lo, r_hi + 1) for n in range(n_lo, n_hi + 1) if family.admissible(r, n)]
    if not pairs:
        raise SinfracError(f"no admissible sizes for {family.tag} in r={r_lo}..{r_hi}, n={n_lo}..{n_hi}")
    return pairs[int(rng.integers(len(pairs)))]


def _evaluate(check: Check, trial: Trial, spec: InstanceSpec, points: int) -> tuple[float, complex | None]:
    if check.kind == "distance":
        return float(check.lhs), None
    if check.kind == "value":
        if check.absolute:
            return float(abs(complex(check.lhs) - complex(check.rhs))), None
        return float(rel_error(check.lhs, check.rhs)), None
    plan = SamplePlan(points, check.height, DEFAULT_POLE_GUARD, trial.plan_seed())
    zs = sample_points(plan, check.centers)
    with np.errstate(all="ignore"):
        lhs = np.asarray(check.lhs(zs), dtype=complex)
        rhs = np.asarray(check.rhs(zs), dtype=complex)
    errs = np.abs(lhs - rhs) if check.absolute else rel_error(lhs, rhs)
    errs = np.where(np.isfinite(errs), errs, np.inf)
    worst = int(np.argmax(errs))
    return float(errs[worst]), complex(zs[worst])


def run_campaign(spec: InstanceSpec) -> VerificationReport:
    """Run ``spec.trials`` seeded trials of one family and aggregate the results.

    Precondition failures inside a trial are recorded in the report rather
    than raised; an unknown family tag raises :class:`KeyError`.
    """
    if spec.identity not in REGISTRY:
        raise KeyError(f"unknown identity {spec.identity!r}; known: {', '.join(sorted(REGISTRY))}")
    family = REGISTRY[spec.identity]
    points = spec.points or family.points
    checks: dict[str, list[float]] = {}
    errors: list[dict[str, Any]] = []
    warnings: list[str] = []
    worst_fail: dict[str, Any] | None = None
    worst_excess = 0.0
    max_error = 0.0
    worst_digits = 0.0
    min_sep = 1.0
    for index in range(spec.trials):
        size_rng = np.random.default_rng([spec.seed & _SEED_MASK, index, 1])
        try:
            r, n = _draw_sizes(size_rng, family, spec)
        except SinfracError as exc:
            errors.append({"trial": index, "error": type(exc).__name__, "message": str(exc)})
            continue
        trial = Trial(spec, index, r, n, spec.k_policy)
        try:
            trial_checks = family.runner(trial)
            outcomes = [(c, *_evaluate(c, trial, spec, points)) for c in trial_checks]
        except SinfracError as exc:
            errors.append(
                {
                    "trial": index,
                    "error": type(exc).__name__,
                    "message": str(exc),
                    "params": hexify(trial.params),
                }
            )
            continue
        cond = condition_estimate(trial.nodes)
        worst_digits = max(worst_digits, cond.digits_lost)
        min_sep = min(min_sep, cond.min_node_separation)
        if cond.digits_lost > DIGITS_LOST_WARNING:
            warnings.append(f"trial {index}: node conditioning may cost {cond.digits_lost:.1f} digits")
        for check, err, z in outcomes:
            tol = check.tolerance if check.tolerance is not None else spec.tolerance
            entry = checks.setdefault(_label_key(check.label), [0.0, tol])
            entry[0] = max(entry[0], err)
            max_error = max(max_error, err)
            excess = err / tol
            if excess > 1.0 and excess > worst_excess:
                worst_excess = excess
                worst_fail = {
                    "trial": index,
                    "label": check.label,
                    "error": err,
                    "tolerance": tol,
                    "params": hexify(trial.params),
                    "z": None if z is None else hexify(z),
                }
    passed = not errors and worst_fail is None
    condition = {"max_digits_lost": worst_digits, "min_node_separation": min_sep}
    return VerificationReport(
        identity=spec.identity,
        seed=spec.seed,
        trials=spec.trials,
        tolerance=spec.tolerance,
        max_error=max_error,
        passed=passed,
        checks=checks,
        failing=worst_fail,
        errors=errors,
        condition=condition,
        warnings=warnings,
    )


def _label_key(label: str) -> str:
    """Group per-``k``/per-``theta`` labels under their family-level name."""
    return re.sub(r"[+-]?\d+", "#", label)


def run_all(
    trials: int, seed: int = 0, tolerance: float = 1e-9, tags: Sequence[str] | None = None
) -> list[VerificationReport]:
    """One campaign per registered family (or per tag in ``tags``)."""
    chosen = list(tags) if tags is not None else list(REGISTRY)
    return [run_campaign(InstanceSpec(tag, seed=seed, trials=trials, tolerance=tolerance)) for tag in chosen]


# ---------------------------------------------------------------------------
# Coefficient cross-checks
# ---------------------------------------------------------------------------

FIT_TOLERANCE = 1e-8
RELATION_TOLERANCE = 1e-10
REDUCTION_TOLERANCE = 1e-9


def cross_check_coefficients(a, b, depth: int) -> VerificationReport:
    """Check series coefficients of ``F`` three independent ways.

    1. ``C_0..C_{depth-1}`` and ``D_kappa..D_{kappa-depth+1}`` against
       :func:`sinfrac.numeric.fit_series_coefficients` (tolerance 1e-8).
    2. ``Omega_m = D_{kappa-m}/D_kappa``, ``OmegaBar_m = C_m/C_0`` and, for
       real phases, ``OmegaBar_m = conj(Omega_m)`` (tolerance 1e-10).
    3. Node sums obtained by evaluating a closed form on one fewer node
       against both sides of the Omega-series identity (tolerance 1e-9).

    ``depth`` counts coefficients, so ``depth = 9`` covers indices 0..8.
    """
    a, b = PhaseVector.coerce(a), PhaseVector.coerce(b)
    if not 1 <= depth <= 16:
        raise ValueError("depth must be between 1 and 16")
    kappa = len(a) - len(b)
    checks: dict[str, list[float]] = {}
    errors: list[dict[str, Any]] = []

    def record(label: str, err: float, tol: float) -> None:
        entry = checks.setdefault(label, [0.0, tol])
        entry[0] = max(entry[0], float(err))

    C = braaksma_C(a, b, depth - 1)
    D = braaksma_D(a, b, kappa - depth + 1)
    try:
        Cf = fit_series_coefficients(a, b, 1, depth)
        Df = fit_series_coefficients(a, b, -1, depth)
        for j in range(depth):
            record("C vs Fourier fit", rel_error(C[j], Cf[j]), FIT_TOLERANCE)
            record("D vs Fourier fit", rel_error(D[kappa - j], Df[kappa - j]), FIT_TOLERANCE)
    except SinfracError as exc:
        errors.append({"error": type(exc).__name__, "message": str(exc)})

    om = omega(a, b, depth - 1)
    om_bar = omega(a, b, depth - 1, conjugated=True)
    for m in range(depth):
        record("Omega vs D ratio", rel_error(om[m], D[kappa - m] / D[kappa]), RELATION_TOLERANCE)
        record("OmegaBar vs C ratio", rel_error(om_bar[m], C[m] / C[0]), RELATION_TOLERANCE)
        record("OmegaBar vs conj(Omega)", rel_error(om_bar[m], np.conj(om[m])), RELATION_TOLERANCE)

    if len(b) >= 1:
        for k in range(0, max(kappa, 0) + 1):
            try:
                via, lhs, rhs = X.braaksma_to_meijer(a, b, k)
            except SinfracError as exc:
                errors.append({"error": type(exc).__name__, "message": str(exc)})
                break
            record("reduction vs node sum", rel_error(via, lhs), REDUCTION_TOLERANCE)
            record("reduction vs Omega side", rel_error(via, rhs), REDUCTION_TOLERANCE)

    max_error = max((v[0] for v in checks.values()), default=0.0)
    passed = not errors and all(v[0] <= v[1] for v in checks.values())
    cond = condition_estimate(b)
    return VerificationReport(
        identity="coefficients",
        seed=0,
        trials=1,
        tolerance=FIT_TOLERANCE,
        max_error=max_error,
        passed=passed,
        checks=checks,
        failing=None if passed else {"params": hexify({"a": a, "b": b, "depth": depth})},
        errors=errors,
        condition={"max_digits_lost": cond.digits_lost, "min_node_separation": cond.min_node_separation},
        warnings=[],
    )
