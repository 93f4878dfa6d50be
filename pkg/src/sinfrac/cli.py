"""Command-line interface: ``sinfrac decompose | verify | eval``.

Exit codes: 0 success, 1 verification failure, 2 invalid input.  Reports
go to stdout and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
from typing import Sequence

from . import expansion as X
from .core import ClosedFormExpansion, LaurentTrigPoly, PhaseVector, direct_ratio
from .document import ExpansionDocument
from .errors import SinfracError
from .numeric import rel_error
from .render import render_latex, render_text
from .verify import REGISTRY, InstanceSpec, run_campaign

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2

DECOMPOSE_IDENTITIES = (
    "braaksma",
    "chu",
    "chu-ext",
    "general-m",
    "general-p",
    "general-pm",
    "sine-product",
    "cos-series",
    "sin-series",
    "trig-monomial",
)
K_SLACK = 8


class UsageError(SinfracError):
    """Command-line input that cannot be interpreted."""


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def parse_floats(text: str | None, name: str) -> list[float]:
    if text is None or text.strip() == "":
        return []
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--{name}: expected comma-separated numbers, got {text!r}") from exc
    if not all(math.isfinite(v) for v in values):
        raise UsageError(f"--{name}: values must be finite")
    return values


def parse_complex(text: str, name: str) -> complex:
    parts = parse_floats(text, name)
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise UsageError(f"--{name}: expected 're' or 're,im', got {text!r}")


def parse_numerator(text: str) -> LaurentTrigPoly:
    """Parse ``t:re,im;t:re,im;...``; an entry without ``t:`` is the constant term."""
    harm: dict[int, complex] = {}
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            head, value = item.split(":", 1)
            try:
                t = int(head)
            except ValueError as exc:
                raise UsageError(f"--numerator: bad harmonic index {head!r}") from exc
        else:
            t, value = 0, item
        harm[t] = harm.get(t, 0j) + parse_complex(value, "numerator")
    if not harm:
        raise UsageError("--numerator: no coefficients given")
    return LaurentTrigPoly.from_harmonics(harm)


def _angles(text: str | None, name: str, degrees: bool) -> PhaseVector:
    values = parse_floats(text, name)
    if degrees:
        values = [math.radians(v) for v in values]
    return PhaseVector.coerce(values)


def _require(value, flag: str, identity: str):
    if value is None:
        raise UsageError(f"--identity {identity} needs {flag}")
    return value


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def build_expansion(args: argparse.Namespace) -> ClosedFormExpansion:
    """Build the expansion selected by ``decompose`` flags."""
    identity = args.identity
    b = _angles(args.b, "b", args.degrees)
    if identity == "braaksma":
        a = _angles(args.a, "a", args.degrees)
        kappa = len(a) - len(b)
        k = 0 if args.k is None else args.k
        if abs(k) > abs(kappa) + K_SLACK:
            raise UsageError(f"--k must satisfy |k| <= |kappa| + {K_SLACK} = {abs(kappa) + K_SLACK}")
        return X.braaksma_expand(a, b, k)
    if identity == "sine-product":
        return X.sine_product_expand(_angles(_require(args.a, "--a", identity), "a", args.degrees), b)
    if identity in ("cos-series", "sin-series"):
        coeffs = parse_floats(_require(args.coeffs, "--coeffs", identity), "coeffs")
        return X.cos_sin_series_expand(identity.split("-")[0], coeffs, b)
    if identity == "trig-monomial":
        m = _require(args.m, "--m", identity)
        theta = _require(args.theta, "--theta", identity)
        phase = _angles(_require(args.a, "--a", identity), "a", args.degrees)
        if len(phase) != 1:
            raise UsageError("--identity trig-monomial takes a single --a phase")
        return X.trig_monomial_expand(m, phase[0], b, theta)
    T = parse_numerator(_require(args.numerator, "--numerator", identity))
    if identity == "chu":
        return X.chu_expand(T, b)
    if identity == "chu-ext":
        excess = args.excess
        if excess is None:
            excess = min(max(T.degree - len(b), 1), 3)
        return X.chu_extended_expand(T, b, excess)
    variant = identity.split("-")[1].upper()
    if variant == "PM" and args.variant:
        variant = args.variant
    return X.general_expand(T, b, variant)


def cmd_decompose(args: argparse.Namespace) -> int:
    e = build_expansion(args)
    if args.format == "json":
        print(ExpansionDocument.from_expansion(e).to_json())
    elif args.format == "latex":
        sys.stdout.write(render_latex(e))
    else:
        sys.stdout.write(render_text(e))
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("SINFRAC_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"SINFRAC_SEED must be an integer, got {raw!r}") from exc


def cmd_verify(args: argparse.Namespace) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.identity == "all":
        tags = list(REGISTRY)
    elif args.identity in REGISTRY:
        tags = [args.identity]
    else:
        raise UsageError(f"unknown identity {args.identity!r}; known: all, {', '.join(sorted(REGISTRY))}")
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    specs = [InstanceSpec(tag, seed=seed, trials=args.trials, tolerance=args.tol) for tag in tags]
    reports = [run_campaign(spec) for spec in specs]
    if args.json:
        body = ",\n".join(r.to_json() for r in reports)
        print("[\n" + body + "\n]")
    else:
        for r in reports:
            print(r.summary())
            for warning in r.warnings:
                print(f"  warning: {warning}", file=sys.stderr)
            if r.failing:
                print(f"  worst failure: {r.failing}")
            for err in r.errors[:3]:
                print(f"  trial {err.get('trial')}: {err['error']}: {err['message']}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_eval(args: argparse.Namespace) -> int:
    z = parse_complex(args.z, "z")
    have_ratio = args.a is not None or args.b is not None
    if args.document is None and not have_ratio:
        raise UsageError("eval needs --document and/or --a/--b")
    doc_value = ratio_value = None
    if args.document is not None:
        try:
            with open(args.document, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read document: {exc.strerror}: {args.document}") from exc
        doc = ExpansionDocument.from_json(text)
        doc_value = doc.expansion.evaluate(z)
        print(f"expansion: {_fmt(doc_value)}")
    if have_ratio:
        a = _angles(args.a, "a", args.degrees)
        b = _angles(args.b, "b", args.degrees)
        ratio_value = direct_ratio(a, b, z)
        print(f"direct: {_fmt(ratio_value)}")
    if doc_value is not None and ratio_value is not None:
        print(f"rel_error: {rel_error(doc_value, ratio_value):.3e}")
    return EXIT_OK


def _fmt(value: complex) -> str:
    return f"{value.real!r} {'-' if value.imag < 0 else '+'} {abs(value.imag)!r}i"


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinfrac",
        description="Closed-form partial fractions of trigonometric ratios over sine products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="build and print an expansion")
    dec.add_argument("--identity", required=True, choices=DECOMPOSE_IDENTITIES)
    dec.add_argument("--a", help="numerator phases, comma separated (radians)")
    dec.add_argument("--b", help="denominator nodes, comma separated (radians)")
    dec.add_argument("--numerator", help="harmonics as 't:re,im;t:re,im;...'")
    dec.add_argument("--coeffs", help="cos/sin series coefficients, comma separated")
    dec.add_argument("--k", type=int, help="split index for braaksma (default 0)")
    dec.add_argument("--m", type=int, help="frequency for trig-monomial")
    dec.add_argument("--theta", type=int, help="pole shift for trig-monomial")
    dec.add_argument("--excess", type=int, choices=(1, 2, 3), help="extra harmonics for chu-ext")
    dec.add_argument("--variant", choices=("PM", "PM+", "PM-"), help="averaging for general-pm")
    dec.add_argument("--format", choices=("json", "text", "latex"), default="text")
    dec.add_argument("--degrees", action="store_true", help="read --a/--b in degrees")
    dec.set_defaults(handler=cmd_decompose)

    ver = sub.add_parser("verify", help="run seeded verification campaigns")
    ver.add_argument("--identity", default="all", help="family tag or 'all'")
    ver.add_argument("--trials", type=int, default=200)
    ver.add_argument("--seed", type=int, default=None, help="default: $SINFRAC_SEED or 0")
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.add_argument("--json", action="store_true", help="print full reports as JSON")
    ver.set_defaults(handler=cmd_verify)

    ev = sub.add_parser("eval", help="evaluate a document and/or the direct ratio at a point")
    ev.add_argument("--document", help="path to an expansion document (JSON)")
    ev.add_argument("--z", required=True, help="evaluation point 're,im'")
    ev.add_argument("--a", help="numerator phases for the direct ratio")
    ev.add_argument("--b", help="denominator nodes for the direct ratio")
    ev.add_argument("--degrees", action="store_true", help="read --a/--b in degrees")
    ev.set_defaults(handler=cmd_eval)
    return parser


VALUE_FLAGS = ("--a", "--b", "--z", "--numerator", "--coeffs")
_NEGATIVE_VALUE = re.compile(r"-[\d.]")


def attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--z -1,2`` as ``--z=-1,2``.

    argparse only accepts a leading minus sign for values that parse as a
    single number, so lists such as ``-1,2`` or ``-3:1`` would otherwise be
    taken for unknown options.
    """
    out: list[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in VALUE_FLAGS and i + 1 < len(tokens) and _NEGATIVE_VALUE.match(tokens[i + 1]):
            out.append(f"{tok}={tokens[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(attach_negative_values(argv))
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.handler(args)
    except (SinfracError, ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else type(exc).__name__
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
