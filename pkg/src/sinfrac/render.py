"""Text and LaTeX renderings of closed-form expansions.

Rendering never changes the expansion; it only groups canonical terms into
familiar shapes:

* a conjugate pair ``c exp(i d z) + conj(c) exp(-i d z)`` becomes
  ``R sin(d z + phi)`` with ``R > 0``;
* a node carrying equal weights at ``mu = +1`` and ``mu = -1`` becomes a
  ``cot`` term (``cot(x) = (exp(ix) + exp(-ix)) / (2 sin x)``);
* ``mu = 0`` pole terms are plain reciprocals of ``sin``.

Every group can be expanded back into terms (:meth:`Group.terms`), so a
rendering can be checked against the expansion it came from.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import ClosedFormExpansion, ExpTerm, PoleTerm

PAIR_TOL = 1e-13
"""Relative tolerance for recognising conjugate or equal coefficient pairs."""


@dataclass(frozen=True)
class Group:
    """A rendered unit.

    ``kind`` is one of ``const``, ``sin`` (``amp * sin(freq z + phase)``),
    ``exp`` (``coeff * exp(i freq z)``), ``pole`` (``coeff / sin(z - center)``),
    ``cot`` (``coeff * cot(z - center)``) or ``pole-exp``
    (``coeff * exp(i mu (z - center)) / sin(z - center)``).
    """

    kind: str
    coeff: complex = 0j
    freq: int = 0
    amp: float = 0.0
    phase: float = 0.0
    node_index: int = -1
    center: float = 0.0

    def terms(self) -> tuple[list[ExpTerm], list[PoleTerm]]:
        """The canonical terms this group stands for."""
        if self.kind == "const":
            return [ExpTerm(self.coeff, 0)], []
        if self.kind == "exp":
            return [ExpTerm(self.coeff, self.freq)], []
        if self.kind == "sin":
            c = self.amp * cmath.exp(1j * self.phase) / 2j
            return [ExpTerm(c, self.freq), ExpTerm(c.conjugate(), -self.freq)], []
        if self.kind == "pole":
            return [], [PoleTerm(self.node_index, self.center, self.coeff, 0)]
        if self.kind == "cot":
            half = self.coeff / 2
            return [], [
                PoleTerm(self.node_index, self.center, half, 1),
                PoleTerm(self.node_index, self.center, half, -1),
            ]
        return [], [PoleTerm(self.node_index, self.center, self.coeff, self.freq)]


def _close(x: complex, y: complex, scale: float) -> bool:
    return abs(x - y) <= PAIR_TOL * max(scale, 1e-300)


def group_terms(e: ClosedFormExpansion) -> list[Group]:
    """Group the terms of ``e`` for display (exponential part first, then nodes)."""
    scale = max([abs(t.coeff) for t in e.exp_terms] + [abs(t.coeff) for t in e.pole_terms], default=0.0)
    groups: list[Group] = []
    exps = {t.freq: t.coeff for t in e.exp_terms}
    for freq in sorted(exps, key=lambda f: (-abs(f), -f)):
        if freq not in exps:
            continue
        c = exps.pop(freq)
        if freq == 0:
            groups.append(Group("const", c))
            continue
        partner = exps.get(-freq)
        if freq > 0 and partner is not None and _close(partner, c.conjugate(), scale):
            exps.pop(-freq)
            amp = 2 * abs(c)
            phase = _wrap(cmath.phase(c) + math.pi / 2)
            groups.append(Group("sin", freq=freq, amp=amp, phase=phase))
        else:
            groups.append(Group("exp", c, freq))
    by_node: dict[int, dict[int, PoleTerm]] = {}
    for t in e.pole_terms:
        by_node.setdefault(t.node_index, {})[t.phase_freq] = t
    for k in sorted(by_node):
        terms = by_node[k]
        center = next(iter(terms.values())).center
        if 1 in terms and -1 in terms and _close(terms[1].coeff, terms[-1].coeff, scale):
            groups.append(Group("cot", 2 * terms[1].coeff, node_index=k, center=center))
            del terms[1], terms[-1]
        for mu in sorted(terms, key=lambda m: (abs(m), -m)):
            t = terms[mu]
            kind = "pole" if mu == 0 else "pole-exp"
            groups.append(Group(kind, t.coeff, mu, node_index=k, center=center))
    return groups


def _wrap(angle: float) -> float:
    """Map an angle to ``(-pi, pi]``."""
    out = math.remainder(angle, 2 * math.pi)
    return math.pi if out == -math.pi else out


def format_real(x: float) -> str:
    text = format(x, ".12g")
    return "0" if text in ("-0", "0") else text


def format_complex(c: complex, scale: float, latex: bool = False) -> str:
    """A real number when the imaginary part is negligible, else ``(a + bi)``."""
    cut = PAIR_TOL * max(scale, abs(c))
    re = c.real if abs(c.real) > cut else 0.0
    im = c.imag if abs(c.imag) > cut else 0.0
    if im == 0.0:
        return format_real(re)
    if re == 0.0:
        return f"{format_real(im)}i"
    sign = "-" if im < 0 else "+"
    return f"({format_real(re)} {sign} {format_real(abs(im))}i)"


def _shift(symbol: str, offset: float) -> str:
    """``symbol - offset`` with a tidy sign."""
    if offset == 0:
        return symbol
    if offset < 0:
        return f"{symbol} + {format_real(-offset)}"
    return f"{symbol} - {format_real(offset)}"


def _freq_z(freq: int, latex: bool) -> str:
    if freq == 1:
        return "z"
    if freq == -1:
        return "-z"
    return f"{freq}z" if latex else f"{freq}*z"


def _split_sign(text: str) -> tuple[bool, str]:
    if text.startswith("-"):
        return True, text[1:]
    return False, text


def _times(coeff: str, body: str, sep: str) -> str:
    """``coeff * body``, omitting a unit coefficient."""
    return body if coeff == "1" else f"{coeff}{sep}{body}"


def _group_text(g: Group, scale: float) -> tuple[bool, str]:
    if g.kind == "sin":
        return False, _times(format_real(g.amp), f"sin({_shift(_freq_z(g.freq, False), -g.phase)})", "*")
    negative, coeff = _split_sign(format_complex(g.coeff, scale))
    arg = _shift("z", g.center)
    if g.kind == "const":
        body = coeff
    elif g.kind == "exp":
        body = _times(coeff, f"exp(i*{_freq_z(g.freq, False)})", "*")
    elif g.kind == "pole":
        body = f"{coeff}/sin({arg})"
    elif g.kind == "cot":
        body = _times(coeff, f"cot({arg})", "*")
    else:
        body = _times(coeff, f"exp({g.freq}i*({arg}))/sin({arg})", "*")
    return negative, body


def _group_latex(g: Group, scale: float) -> tuple[bool, str]:
    if g.kind == "sin":
        return False, _times(format_real(g.amp), rf"\sin({_shift(_freq_z(g.freq, True), -g.phase)})", "")
    negative, coeff = _split_sign(format_complex(g.coeff, scale, latex=True))
    arg = _shift("z", g.center)
    if g.kind == "const":
        body = coeff
    elif g.kind == "exp":
        body = _times(coeff, rf"e^{{{g.freq}iz}}", r"\,")
    elif g.kind == "pole":
        body = rf"\frac{{{coeff}}}{{\sin({arg})}}"
    elif g.kind == "cot":
        body = _times(coeff, rf"\cot({arg})", "")
    else:
        body = _times(coeff, rf"\frac{{e^{{{g.freq}i({arg})}}}}{{\sin({arg})}}", r"\,")
    return negative, body


def _scale(e: ClosedFormExpansion) -> float:
    return max([abs(t.coeff) for t in e.exp_terms] + [abs(t.coeff) for t in e.pole_terms], default=0.0)


def _describe(e: ClosedFormExpansion) -> str:
    parts = []
    for key, value in e.provenance.params:
        if isinstance(value, (int, str)):
            parts.append(f"{key}={value}")
    return e.provenance.family + (f" ({', '.join(parts)})" if parts else "")


def render_text(e: ClosedFormExpansion) -> str:
    """Plain-text rendering, one grouped term per line."""
    scale = _scale(e)
    groups = group_terms(e)
    lines = [f"# {_describe(e)}"]
    if not groups:
        lines.append("f(z) = 0")
    for i, g in enumerate(groups):
        negative, body = _group_text(g, scale)
        if i == 0:
            lines.append("f(z) = " + ("-" if negative else "") + body)
        else:
            lines.append(("     - " if negative else "     + ") + body)
    return "\n".join(lines) + "\n"


def render_latex(e: ClosedFormExpansion) -> str:
    """LaTeX ``aligned`` block, one grouped term per line."""
    scale = _scale(e)
    groups = group_terms(e)
    lines = [f"% {_describe(e)}", r"\begin{aligned}"]
    if not groups:
        lines.append(r"f(z) &= 0")
    for i, g in enumerate(groups):
        negative, body = _group_latex(g, scale)
        sign = "-" if negative else "+"
        lead = ("f(z) &= " + ("-" if negative else "")) if i == 0 else f"&\\quad {sign} "
        end = r" \\" if i < len(groups) - 1 else ""
        lines.append(lead + body + end)
    lines.append(r"\end{aligned}")
    return "\n".join(lines) + "\n"
