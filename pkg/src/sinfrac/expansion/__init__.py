"""Identity builders: each returns a closed-form expansion or an ``(lhs, rhs)`` pair."""

from .braaksma import (
    braaksma_expand,
    braaksma_to_meijer,
    meijer_lemma3,
    meijer_lemma4_check,
    meijer_lemma4_expand,
    ptolemy_sides,
)
from .chu import chu_expand, chu_extended_expand, chu_w_expansion
from .residues import residue_identity
from .trig import (
    cos_sin_series_expand,
    exp_monomial_expand,
    general_expand,
    parity_shift,
    sine_product_coefficient,
    sine_product_expand,
    symmetric_series,
    trig_monomial_expand,
)
from .wdomain import WExpansion, monomial_expand, w_power_expand

BUILDERS = (
    "monomial_expand",
    "w_power_expand",
    "chu_expand",
    "chu_extended_expand",
    "braaksma_expand",
    "meijer_lemma3",
    "meijer_lemma4_check",
    "meijer_lemma4_expand",
    "braaksma_to_meijer",
    "ptolemy_sides",
    "exp_monomial_expand",
    "trig_monomial_expand",
    "general_expand",
    "sine_product_expand",
    "cos_sin_series_expand",
    "residue_identity",
)
"""Every public builder returning an expansion or an ``(lhs, rhs)`` comparison."""

__all__ = list(BUILDERS) + [
    "WExpansion",
    "chu_w_expansion",
    "parity_shift",
    "sine_product_coefficient",
    "symmetric_series",
    "BUILDERS",
]
