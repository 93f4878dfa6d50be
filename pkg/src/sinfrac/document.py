"""Versioned JSON documents for closed-form expansions.

Every float is written twice: as hexadecimal text (authoritative, so a
parse reproduces the expansion bit for bit) and as a decimal number for
human readers.  Provenance values are tagged with their type so that tuples,
floats, complex numbers and Laurent polynomials survive the round trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .core import ClosedFormExpansion, ExpTerm, PoleTerm, Provenance
from .errors import SinfracError
from .numeric import ConditionEstimate, condition_estimate

SCHEMA_VERSION = 1
INDEXING_NOTE = (
    "Nodes are 0-based: node_index k refers to b[k]. Pole terms read "
    "coeff*exp(i*mu*(z-center))/sin(z-center); exponential terms read coeff*exp(i*freq*z)."
)


class MalformedDocument(SinfracError):
    """A document could not be parsed or has an unsupported schema version."""


def _float_out(x: float) -> dict[str, Any]:
    return {"hex": float(x).hex(), "decimal": float(x)}


def _complex_out(c: complex) -> dict[str, Any]:
    c = complex(c)
    return {"re": c.real.hex(), "im": c.imag.hex(), "decimal": [c.real, c.imag]}


def _complex_in(obj: Any) -> complex:
    return complex(float.fromhex(obj["re"]), float.fromhex(obj["im"]))


def _value_out(value: Any) -> Any:
    if isinstance(value, bool):
        return {"bool": value}
    if isinstance(value, int):
        return {"int": value}
    if isinstance(value, float):
        return {"float": value.hex(), "decimal": value}
    if isinstance(value, complex):
        return {"complex": _complex_out(value)}
    if isinstance(value, str):
        return {"str": value}
    if isinstance(value, tuple):
        return {"tuple": [_value_out(v) for v in value]}
    raise TypeError(f"cannot serialise provenance value of type {type(value).__name__}")


def _value_in(obj: Any) -> Any:
    if not isinstance(obj, dict) or not obj:
        raise MalformedDocument(f"bad provenance value {obj!r}")
    if "bool" in obj:
        return bool(obj["bool"])
    if "int" in obj:
        return int(obj["int"])
    if "float" in obj:
        return float.fromhex(obj["float"])
    if "complex" in obj:
        return _complex_in(obj["complex"])
    if "str" in obj:
        return str(obj["str"])
    if "tuple" in obj:
        return tuple(_value_in(v) for v in obj["tuple"])
    raise MalformedDocument(f"bad provenance value {obj!r}")


@dataclass(frozen=True)
class ExpansionDocument:
    """An expansion plus the conditioning of its nodes."""

    expansion: ClosedFormExpansion
    condition: ConditionEstimate
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_expansion(cls, e: ClosedFormExpansion) -> "ExpansionDocument":
        centers = [c for _, c in sorted(e.centers().items())]
        return cls(e, condition_estimate(centers))

    def to_dict(self) -> dict[str, Any]:
        e = self.expansion
        return {
            "schema_version": self.schema_version,
            "provenance": {
                "identity": e.provenance.family,
                "parameters": [[k, _value_out(v)] for k, v in e.provenance.params],
                "indexing": INDEXING_NOTE,
            },
            "exp_terms": [{"coeff": _complex_out(t.coeff), "freq": t.freq} for t in e.exp_terms],
            "pole_terms": [
                {
                    "coeff": _complex_out(t.coeff),
                    "node_index": t.node_index,
                    "center": _float_out(t.center),
                    "mu": t.phase_freq,
                }
                for t in e.pole_terms
            ],
            "condition": {
                "min_node_separation": _float_out(self.condition.min_node_separation),
                "pole_coeff_magnitude": _float_out(self.condition.pole_coeff_magnitude),
                "digits_lost": _float_out(self.condition.digits_lost),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Any) -> "ExpansionDocument":
        try:
            version = data["schema_version"]
            if version != SCHEMA_VERSION:
                raise MalformedDocument(f"unsupported schema_version {version!r}")
            prov = data["provenance"]
            params = tuple((str(k), _value_in(v)) for k, v in prov["parameters"])
            exps = tuple(ExpTerm(_complex_in(t["coeff"]), int(t["freq"])) for t in data["exp_terms"])
            poles = tuple(
                PoleTerm(
                    int(t["node_index"]),
                    float.fromhex(t["center"]["hex"]),
                    _complex_in(t["coeff"]),
                    int(t["mu"]),
                )
                for t in data["pole_terms"]
            )
            cond = data["condition"]
            condition = ConditionEstimate(
                float.fromhex(cond["min_node_separation"]["hex"]),
                float.fromhex(cond["pole_coeff_magnitude"]["hex"]),
                float.fromhex(cond["digits_lost"]["hex"]),
            )
        except MalformedDocument:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise MalformedDocument(f"malformed expansion document: {exc!r}") from exc
        expansion = ClosedFormExpansion(exps, poles, Provenance(str(prov["identity"]), params))
        return cls(expansion, condition, version)

    @classmethod
    def from_json(cls, text: str) -> "ExpansionDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"not valid JSON: {exc}") from exc
        return cls.from_dict(data)
