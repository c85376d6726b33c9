"""Model-configuration documents: parsing, validation, and dumping.

A configuration is a JSON object. Either a ``reference`` section selects
the built-in family:

    {"reference": {"alpha": "1/6", "ds": true}}
    {"reference": {"alpha": 0.25, "beta": 0.75}}

or the model is given explicitly:

    {"a": {"ones": [["1/4", "3/4"]]},
     "b": {"ones": [[0, "1/3"]]},
     "g0": {"pieces": [{"src": ["1/3", "2/3"], "dst": ["1/3", "3/4"]}, ...]},
     "g1": {"pieces": [...]}}

Every number may be written as a decimal or as a rational string ``"p/q"``;
rationals are converted exactly before rounding to float once, so constants
like 1/3 parse to the closest double.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .ensemble import DichotomicObservable, EnsembleModel
from .filters import PiecewiseAffineMap
from .intervals import IntervalSet
from .reference import ReferenceParams, build_reference, ds_beta


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def parse_number(value: Any, field: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(field, "expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError):
            try:
                return float(value)
            except ValueError:
                raise ConfigError(field, f"cannot parse number {value!r}") from None
    raise ConfigError(field, f"expected a number, got {type(value).__name__}")


def _parse_pair(value: Any, field: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(field, "expected a [lo, hi] pair")
    return parse_number(value[0], f"{field}[0]"), parse_number(value[1], f"{field}[1]")


def _parse_interval_set(value: Any, field: str) -> IntervalSet:
    if not isinstance(value, list):
        raise ConfigError(field, "expected a list of [lo, hi] pairs")
    pairs = [_parse_pair(item, f"{field}[{k}]") for k, item in enumerate(value)]
    try:
        return IntervalSet.from_pairs(pairs)
    except ValueError as exc:
        raise ConfigError(field, str(exc)) from None


def _parse_map(value: Any, field: str, domain: IntervalSet) -> PiecewiseAffineMap:
    if not isinstance(value, dict) or "pieces" not in value:
        raise ConfigError(field, "expected an object with a 'pieces' list")
    pieces_doc = value["pieces"]
    if not isinstance(pieces_doc, list) or not pieces_doc:
        raise ConfigError(f"{field}.pieces", "expected a non-empty list")
    pieces = []
    for k, item in enumerate(pieces_doc):
        here = f"{field}.pieces[{k}]"
        if not isinstance(item, dict) or "src" not in item or "dst" not in item:
            raise ConfigError(here, "expected an object with 'src' and 'dst' pairs")
        pieces.append((_parse_pair(item["src"], f"{here}.src"),
                       _parse_pair(item["dst"], f"{here}.dst")))
    return PiecewiseAffineMap.from_pieces(pieces, domain)


def _parse_reference(doc: dict, field: str) -> tuple[EnsembleModel, dict]:
    known = set(doc) - {"alpha", "beta", "ds"}
    if known:
        raise ConfigError(field, f"unknown keys {sorted(known)}")
    if "alpha" not in doc:
        raise ConfigError(f"{field}.alpha", "required")
    alpha = parse_number(doc["alpha"], f"{field}.alpha")
    has_beta = "beta" in doc
    use_ds = bool(doc.get("ds", False))
    if has_beta == use_ds:
        raise ConfigError(field, "give exactly one of 'beta' or 'ds': true")
    try:
        beta = ds_beta(alpha) if use_ds else parse_number(doc["beta"], f"{field}.beta")
        params = ReferenceParams(alpha, beta)
        model = build_reference(params)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(field, str(exc)) from None
    resolved = {"alpha": alpha, "beta": beta, "ds": use_ds}
    return model, resolved


def load_model(doc: Any) -> tuple[EnsembleModel, dict]:
    """Build the model a configuration document describes.

    Returns the model together with the fully resolved parameters that
    reports embed. Raises :class:`ConfigError` naming the failing field, or
    a model-level error from construction.
    """
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    if "reference" in doc:
        extra = set(doc) - {"reference"}
        if extra:
            raise ConfigError("<root>", f"'reference' cannot be combined with {sorted(extra)}")
        ref = doc["reference"]
        if not isinstance(ref, dict):
            raise ConfigError("reference", "expected an object")
        model, resolved = _parse_reference(ref, "reference")
        return model, {"reference": resolved, "model": dump_model(model)}

    missing = [k for k in ("a", "b", "g0", "g1") if k not in doc]
    if missing:
        raise ConfigError("<root>", f"missing sections {missing}")
    unknown = set(doc) - {"a", "b", "g0", "g1"}
    if unknown:
        raise ConfigError("<root>", f"unknown sections {sorted(unknown)}")
    sets = {}
    for name in ("a", "b"):
        section = doc[name]
        if not isinstance(section, dict) or "ones" not in section:
            raise ConfigError(name, "expected an object with a 'ones' list")
        sets[name] = _parse_interval_set(section["ones"], f"{name}.ones")
    b = DichotomicObservable(sets["b"])
    a = DichotomicObservable(sets["a"])
    g0 = _parse_map(doc["g0"], "g0", b.event(0))
    g1 = _parse_map(doc["g1"], "g1", b.event(1))
    model = EnsembleModel(a=a, b=b, g0=g0, g1=g1)
    return model, {"model": dump_model(model)}


def dump_model(model: EnsembleModel) -> dict:
    """Explicit configuration document for a model; re-parses identically."""
    return {
        "a": {"ones": [list(p) for p in model.a.ones.intervals]},
        "b": {"ones": [list(p) for p in model.b.ones.intervals]},
        "g0": {"pieces": [{"src": [p.src_lo, p.src_hi], "dst": [p.dst_lo, p.dst_hi]}
                          for p in model.g0.pieces]},
        "g1": {"pieces": [{"src": [p.src_lo, p.src_hi], "dst": [p.dst_lo, p.dst_hi]}
                          for p in model.g1.pieces]},
    }
