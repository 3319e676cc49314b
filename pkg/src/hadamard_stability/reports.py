"""Conversion of result objects to JSON-ready structures.

Rationals become ``"p/q"`` strings, polynomials the canonical
``{"degree", "coefficients"}`` object, and obstruction values an outward
rounded decimal interval.
"""

from __future__ import annotations

import dataclasses
import json
from enum import Enum
from fractions import Fraction

import numpy as np

from ._exact import format_rational
from .delta import Obstruction
from .polynomial import PositivePolynomial


def to_jsonable(obj, digits: int = 12):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, PositivePolynomial):
        return obj.to_dict()
    if isinstance(obj, Obstruction):
        return {
            "delta1": format_rational(obj.deltas.delta1),
            "delta2": format_rational(obj.deltas.delta2),
            "omega": obj.decimal(digits),
            "certified": obj.certified,
        }
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, str, int)) or obj is None:
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, digits: int = 12) -> str:
    return json.dumps(to_jsonable(obj, digits), indent=2) + "\n"
