"""Canonical JSON: rationals as "p/q" strings, h-scalars as [[half_exponent, "p/q"], ...]."""
from __future__ import annotations

import json
from fractions import Fraction

from .hpoly import HPoly
from .weyl import HScalar, WeylElement


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, HScalar):
        return [[k, str(v)] for k, v in obj.items()]
    if isinstance(obj, HPoly):
        return obj.to_json()
    if isinstance(obj, WeylElement):
        return str(obj)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"
