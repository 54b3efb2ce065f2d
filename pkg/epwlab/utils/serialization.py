# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import json
import logging
from enum import Enum
from fractions import Fraction

from sympy import Poly, QQ, Rational

from epwlab.exceptions import EpwLabInputError
from epwlab.modules.exterior import DIM, KVector
from epwlab.modules.lagrangian import TRIVECTORS, LagrangianData
from epwlab.modules.linalg import Subspace, denominator, numerator, to_scalar
from epwlab.modules.polynomials import coefficients

_logger = logging.getLogger(__name__)


class SerializationError(EpwLabInputError):
    """Exception raised for malformed JSON payloads"""
    pass


def rational_to_str(x):
    """Canonical "p/q" text: lowest terms, q > 0, "p" alone when q = 1."""
    x = to_scalar(x)
    p, q = numerator(x), denominator(x)
    return str(p) if q == 1 else f"{p}/{q}"


def rational_from_str(text):
    try:
        return to_scalar(text)
    except Exception as e:
        raise SerializationError(f"Not a rational number: {text!r} ({str(e)})")


def grid_to_json(rows):
    return [[rational_to_str(x) for x in row] for row in rows]


def grid_from_json(grid):
    if not isinstance(grid, list) or any(not isinstance(row, list) for row in grid):
        raise SerializationError("Expected a list of rows")
    return [[rational_from_str(str(x)) for x in row] for row in grid]


def kvector_to_json(a):
    payload = {"grade": a.grade, "coords": [rational_to_str(c) for c in a.coords]}
    if a.dual:
        payload["dual"] = True
    return payload


def kvector_from_json(payload):
    try:
        return KVector(int(payload["grade"]), tuple(rational_from_str(str(c)) for c in payload["coords"]),
                       bool(payload.get("dual", False)))
    except KeyError as e:
        raise SerializationError(f"KVector payload is missing {str(e)}")


def subspace_to_json(s):
    return {"ambient": s.ambient, "basis": grid_to_json(s.rows)}


def subspace_from_json(payload):
    try:
        return Subspace.span(grid_from_json(payload["basis"]), int(payload["ambient"]))
    except KeyError as e:
        raise SerializationError(f"Subspace payload is missing {str(e)}")


def lagrangian_to_json(data):
    """LagrangianData in its canonical form; A is written echelonized."""
    payload = {
        "dim_v6": DIM,
        "A": grid_to_json(data.A.rows),
        "generator": data.generator,
    }
    if data.seed is not None:
        payload["seed"] = data.seed
    if data.v5 is not None:
        payload["v5"] = [rational_to_str(c) for c in data.v5.coords]
    if data.ell is not None:
        payload["ell"] = data.ell
    if data.metadata:
        payload["metadata"] = to_jsonable(data.metadata)
    return payload


def lagrangian_from_json(payload):
    """
    Rebuild LagrangianData, re-echelonizing A and rechecking the cached ell

    Raises:
        SerializationError: On missing fields or a wrong dim_v6
    """
    if not isinstance(payload, dict) or "A" not in payload:
        raise SerializationError("LagrangianData payload needs an 'A' grid")
    if int(payload.get("dim_v6", DIM)) != DIM:
        raise SerializationError(f"dim_v6 must be {DIM}")
    A = Subspace.span(grid_from_json(payload["A"]), TRIVECTORS)
    v5 = None
    if payload.get("v5") is not None:
        v5 = KVector.covector(tuple(rational_from_str(str(c)) for c in payload["v5"]))
    return LagrangianData(
        A=A,
        v5=v5,
        seed=payload.get("seed"),
        generator=payload.get("generator", "manual"),
        ell=payload.get("ell"),
        metadata=dict(payload.get("metadata", {})),
    )


def to_jsonable(value):
    """Convert report values (rationals, tuples, k-vectors, dataclasses) to plain JSON types."""
    if isinstance(value, Enum):
        return value.name
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (Fraction, Rational)) or type(value) is type(QQ.one):
        return rational_to_str(value)
    if isinstance(value, Poly):
        return [rational_to_str(c) for c in coefficients(value)]
    if isinstance(value, KVector):
        return kvector_to_json(value)
    if isinstance(value, Subspace):
        return subspace_to_json(value)
    if isinstance(value, LagrangianData):
        return lagrangian_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "as_dict"):
        return to_jsonable(value.as_dict())
    if hasattr(value, "__dataclass_fields__"):
        return {name: to_jsonable(getattr(value, name)) for name in value.__dataclass_fields__}
    return str(value)


def dumps(value):
    """Canonical JSON text: sorted keys, two-space indent, ASCII only, trailing newline."""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        _logger.error(f"Error decoding JSON: {str(e)}", exc_info=True)
        raise SerializationError(f"Invalid JSON: {str(e)}")
