"""JSON encoding of matrices, states, measurements and channels.

Complex numbers are ``[re, im]`` pairs (plain reals are accepted on input),
matrices are row-major nested lists of them. A POVM is
``{"dim": d, "elements": [matrix, ...]}``; a state is either
``{"matrix": matrix}`` or ``{"amplitudes": [z, ...]}``; a channel is
``{"kraus": [matrix, ...]}``. Non-finite floats are written as the strings
``"inf"``, ``"-inf"`` and ``"nan"`` so documents stay strict JSON.
"""

from __future__ import annotations

import json
import math
from typing import Any, Iterable

import numpy as np

from .errors import DimensionMismatch, InvalidParameter
from .qtypes import DensityOperator, KrausChannel, Povm, PureState, Pvm

SCHEMA_VERSION = 1


def check_keys(obj: Any, required: Iterable[str], optional: Iterable[str] = (), what: str = "object") -> dict:
    if not isinstance(obj, dict):
        raise InvalidParameter(f"{what} must be a JSON object")
    required, optional = set(required), set(optional)
    missing = required - obj.keys()
    if missing:
        raise InvalidParameter(f"{what} is missing key(s): {', '.join(sorted(missing))}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise InvalidParameter(f"{what} has unknown key(s): {', '.join(sorted(unknown))}")
    return obj


def encode_float(x: float) -> float | str:
    x = float(x)
    if math.isfinite(x):
        return x
    if math.isnan(x):
        return "nan"
    return "inf" if x > 0 else "-inf"


def decode_float(x: Any) -> float:
    if isinstance(x, str) and x in ("inf", "-inf", "nan"):
        return float(x)
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InvalidParameter(f"expected a number, got {x!r}")
    return float(x)


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(x: Any) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise InvalidParameter(f"complex numbers are [re, im] pairs, got {x!r}")
        return complex(decode_float(x[0]), decode_float(x[1]))
    return complex(decode_float(x))


def vector_to_json(v) -> list:
    return [complex_to_json(z) for z in np.asarray(v).ravel()]


def vector_from_json(obj: Any) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise InvalidParameter("a vector must be a non-empty list")
    return np.array([complex_from_json(z) for z in obj], dtype=complex)


def matrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def matrix_from_json(obj: Any) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(row, list) for row in obj):
        raise InvalidParameter("a matrix must be a non-empty list of rows")
    width = len(obj[0])
    if any(len(row) != width for row in obj):
        raise DimensionMismatch("matrix rows have different lengths")
    return np.array([[complex_from_json(z) for z in row] for row in obj], dtype=complex)


def real_vector_to_json(v) -> list:
    return [encode_float(x) for x in np.asarray(v, dtype=float).ravel()]


def real_matrix_to_json(m) -> list:
    return [[encode_float(x) for x in row] for row in np.asarray(m, dtype=float)]


def state_to_json(state: DensityOperator | PureState) -> dict:
    if isinstance(state, PureState):
        return {"amplitudes": vector_to_json(state.amplitudes)}
    return {"matrix": matrix_to_json(state.matrix)}


def state_from_json(obj: Any) -> DensityOperator:
    """Density operator from ``{"matrix": ...}`` or ``{"amplitudes": ...}``."""
    if isinstance(obj, dict) and "amplitudes" in obj:
        check_keys(obj, ["amplitudes"], what="pure state")
        return PureState(vector_from_json(obj["amplitudes"])).density()
    check_keys(obj, ["matrix"], what="state")
    return DensityOperator(matrix_from_json(obj["matrix"]))


def pure_state_from_json(obj: Any) -> PureState:
    check_keys(obj, ["amplitudes"], what="pure state")
    return PureState(vector_from_json(obj["amplitudes"]))


def povm_to_json(povm: Povm) -> dict:
    return {"dim": povm.dim, "elements": [matrix_to_json(e) for e in povm.elements]}


def povm_from_json(obj: Any, projective: bool = False) -> Povm:
    check_keys(obj, ["dim", "elements"], what="POVM")
    if not isinstance(obj["elements"], list):
        raise InvalidParameter("POVM elements must be a list")
    elements = tuple(matrix_from_json(e) for e in obj["elements"])
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InvalidParameter(f"POVM dim must be a positive integer, got {dim!r}")
    for i, e in enumerate(elements):
        if e.shape != (dim, dim):
            raise DimensionMismatch(f"POVM element {i} has shape {e.shape}, expected {(dim, dim)}")
    return (Pvm if projective else Povm)(elements)


def channel_to_json(ch: KrausChannel) -> dict:
    return {"kraus": [matrix_to_json(k) for k in ch.kraus_ops]}


def channel_from_json(obj: Any) -> KrausChannel:
    check_keys(obj, ["kraus"], what="channel")
    if not isinstance(obj["kraus"], list):
        raise InvalidParameter("kraus must be a list")
    return KrausChannel(tuple(matrix_from_json(k) for k in obj["kraus"]))


def dumps(document: dict) -> str:
    """Deterministic serialization: sorted keys, strict JSON, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + "\n"
