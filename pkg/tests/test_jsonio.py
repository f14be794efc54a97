import json
import math

import numpy as np
import pytest

from povmclone import jsonio, qtypes
from povmclone.errors import DimensionMismatch, InvalidParameter, NotNormalized


def test_complex_roundtrip():
    assert jsonio.complex_to_json(1 - 2j) == [1.0, -2.0]
    assert jsonio.complex_from_json([1, -2]) == 1 - 2j
    assert jsonio.complex_from_json(0.5) == 0.5
    with pytest.raises(InvalidParameter):
        jsonio.complex_from_json([1, 2, 3])
    with pytest.raises(InvalidParameter):
        jsonio.complex_from_json("x")


def test_non_finite_floats_are_strings():
    assert [jsonio.encode_float(x) for x in (math.inf, -math.inf)] == ["inf", "-inf"]
    assert math.isinf(jsonio.decode_float("inf"))
    assert jsonio.dumps({"x": jsonio.encode_float(math.inf)}) == '{\n  "x": "inf"\n}\n'


def test_state_povm_channel_roundtrip(rng):
    rho = qtypes.random_state(3, seed=rng)
    back = jsonio.state_from_json(json.loads(jsonio.dumps(jsonio.state_to_json(rho))))
    assert np.array_equal(back.matrix, rho.matrix)
    povm = qtypes.random_povm(2, 3, rng)
    back = jsonio.povm_from_json(json.loads(jsonio.dumps(jsonio.povm_to_json(povm))))
    assert all(np.array_equal(a, b) for a, b in zip(back, povm))
    ch = qtypes.random_channel(2, 2, 2, rng)
    back = jsonio.channel_from_json(jsonio.channel_to_json(ch))
    assert all(np.array_equal(a, b) for a, b in zip(back.kraus_ops, ch.kraus_ops))


def test_amplitudes_input():
    rho = jsonio.state_from_json({"amplitudes": [[0.6, 0], [0, 0.8]]})
    assert np.allclose(rho.matrix, [[0.36, -0.48j], [0.48j, 0.64]])


def test_rejections():
    with pytest.raises(InvalidParameter):
        jsonio.state_from_json({"matrix": [[1]], "extra": 1})
    with pytest.raises(DimensionMismatch):
        jsonio.matrix_from_json([[1, 0], [0]])
    with pytest.raises(DimensionMismatch):
        jsonio.povm_from_json({"dim": 3, "elements": [[[1, 0], [0, 1]]]})
    with pytest.raises(NotNormalized):
        jsonio.state_from_json({"matrix": [[1, 0], [0, 1]]})
    with pytest.raises(InvalidParameter):
        jsonio.povm_from_json({"dim": True, "elements": []})


def test_dumps_is_deterministic():
    doc = {"b": 1, "a": [0.1, 2]}
    assert jsonio.dumps(doc) == jsonio.dumps(dict(reversed(list(doc.items()))))
    with pytest.raises(ValueError):
        jsonio.dumps({"x": math.nan})
