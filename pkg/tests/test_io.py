import json
import os

import pytest

from qbloch.errors import PolytopeError, SchemaError
from qbloch.io import (load_cv_file, parse_qterm, parse_qterm_obj,
                       serialize_qterm, write_csv_atomic, write_json_atomic)
from qbloch.qterm import QTerm, SpecialQTerm

TERMS = os.path.join(os.path.dirname(__file__), os.pardir, "terms")

SHIPPED = ["four_one.json", "half.json", "four_one_special.json",
           os.path.join("battery", "term_00.json"),
           os.path.join("battery", "term_59.json")]


@pytest.mark.parametrize("name", SHIPPED)
def test_round_trip_on_shipped_files(name):
    path = os.path.join(TERMS, name)
    t = parse_qterm(path)
    again = parse_qterm_obj(serialize_qterm(t))
    assert serialize_qterm(again) == serialize_qterm(t)
    with open(path) as f:
        assert serialize_qterm(t) == json.load(f)   # files are canonical


def test_four_one_file_is_the_trace_family():
    t = parse_qterm(os.path.join(TERMS, "four_one.json"))
    assert isinstance(t, QTerm) and not isinstance(t, SpecialQTerm)
    assert t.r == 0 and t.epsilon == -1 and len(t.factors) == 2
    assert t.Q.matrix == ((-1,),)


def test_special_file_parses_as_special():
    t = parse_qterm(os.path.join(TERMS, "four_one_special.json"))
    assert isinstance(t, SpecialQTerm) and len(t.quads) == 2


def _base_obj():
    return {"r": 0, "Q": {"matrix": [[-1]], "linear": ["-1/2"]},
            "L": {"coeffs": [1], "constant": 0}, "epsilon": -1,
            "factors": [{"A": {"coeffs": [1], "constant": 0}, "sign": 1}]}


def test_asymmetric_matrix_rejected():
    obj = {"r": 1, "Q": {"matrix": [[0, 1], [2, 0]], "linear": ["0", "0"]},
           "L": {"coeffs": [0, 0], "constant": 0}, "epsilon": 1, "factors": []}
    with pytest.raises(SchemaError) as ei:
        parse_qterm_obj(obj)
    assert any("symmetric" in v for v in ei.value.violations)
    assert any(v.startswith("/Q/matrix") for v in ei.value.violations)


def test_half_integrality_rejected():
    obj = _base_obj()
    obj["Q"]["linear"] = ["0"]      # M[00] + 2*QL_0 = -1, odd
    with pytest.raises(SchemaError) as ei:
        parse_qterm_obj(obj)
    assert any("/Q/linear/0" in v for v in ei.value.violations)


def test_every_violation_is_reported():
    obj = _base_obj()
    obj["epsilon"] = 3
    obj["factors"][0]["sign"] = 0
    obj["extra"] = True
    with pytest.raises(SchemaError) as ei:
        parse_qterm_obj(obj)
    v = ei.value.violations
    assert len(v) == 3
    assert any(x.startswith("/epsilon") for x in v)
    assert any(x.startswith("/factors/0/sign") for x in v)
    assert any(x.startswith("/extra") for x in v)


def test_missing_factors_hint():
    obj = _base_obj()
    del obj["factors"]
    with pytest.raises(SchemaError) as ei:
        parse_qterm_obj(obj)
    assert any("factors" in x for x in ei.value.violations)


def test_special_with_nonempty_factors_rejected():
    obj = _base_obj()
    obj["quads"] = []
    with pytest.raises(SchemaError):
        parse_qterm_obj(obj)


def test_unbounded_polytope_propagates():
    obj = {"r": 1, "Q": {"matrix": [[0, 0], [0, 0]], "linear": ["0", "0"]},
           "L": {"coeffs": [0, 0], "constant": 0}, "epsilon": 1, "factors": [],
           "quads": [{"B": {"coeffs": [0, 0], "constant": 0},
                      "C": {"coeffs": [0, 0], "constant": 0},
                      "D": {"coeffs": [0, 1], "constant": 0},
                      "E": {"coeffs": [0, 0], "constant": 0}}]}
    with pytest.raises(PolytopeError):
        parse_qterm_obj(obj)


def test_invalid_json_wrapped(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        parse_qterm(str(p))


def test_bool_is_not_an_integer():
    obj = _base_obj()
    obj["r"] = True
    with pytest.raises(SchemaError) as ei:
        parse_qterm_obj(obj)
    assert any(x.startswith("/r") for x in ei.value.violations)


def test_atomic_writers(tmp_path):
    jp = tmp_path / "out.json"
    write_json_atomic(str(jp), {"b": 1, "a": [2, 3]})
    assert json.loads(jp.read_text()) == {"a": [2, 3], "b": 1}
    cp = tmp_path / "out.csv"
    write_csv_atomic(str(cp), [(1, 2.5), (2, 3.5)], ("n", "x"))
    lines = cp.read_text().strip().splitlines()
    assert lines[0] == "n,x" and lines[1] == "1,2.5"
    assert not [f for f in os.listdir(tmp_path) if f.endswith(".tmp")]


def test_load_cv_file_forms(tmp_path):
    p = tmp_path / "cv.json"
    p.write_text("[0.5, [0.1, -0.2]]")
    assert load_cv_file(str(p)) == (0.5 + 0j, 0.1 - 0.2j)
    p.write_text("{\"values\": []}")
    with pytest.raises(SchemaError):
        load_cv_file(str(p))
    p.write_text("[\"x\"]")
    with pytest.raises(SchemaError):
        load_cv_file(str(p))
