import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpzinc.cli import main
from cpzinc.core import ConPolyZonotope
from cpzinc.encode import InclusionCertificate, verify_certificate
from cpzinc.fixtures import example_set, scaled_set
from cpzinc.io import (
    SetDocumentError,
    document_to_set,
    parse_set,
    read_points_csv,
    serialize_set,
    write_set,
)
from cpzinc.randsets import random_cpz

from conftest import FIXTURES


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return path


# ---- parsing ------------------------------------------------------------

def test_parse_example_fixture():
    S = parse_set(FIXTURES / "example.json")
    assert (S.d, S.n, S.s, S.p, S.q) == (2, 4, 3, 1, 3)
    assert S.equals(example_set())


@pytest.mark.parametrize("name", ["P1", "P2", "P3"])
def test_table_fixtures_match_builders(name):
    assert parse_set(FIXTURES / f"{name}.json").equals(scaled_set(name))


def test_fractional_exponent_rejected(tmp_path):
    doc = json.loads(serialize_set(example_set()))
    doc["E"][0][0] = 1.5
    with pytest.raises(SetDocumentError, match="exponent not a nonnegative integer"):
        parse_set(_write(tmp_path, "bad.json", doc))


def test_boolean_exponent_rejected():
    doc = json.loads(serialize_set(example_set()))
    doc["R"][0][0] = True
    with pytest.raises(SetDocumentError, match="exponent not a nonnegative integer"):
        document_to_set(doc)


def test_missing_theta_rejected(tmp_path):
    doc = json.loads(serialize_set(example_set()))
    del doc["theta"]
    with pytest.raises(SetDocumentError, match="constraint block incomplete"):
        parse_set(_write(tmp_path, "bad.json", doc))


def test_json_error_has_position(tmp_path):
    with pytest.raises(SetDocumentError, match=r"line 2, column \d+"):
        parse_set(_write(tmp_path, "bad.json", '{"c": [0],\n  "G": [[1]] "E": [[1]]}'))


def test_all_validation_problems_listed():
    doc = {"c": [0.0, 0.0], "G": [[1.0, 0.0]], "E": [[1, 0]]}
    with pytest.raises(SetDocumentError) as err:
        document_to_set(doc)
    assert err.value.problems


def test_missing_required_key():
    with pytest.raises(SetDocumentError, match="missing required key 'G'"):
        document_to_set({"c": [0.0], "E": [[1]]})


def test_name_defaults_to_stem(tmp_path):
    S = example_set()
    doc = json.loads(serialize_set(S))
    doc.pop("name", None)
    assert parse_set(_write(tmp_path, "mine.json", doc)).name == "mine"


@given(st.integers(0, 2**32 - 1))
def test_round_trip_bit_exact(seed):
    S = random_cpz(np.random.default_rng(seed))
    assert document_to_set(json.loads(serialize_set(S))).equals(S)


def test_round_trip_awkward_floats():
    S = ConPolyZonotope([0.1 + 0.2, -1e-300], [[np.nextafter(1.0, 2.0)], [5e-324]], [[3]])
    assert document_to_set(json.loads(serialize_set(S))).equals(S)


# ---- check --------------------------------------------------------------

def _check(tmp_path, inner, outer, *extra):
    out = tmp_path / "verdict.json"
    code = main(["check", "--inner", str(FIXTURES / f"{inner}.json"),
                 "--outer", str(FIXTURES / f"{outer}.json"), "--json", str(out), *extra])
    return code, json.loads(out.read_text())


def test_check_forward_is_proven_and_certificate_reverifies(tmp_path, registry, capsys):
    code, doc = _check(tmp_path, "P1", "P2")
    assert code == 0 and doc["status"] == "proven"
    assert "seed=0" in capsys.readouterr().out
    inner, outer = scaled_set("P1"), scaled_set("P2")
    shapes = {"gamma": (outer.n,), "Gamma": (outer.n, inner.n), "Pi": (outer.p, inner.p),
              "Psi": (outer.q, inner.q), "psi": (outer.q,)}
    cert = InclusionCertificate.from_dict(doc["certificate"], shapes)
    rep = verify_certificate(inner, outer, cert)
    assert rep.passed
    assert all(v <= 1e-8 for v in doc["residuals"]["eq_residuals"].values())
    registry.add(inner, outer, "cli P1<=P2")


def test_check_falsifies_reverse_pair(tmp_path):
    code, doc = _check(tmp_path, "P3", "P1", "--falsify", "10000")
    assert code == 3 and doc["status"] == "falsified"
    assert doc["witness"]["distance"] > 1e-2


def test_check_dimension_mismatch(tmp_path, capsys):
    write_set(tmp_path / "line.json", ConPolyZonotope([0.0], [[1.0]], [[1]]))
    code = main(["check", "--inner", str(tmp_path / "line.json"),
                 "--outer", str(FIXTURES / "P1.json")])
    assert code == 1
    assert "dimension" in capsys.readouterr().err


def test_check_missing_file(tmp_path):
    assert main(["check", "--inner", str(tmp_path / "nope.json"),
                 "--outer", str(FIXTURES / "P1.json")]) == 1


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as err:
        main(["check", "--inner", "x.json"])
    assert err.value.code == 1


def test_check_not_proven_exit_two(tmp_path):
    write_set(tmp_path / "big.json", ConPolyZonotope([0.0, 0.0], 2 * np.eye(2), np.eye(2, dtype=int)))
    write_set(tmp_path / "box.json", ConPolyZonotope([0.0, 0.0], np.eye(2), np.eye(2, dtype=int)))
    code = main(["check", "--inner", str(tmp_path / "big.json"),
                 "--outer", str(tmp_path / "box.json"), "--json", str(tmp_path / "v.json")])
    assert code == 2
    doc = json.loads((tmp_path / "v.json").read_text())
    assert doc["status"] == "not_proven" and "certificate" not in doc


# ---- sample / map ------------------------------------------------------

def test_sample_example(tmp_path):
    out = tmp_path / "pts.csv"
    assert main(["sample", "--set", str(FIXTURES / "example.json"), "--count", "5000",
                 "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "x1,x2"
    pts = read_points_csv(out)
    assert pts.shape == (5000, 2)


def test_sample_unit_square(tmp_path):
    write_set(tmp_path / "box.json", ConPolyZonotope([0.0, 0.0], np.eye(2), np.eye(2, dtype=int)))
    out = tmp_path / "pts.csv"
    assert main(["sample", "--set", str(tmp_path / "box.json"), "--count", "100",
                 "--out", str(out)]) == 0
    pts = read_points_csv(out)
    assert pts.shape == (100, 2) and np.all(np.abs(pts) <= 1.0)


def test_sample_infeasible_set(tmp_path):
    write_set(tmp_path / "void.json", ConPolyZonotope([0.0], [[1.0]], [[1]], [[1.0]], [10.0], [[1]]))
    out = tmp_path / "pts.csv"
    assert main(["sample", "--set", str(tmp_path / "void.json"), "--count", "10",
                 "--out", str(out)]) == 2
    assert out.read_text().splitlines() == ["x1"]


def test_map_identity(tmp_path):
    (tmp_path / "I.json").write_text("[[1, 0], [0, 1]]")
    out = tmp_path / "mapped.json"
    assert main(["map", "--matrix", str(tmp_path / "I.json"),
                 "--set", str(FIXTURES / "example.json"), "--out", str(out)]) == 0
    assert parse_set(out).equals(example_set())


def test_map_projection(tmp_path):
    (tmp_path / "M.json").write_text("[[1, 0]]")
    out = tmp_path / "mapped.json"
    assert main(["map", "--matrix", str(tmp_path / "M.json"),
                 "--set", str(FIXTURES / "example.json"), "--out", str(out)]) == 0
    assert parse_set(out).d == 1


def test_map_dimension_mismatch(tmp_path):
    (tmp_path / "M.json").write_text("[[1, 0, 0]]")
    assert main(["map", "--matrix", str(tmp_path / "M.json"),
                 "--set", str(FIXTURES / "example.json"), "--out", str(tmp_path / "o.json")]) == 1
