import os

import pytest

import algebroid

DATA = os.environ.get("ALG_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_fixtures_and_commands():
    assert "heis_j" in algebroid.fixtures()
    assert "validate" in algebroid.commands()


def test_geometry_properties():
    g = algebroid.Geometry.fixture("warped_r4")
    assert (g.rank, g.dim) == (4, 4)
    assert g.coords == ["x1", "x2", "x3", "x4"]
    assert g.has_J and g.has_metric and g.is_valid()
    assert not algebroid.Geometry.fixture("heis_broken").is_valid()


def test_round_trip():
    g = algebroid.Geometry.fixture("product(flat_r2,heis_j)")
    assert algebroid.Geometry.parse(g.emit()) == g


def test_document_error_position():
    with pytest.raises(algebroid.DocumentError, match=r"t.alg:5:"):
        algebroid.Geometry.parse("[chart]\ncoords = x\nrank = 2\n[anchor]\n1, 2\n0\n", "t.alg")


def test_run_reports():
    rep = algebroid.run("nijenhuis", "heis_j")
    assert rep["exit_code"] == 0
    assert rep["properties"]["vanishes"] is False
    assert algebroid.schema_errors(rep) == []
    assert {"index": [3, 1, 2], "value": "-1"} in rep["tensors"]["N"]

    chern = algebroid.run("chern", "conformal_sphere_chart", orders=[1, 2])
    assert chern["properties"]["factor_k1"] == "1/2"


def test_exit_codes():
    assert algebroid.run("validate", "heis_broken")["exit_code"] == 1
    assert algebroid.run("validate", "nowhere")["exit_code"] == 2
    assert algebroid.run("matched-pair", "heis_j")["exit_code"] == 3


def test_document_target(tmp_path):
    path = tmp_path / "h.alg"
    path.write_text(algebroid.Geometry.fixture("heis_j").emit())
    assert algebroid.Geometry.load(str(path)) == algebroid.Geometry.fixture("heis_j")
    assert algebroid.run("validate", path)["target"]["kind"] == "document"


def test_determinism():
    a = algebroid.run("kahler-report", "warped_r4", seed=5)
    b = algebroid.run("kahler-report", "warped_r4", seed=5)
    assert a == b
