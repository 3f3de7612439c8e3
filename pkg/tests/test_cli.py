import json
from importlib import resources

import pytest

from l2latt.cli import main

DATA = resources.files("l2latt").joinpath("data")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_group_describe(capsys):
    code, out, _ = run(capsys, "group", "describe", "SO", "3", "3")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["dim_X"] == 9
    assert rep["results"]["deficiency"] == 1
    assert rep["command"] == "group describe"
    assert rep["inputs_digest"]


def test_torsion_verdict(capsys):
    code, out, _ = run(capsys, "torsion", "verdict", "SL", "6")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["verdict"] == "Zero"
    assert rep["results"]["deficiency"] == 2
    assert rep["results"]["citations"]


def test_corner_strata_zero(capsys):
    code, out, _ = run(capsys, "corner", "strata", "--l", "0")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["count"] == 1
    assert rep["results"]["alternating_sum"] == 1


def test_ns_bound_shipped_index(capsys):
    code, out, _ = run(
        capsys, "ns", "bound", "--index", str(DATA / "gp.json"), "--levi", "SO,2,2"
    )
    rep = json.loads(out)
    assert code == 0
    assert rep["results"] == {"bound": 4, "q": 4}
    assert rep["certificate"]
    assert all(step["citation"] for step in rep["certificate"])


def test_parabolic_list(capsys):
    code, out, _ = run(capsys, "parabolic", "list", "--index", str(DATA / "gp.json"))
    rep = json.loads(out)
    assert code == 0
    rows = rep["results"]["parabolics"]
    assert len(rows) == 2
    minimal = [r for r in rows if r["subset"] == []][0]
    assert minimal["dim_N"] == 4 and minimal["d"] == 4


def test_density_estimate(capsys, tmp_path):
    table = tmp_path / "density.tsv"
    fig = tmp_path / "density.png"
    code, out, _ = run(
        capsys, "density", "estimate",
        "--complex", str(DATA / "circle.json"),
        "--degree", "1", "--samples", "5000", "--seed", "9",
        "--grid-max", "4", "--table", str(table), "--plot", str(fig),
    )
    rep = json.loads(out)
    assert code == 0
    assert rep["seed"] == 9
    assert len(rep["results"]["F"]) == len(rep["results"]["grid"])
    assert table.exists() and table.read_text().startswith("# lambda")
    assert fig.exists() and fig.stat().st_size > 0


def test_qform_isotropy(capsys):
    code, out, _ = run(
        capsys, "qform", "isotropy", "--coeffs", "1,1,-3,-3", "--height", "50"
    )
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["verdict"] == "no-zero-up-to"


def test_qform_pipeline(capsys):
    code, out, _ = run(capsys, "qform", "pipeline", "--p", "7")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["bound"] == 4
    assert rep["certificate"]


def test_missing_file_is_structured_error(capsys):
    code, out, err = run(
        capsys, "ns", "bound", "--index", "/no/such/file.json", "--levi", "SO,2,2"
    )
    assert code != 0
    assert out == ""
    assert json.loads(err)["error"]["type"] == "io-error"


def test_precondition_error_is_structured(capsys):
    code, _, err = run(capsys, "qform", "pipeline", "--p", "5")
    assert code != 0
    assert "error" in json.loads(err)


def test_malformed_index_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"base\": {}}")
    code, _, err = run(
        capsys, "ns", "bound", "--index", str(bad), "--levi", "SO,2,2"
    )
    assert code != 0
    assert json.loads(err)["error"]["type"] == "malformed-file"
