import json

import pytest

from gradedgeo import cli, config, db
from gradedgeo.errors import DegreeError
from gradedgeo.specfile import parse_spec

from conftest import load, spec_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_odd_scalar_is_symbolic_zero(capsys):
    code, out, _ = run(capsys, "scalar", "--spec", spec_path("odd_r1111"), "--json")
    doc = json.loads(out)
    assert code == cli.EXIT_OK
    assert doc["result"] == {"scalar": "0", "status": "symbolic-zero"}
    assert doc["reports"][0]["name"] == "odd-scalar"


def test_flat_christoffel_is_empty(capsys):
    code, out, _ = run(capsys, "christoffel", "--spec", spec_path("flat"), "--trunc", "2", "--json")
    assert code == cli.EXIT_OK
    assert json.loads(out)["result"] == {"christoffel": {}}


def test_json_output_is_deterministic(capsys):
    argv = ("ricci", "--spec", spec_path("sphere"), "--json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_text_output(capsys):
    code, out, _ = run(capsys, "validate", "--spec", spec_path("g0"))
    assert code == cli.EXIT_OK
    assert "validate" in out


def test_malformed_degree_exits_with_usage(tmp_path, capsys):
    path = tmp_path / "bad.spec"
    path.write_text("[chart]\nn = 2\nbase = x\n\n[metric]\ndegree = [1,2]\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", "--spec", str(path), "--json")
    assert code == cli.EXIT_USAGE
    doc = json.loads(err)
    assert doc["error"] == "syntax"
    assert (doc["line"], doc["column"]) == (6, 10)


def test_missing_file_exits_with_usage(tmp_path, capsys):
    code, _, err = run(capsys, "validate", "--spec", str(tmp_path / "nada.spec"))
    assert code == cli.EXIT_USAGE
    assert err.startswith("error:")


def test_missing_argument(capsys):
    code, _, _ = run(capsys, "laplacian", "--spec", spec_path("flat"))
    assert code == cli.EXIT_USAGE


def test_unknown_field(capsys):
    code, _, _ = run(capsys, "killing", "W", "--spec", spec_path("flat"))
    assert code == cli.EXIT_USAGE


def test_constant_kappa_on_g0_is_a_precondition_failure(capsys):
    code, _, err = run(capsys, "einstein", "1", "--spec", spec_path("g0"), "--json")
    assert code == cli.EXIT_PRECONDITION
    assert json.loads(err)["error"] == "DegreeError"


def test_dilation_is_reported_as_nonzero(capsys):
    code, out, _ = run(capsys, "killing", "Dil", "--spec", spec_path("flat"))
    assert code == cli.EXIT_NONZERO
    assert "FALLA" in out


def test_product_emits_a_loadable_spec(capsys):
    code, out, _ = run(capsys, "product", "--spec", spec_path("line_x"), "--second", spec_path("line_y"), "--json")
    assert code == cli.EXIT_OK
    spec = parse_spec(json.loads(out)["result"]["spec"])
    assert spec.chart.coordinates == ("x", "y")


def test_warp_uses_the_first_chart(capsys):
    code, out, _ = run(capsys, "warp", "exp((x^2 + z^2)/k^2)", "--spec", spec_path("g0_factor1"),
                       "--second", spec_path("g0_factor2"), "--json")
    assert code == cli.EXIT_OK
    warped = parse_spec(json.loads(out)["result"]["spec"]).metric
    assert (warped["eta", "xi"] - load("g0_warped").metric["eta", "xi"]).is_zero()


def test_run_command_laplacian_on_odd_metric():
    result = cli.run_command(load("odd_r1111"), "laplacian", "f")
    assert result.passed
    assert result.payload["status"] == "symbolic-zero"


def test_run_command_rejects_unknown_command(flat):
    with pytest.raises(cli.UsageError):
        cli.run_command(flat, "torsion")


def test_run_command_propagates_degree_errors(g0):
    with pytest.raises(DegreeError):
        cli.run_command(g0, "einstein", "1")


def test_save_writes_history(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(config, "DB_PATH", str(tmp_path / "historial.duckdb"))
    code, _, _ = run(capsys, "compat", "--spec", spec_path("g0"), "--save")
    assert code == cli.EXIT_OK
    frame = db.list_verificaciones(carta="g0")
    assert list(frame["comando"]) == ["compat"]
    assert bool(frame["aprobado"].iloc[0])
