import pytest

from gradedgeo.errors import SpecSyntaxError, UnknownCoordinateError
from gradedgeo.grading import Degree
from gradedgeo.specfile import dump_spec, load_spec, parse_spec

from conftest import CORPUS, spec_path

G0_HEADER = """[chart]
n = 2
base = x
formal = z[1,1], xi[0,1], eta[1,0]

[metric]
"""


def diagnostic(text):
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text)
    return info.value.line, info.value.column


def test_chart_layout(g0):
    chart = g0.chart
    assert chart.n == 2
    assert chart.coordinates == ("x", "z", "xi", "eta")
    assert chart.trunc_order == 4
    assert g0.metric_degree == Degree.from_bits([1, 1])
    assert g0.name == "g0"


def test_name_defaults_to_file_name():
    spec = load_spec(spec_path("line_x"))
    assert spec.name == "line_x"


def test_trunc_override():
    assert load_spec(spec_path("flat"), trunc=2).chart.trunc_order == 2


@pytest.mark.parametrize("name", CORPUS)
def test_dump_parse_round_trip(name):
    spec = load_spec(spec_path(name))
    again = parse_spec(dump_spec(spec))
    assert again.chart == spec.chart
    assert again.metric_degree == spec.metric_degree
    assert again.metric.components.to_json() == spec.metric.components.to_json()
    assert set(again.vector_fields) == set(spec.vector_fields)
    assert dump_spec(again) == dump_spec(spec)


def test_mirror_entry_is_filled_with_sign(g0, flat):
    # <(0,1),(1,0)> = 0: xi y eta conmutan
    assert (g0.metric["xi", "eta"] - g0.metric["eta", "xi"]).is_zero()
    assert (g0.metric["z", "x"] - g0.metric["x", "z"]).is_zero()
    assert (flat.metric["xi2", "xi1"] + flat.metric["xi1", "xi2"]).is_zero()
    assert not flat.metric["xi2", "xi1"].is_zero()


def test_consistent_duplicate_is_accepted():
    spec = parse_spec(G0_HEADER + "degree = [1,1]\ng[x,z] = 1\ng[z,x] = 1\ng[eta,xi] = 1\n")
    assert ("z", "x") not in spec.metric_entries


def test_contradictory_entries():
    line, _ = diagnostic(G0_HEADER + "degree = [1,1]\ng[x,z] = 1\ng[z,x] = 2\n")
    assert line == 9


def test_declared_functions_and_fields(flat):
    assert set(flat.functions) == {"f", "h"}
    assert set(flat.vector_fields) == {"T1", "T2", "Tz", "Rot", "Dil"}
    assert flat.vector("Tz").degree == Degree.from_bits([1, 1])
    assert (flat.function("2*f") - flat.function("f").scale(2)).is_zero()
    with pytest.raises(UnknownCoordinateError):
        flat.vector("W")


@pytest.mark.parametrize("text, line, column", [
    (G0_HEADER + "degree = [1,2]\n", 7, 10),
    (G0_HEADER + "degree = [1]\n", 7, 10),
    (G0_HEADER + "degree = [1,1]\ng[x,w] = 1\n", 8, 5),
    (G0_HEADER + "degree = [1,1]\ng[x,z] = 1 + $\n", 8, 14),
    (G0_HEADER + "degree = [1,1]\nh[x,z] = 1\n", 8, 1),
    (G0_HEADER + "degree = [1,1]\ng[x,z]\n", 8, 7),
    ("[chart]\nn = two\n", 2, 5),
    ("[chart]\nbase = x\n", 1, 1),
    ("n = 2\n", 1, 1),
    ("[chart]\nn = 1\n[coords]\n", 3, 1),
    ("[chart]\nn = 1\nformal = theta[2]\n", 3, 10),
    ("[chart]\nn = 1\ntrunc = 3\nbase = x\ntrunc = 2\n", 5, 1),
    ("[chart]\nn = 1\nn = 1\n", 3, 1),
])
def test_diagnostics(text, line, column):
    assert diagnostic(text) == (line, column)


def test_inhomogeneous_field_is_rejected():
    text = G0_HEADER + "degree = [1,1]\ng[x,z] = 1\ng[eta,xi] = 1\n\n[fields]\nV[x] = 1\nV[xi] = 1\n"
    line, _ = diagnostic(text)
    assert line == 12


def test_function_name_cannot_shadow_coordinate():
    line, _ = diagnostic(G0_HEADER + "degree = [1,1]\ng[x,z] = 1\n[fields]\nx = 1\n")
    assert line == 10
