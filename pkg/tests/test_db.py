import duckdb
import pytest

from gradedgeo import db
from gradedgeo.geometry import validate_metric
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel import GradedSeries

from conftest import load


@pytest.fixture
def con():
    con = duckdb.connect(":memory:")
    db.init_db(con)
    yield con
    con.close()


def failing_report(chart):
    report = CheckReport("killing")
    report.add("killing", ("x", "x"), GradedSeries.one(chart))
    return report


def test_register_and_list(con, g0):
    first = db.registrar_verificacion("g0", "validate", [validate_metric(g0.metric)], con=con)
    second = db.registrar_verificacion("g0", "killing", [failing_report(g0.chart)], con=con)
    assert second == first + 1
    frame = db.list_verificaciones(con=con)
    assert list(frame["id"]) == [second, first]
    failed = db.list_verificaciones(solo_fallidas=True, con=con)
    assert list(failed["comando"]) == ["killing"]
    assert int(failed["no_nulos"].iloc[0]) == 1


def test_filter_by_chart(con, g0):
    db.registrar_verificacion("g0", "validate", [validate_metric(g0.metric)], con=con)
    sphere = load("sphere")
    db.registrar_verificacion("sphere", "validate", [validate_metric(sphere.metric)], con=con)
    assert list(db.list_verificaciones(carta="sphere", con=con)["carta"]) == ["sphere"]


def test_summary_round_trip(con, g0):
    new_id = db.registrar_verificacion("g0", "validate", [validate_metric(g0.metric)],
                                       extra={"degree": [1, 1]}, con=con)
    resumen = db.get_resumen(new_id, con=con)
    assert resumen["extra"] == {"degree": [1, 1]}
    assert resumen["reports"]["passed"] is True
    assert db.get_resumen(new_id + 100, con=con) is None


def test_sequence_resumes_after_reopen(tmp_path, g0):
    path = str(tmp_path / "h.duckdb")
    con = duckdb.connect(path)
    db.init_db(con)
    first = db.registrar_verificacion("g0", "validate", [validate_metric(g0.metric)], con=con)
    con.close()
    con = duckdb.connect(path)
    db.init_db(con)
    assert db.registrar_verificacion("g0", "validate", [], con=con) == first + 1
    con.close()
