import pytest

import louvre

BB72 = "data/codes/bb72.code"


def test_load_and_parameters():
    code = louvre.load_code(BB72)
    assert (code.name, code.n, code.k, code.qubits) == ("bb72", 72, 12, 144)


def test_parse_error_maps_to_value_error():
    with pytest.raises(louvre.CodeParseError):
        louvre.parse_code("l=3\nm=3\nA=1+q\nB=1\n")


def test_schedule_metrics_and_table_roundtrip():
    code = louvre.load_code(BB72)
    sched = louvre.build_schedule(code, "l8")
    m = louvre.metrics(code, sched)
    assert (m["degree"], m["distance"]) == ("4", "12")
    assert m["degree_float"] == pytest.approx(4.0)

    again = louvre.parse_table(sched.table(), code)
    assert again.table() == sched.table()


def test_verify_reports_pass():
    code = louvre.load_code(BB72)
    rep = louvre.verify(code, louvre.build_schedule(code, "l7"))
    assert rep["verified"]
    assert rep["determinism"]["passed"] and rep["restoration"]["passed"]


def test_published_table_verifies():
    code = louvre.load_code(BB72)
    with open("data/tables/bb72_l8r.table") as fh:
        sched = louvre.parse_table(fh.read(), code)
    assert louvre.verify(code, sched)["verified"]
    m = louvre.metrics(code, sched)
    assert (m["degree"], m["distance"]) == ("4.5", "17.5")


def test_route_is_reproducible():
    code = louvre.load_code(BB72)
    sched = louvre.build_schedule(code, "l7")
    first = louvre.route(code, sched, seed=3)
    second = louvre.route(code, sched, seed=3)
    assert first["valid"] and first == second
    assert first["tiers"] >= 2


def test_emit_counts():
    code = louvre.load_code(BB72)
    doc = louvre.emit(code, louvre.build_schedule(code, "regular"), rounds=3, p=0.001)
    assert doc["rounds"] == 3 and doc["qubits"] == 144
    assert doc["detectors"] > 0 and "DEPOLARIZE2" in doc["text"]


def test_hypergraph_product():
    assert louvre.hypergraph_product_params(6, 2) == (72, 8)
    assert louvre.hypergraph_product_params(7, 3, periodic=False) == (65, 9)
