import json
from pathlib import Path

import pytest

from manss.core.degrees import Degree, DegreeWindow
from manss.engine.compare import odd_page_reindex
from manss.engine.deduction import run_deduction_script, is_permanent_in_window
from manss.engine.modtau import tau_lift_poly
from manss.engine.page import Page, Rejection
from manss.scenarios.builtin import (ko_presentations, tmf2_scenario_data)
from manss.scenarios.schema import Scenario, load_scenario
from manss.engine.compare import invert_tau_chart

DATA = Path(__file__).resolve().parents[1] / "src/manss/scenarios/data"

WINDOW = DegreeWindow(0, 12, -10, 16, -5, 5)
CHECK = DegreeWindow(0, 11, -8, 12, -4, 4)


@pytest.fixture(scope="module")
def tmf2_run():
    sc = Scenario(tmf2_scenario_data(8))
    pres = sc.presentation()
    res = run_deduction_script(pres, sc, window=WINDOW, check_window=CHECK)
    return sc, pres, res


def test_seed_registration_and_degree_checks(tmf2_run):
    sc, pres, res = tmf2_run
    chart = pres.chart
    p5 = res.pages[5]
    # the stated d5 seed is registered; a twist-broken variant is rejected
    assert p5.d_value(chart.monomial(ul=1)) == chart.parse_poly("asp^5 v1b")
    with pytest.raises(Rejection) as exc:
        p5.register(chart.parse_monomial("ul^3"),
                    chart.parse_poly("asp^5 v1b"), "user-hypothesis")
    assert exc.value.reason == "wrong-degree"


def test_leibniz_at_odd_prime(tmf2_run):
    """d5(ul^2) = 2 ul asp^5 v1b = -ul asp^5 v1b modulo 3."""
    sc, pres, res = tmf2_run
    chart = pres.chart
    val = res.pages[5].d_value(chart.monomial(ul=2))
    (m, c), = val.items()
    assert m == chart.parse_monomial("ul asp^5 v1b")
    assert c % 3 == 2


def test_delta_cube_periodicity_and_survivors(tmf2_run):
    sc, pres, res = tmf2_run
    assert res.collapse == []
    assert is_permanent_in_window(res, "Dh^3")
    e10 = res.final
    g = e10.labeled_group(Degree(0, 36, 0, 0))
    assert "Dh^3" in g.labels
    # ul is gone but 3 ul survives in its slot; ul^3 survives on the nose
    g = e10.labeled_group(Degree(0, 2, -1, 0))
    assert g.labels == ("3*ul",)
    g = e10.labeled_group(Degree(0, 6, -3, 0))
    assert g.labels == ("ul^3",)


def test_audit_replay_is_byte_deterministic(tmf2_run):
    sc, pres, res = tmf2_run
    res2 = run_deduction_script(pres, sc, window=WINDOW, check_window=CHECK)
    assert res2.audit_text() == res.audit_text()
    from manss.scenarios.charts import emit_chart
    w = DegreeWindow(0, 10, -8, 12, -1, 1)
    assert emit_chart(res2.final, "svg", 0, w) == \
        emit_chart(res.final, "svg", 0, w)


def test_tmf2_golden_regression(tmf2_run):
    sc_file = load_scenario(DATA / "tmf2.chart.json")
    sc, pres, res = tmf2_run
    from manss.engine.deduction import surviving_cells
    cells = surviving_cells(res.final, WINDOW)
    golden = {tuple(c["degree"]): c for c in sc_file.data["golden"]}
    assert set(cells) == set(golden)


def test_hfpss_import_gate():
    sc = Scenario(tmf2_scenario_data(8))
    pres = sc.presentation()
    page = Page(pres.chart, 5, DegreeWindow(0, 8, -6, 8, -4, 4))
    from manss.engine.deduction import hfpss_import
    fact = hfpss_import(page, sc, "ul", "asp^5 v1b")
    assert fact.justification == "hfpss-import"
    ko_sc = Scenario(__import__("manss.scenarios.builtin",
                                fromlist=["ko_scenario_data"]).ko_scenario_data(8))
    ko_pres = ko_sc.presentation()
    ko_page = Page(ko_pres.chart, 3, DegreeWindow(0, 8, -6, 6, -4, 4))
    with pytest.raises(Rejection):
        hfpss_import(ko_page, ko_sc, "u2", "a^2 h1")


def test_invert_tau_recovers_plain_chart():
    A, triv, bar, mot = ko_presentations(8)
    inv = invert_tau_chart(mot.chart)
    for f in range(0, 5):
        for stem in range(-4, 5):
            for twist in range(-3, 3):
                d = Degree(f, stem, twist)
                assert inv.bidegree_basis(d).order_multiset() == \
                    triv.chart.bidegree_basis(d).order_multiset()


def test_tau_lift_of_seeds():
    A, triv, bar, mot = ko_presentations(8)
    chart = mot.chart
    lifted = tau_lift_poly(chart, 2, chart.parse_poly("h1^3"))
    assert lifted == {chart.parse_monomial("tau h1^3"): 1}


def test_odd_page_reindex_contract():
    assert odd_page_reindex(1, 3, 5) == (1, (4, 5))
    with pytest.raises(ValueError):
        odd_page_reindex(1, 3, 4)
