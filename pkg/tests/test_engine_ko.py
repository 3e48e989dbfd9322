import pytest

from manss.core.abgroups import same_groups
from manss.core.degrees import Degree, DegreeWindow
from manss.e2.closed_forms import e2_trivial_action, e2_motivic
from manss.e2.ext_chart import ko_ext_chart
from manss.engine.page import Contradiction, Page, Rejection
from manss.engine import compare

KO_RELATIONS = [("uh1^2", "u2 h1^2 + a^2 v1sq")]


def ko_page3(window=None):
    A = ko_ext_chart()
    pres = e2_trivial_action(A, KO_RELATIONS)
    w = window or DegreeWindow(0, 14, -12, 12, -8, 8)
    page = Page(pres.chart, 3, w)
    return A, pres, page


def seed_ko(page):
    ch = page.chart
    page.register(ch.monomial(a=1), {}, "hurewicz-permanent")
    page.register(ch.monomial(v1sq=1), {ch.monomial(h1=3): 1},
                  "restriction-to-ANSS")
    page.register(ch.monomial(u2=1), {ch.monomial(a=2, h1=1): 1}, "hfpss-import")
    page.register(ch.monomial(uh1=1),
                  {ch.monomial(a=2, u2=-1, h1=1, uh1=1): 1}, "ahss-mod-tau")
    page.register(ch.monomial(h1=1), {}, "ahss-mod-tau")


def test_register_degree_validation():
    A, pres, page = ko_page3()
    ch = page.chart
    # d3(u2) = a^2 [h1] is degree-correct
    page.register(ch.monomial(u2=1), {ch.monomial(a=2, h1=1): 1}, "hfpss-import")
    # a^3 [h1] is not
    with pytest.raises(Rejection) as exc:
        page.register(ch.monomial(v1sq=2), {ch.monomial(a=3, h1=1): 1},
                      "user-hypothesis")
    assert exc.value.reason == "wrong-degree"


def test_register_source_dead():
    # a reducible monomial is not a basis element
    A, pres, page = ko_page3()
    ch = page.chart
    with pytest.raises(Rejection) as exc:
        page.register(ch.monomial(uh1=2), {}, "user-hypothesis")
    assert exc.value.reason == "source-dead"
    # on E_4, u2 is dead and cannot be a source anymore
    A, pres, page = ko_page3(DegreeWindow(0, 8, -8, 8, -6, 6))
    seed_ko(page)
    page.leibniz_close()
    e4 = page.turn()
    with pytest.raises(Rejection) as exc:
        e4.register(ch.monomial(u2=1), {}, "user-hypothesis")
    assert exc.value.reason == "source-dead"


def test_d3_unit_and_leibniz_inverse():
    A, pres, page = ko_page3()
    seed_ko(page)
    ch = page.chart
    assert page.d_value(()) == {}
    # d(u^-2) = u^-4 a^2 h1 (sign trivial at p = 2)
    val = page.d_value(ch.monomial(u2=-1))
    assert val == {ch.monomial(u2=-2, a=2, h1=1): 1}


def test_leibniz_close_and_derived_values():
    A, pres, page = ko_page3(DegreeWindow(0, 8, -8, 8, -6, 6))
    seed_ko(page)
    derived = page.leibniz_close()
    assert derived
    ch = page.chart
    # d3(v1sq^2) = 2 v1sq h1^3 = 0
    assert page.d_value(ch.monomial(v1sq=2)) == {}
    # d3(u2 v1sq): = a^2 h1 v1sq + u2 h1^3
    val = page.d_value(ch.monomial(u2=1, v1sq=1))
    assert val == {ch.monomial(a=2, h1=1, v1sq=1): 1, ch.monomial(u2=1, h1=3): 1}


def test_exotic_relation_compatible_and_contradiction_detected():
    A, pres, page = ko_page3(DegreeWindow(0, 8, -8, 8, -6, 6))
    seed_ko(page)
    page.leibniz_close()  # no Contradiction: relation is d3-compatible
    # now rerun with a wrong differential: d3(v1sq) = 0 forces a contradiction
    A2, pres2, page2 = ko_page3(DegreeWindow(0, 8, -8, 8, -6, 6))
    ch = page2.chart
    page2.register(ch.monomial(a=1), {}, "hurewicz-permanent")
    page2.register(ch.monomial(v1sq=1), {}, "user-hypothesis")
    page2.register(ch.monomial(u2=1), {ch.monomial(a=2, h1=1): 1}, "hfpss-import")
    page2.register(ch.monomial(uh1=1), {}, "user-hypothesis")
    page2.register(ch.monomial(h1=1), {}, "user-hypothesis")
    with pytest.raises(Contradiction):
        page2.leibniz_close()


def test_turn_page_ko_e4_slots():
    A, pres, page = ko_page3(DegreeWindow(0, 10, -10, 10, -6, 6))
    seed_ko(page)
    page.leibniz_close()
    e4 = page.turn()
    # the generator [v1sq] dies; only 2 [v1sq] survives in filtration 0
    g = e4.labeled_group(Degree(0, 4, 0))
    assert g.labels == ("2*v1sq",) and e4.coeffs.is_free(g.orders[0])
    # [h1]^3 is hit by d3([v1sq]); the slot dies entirely
    assert e4.group(Degree(3, 3, 0)).is_trivial()
    # u2 supports a d3: only 2 u2 survives; u4 is a cycle and keeps its generator
    g = e4.labeled_group(Degree(0, 2, -2))
    assert g.labels == ("2*u2",)
    g = e4.labeled_group(Degree(0, 4, -4))
    assert g.labels == ("u2^2",)
    # v1sq^2 is a d3-cycle (2 v1sq h1^3 = 0) and survives with its generator
    g = e4.labeled_group(Degree(0, 8, 0))
    assert g.labels == ("v1sq^2",)
    # h1 survives: detects the Hopf class
    assert not e4.group(Degree(1, 1, 0)).is_trivial()
    # a-tower survives
    assert not e4.group(Degree(5, 0, -5)).is_trivial()


def test_turn_page_no_differentials_identity():
    A, pres, page = ko_page3(DegreeWindow(0, 6, -6, 6, -4, 4))
    ch = page.chart
    for g in ("a", "u2", "h1", "v1sq", "uh1"):
        page.register(ch.monomial(**{g: 1}), {}, "user-hypothesis")
    nxt = page.turn()
    again = nxt
    for d in [Degree(0, 0, 0), Degree(1, 1, 0), Degree(2, 2, -2), Degree(0, 4, 0)]:
        assert same_groups(page.group(d), nxt.group(d))


def test_restriction_to_underlying():
    A = ko_ext_chart()
    pres = e2_trivial_action(A, KO_RELATIONS)
    ch = pres.chart
    # [uh1] -> h1, a x -> 0, [v1sq] -> v1sq
    img = compare.restrict_to_anss(pres, {ch.monomial(uh1=1): 1})
    assert img == {A.chart.monomial(h1=1): 1}
    assert compare.restrict_to_anss(pres, {ch.monomial(a=1, h1=1): 1}) == {}
    img = compare.restrict_to_anss(pres, {ch.monomial(v1sq=1): 1})
    assert img == {A.chart.monomial(v1sq=1): 1}


def test_restriction_commutes_with_d3():
    A, pres, page = ko_page3(DegreeWindow(0, 6, -6, 6, -4, 4))
    seed_ko(page)
    page.leibniz_close()
    degs = list(page.window_degrees(DegreeWindow(0, 5, -5, 5, -4, 4)))
    assert compare.restriction_commutes(pres, page, degs)


def test_solver_derives_exotic_coefficients():
    """alpha = beta = 1 in [uh1]^2 = alpha u2 [h1]^2 + beta a^2 [v1sq]."""
    A = ko_ext_chart()
    solutions = []
    for alpha in (0, 1):
        for beta in (0, 1):
            rel = [("uh1^2", " + ".join(
                ([f"{alpha}*u2 h1^2"] if alpha else [])
                + ([f"{beta}*a^2 v1sq"] if beta else []) or ["0"]))]
            pres = e2_trivial_action(A, rel)
            ch = pres.chart
            # restriction constraint: res([uh1]^2) = h1^2 != 0
            img = compare.restrict_to_anss(pres, ch.reduce_monomial(ch.monomial(uh1=2)))
            if img != {A.chart.monomial(h1=2): 1}:
                continue
            # Leibniz constraint: d3 of both sides must agree
            page = Page(ch, 3, DegreeWindow(0, 8, -8, 8, -6, 6))
            seed_ko(page)
            try:
                page.leibniz_close()
            except Contradiction:
                continue
            solutions.append((alpha, beta))
    assert solutions == [(1, 1)]
