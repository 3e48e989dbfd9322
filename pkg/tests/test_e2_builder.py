import random

import pytest

from manss.core.abgroups import AbGroup, same_groups
from manss.core.chart import ChartAlgebra, Generator
from manss.core.coeffs import Coefficients
from manss.core.degrees import Degree
from manss.e2.closed_forms import (congruent_mod_a, e2_motivic,
                                   e2_mur_projective, e2_trivial_action,
                                   translate, translation_images)
from manss.e2.dcss import DcssIOracle, dcss_ii_slot, dcss_trivial_group
from manss.e2.ext_chart import ExtChart, ko_ext_chart
from manss.e2.oracle import BruteTotal
from manss.e2.synth import realize_column
from manss.e2.uct import UCTData, uct_split

KO_RELATIONS = [("uh1^2", "u2 h1^2 + a^2 v1sq")]


def chart_orders(pres, d):
    c = pres.chart.coeffs
    return tuple(sorted(0 if c.is_free(o) else o
                        for o in pres.chart.bidegree_basis(d).orders))


def oracle_orders(g: AbGroup, c: Coefficients):
    return tuple(sorted(0 if c.is_free(o) else o for o in g.orders))


def test_ko_trivial_action_degrees():
    pres = e2_trivial_action(ko_ext_chart(), KO_RELATIONS)
    gens = pres.chart.gens
    assert gens["h1"].degree == Degree(1, 1, 0)
    assert gens["v1sq"].degree == Degree(0, 4, 0)
    assert gens["uh1"].degree == Degree(1, 2, -1)
    assert not gens["uh1"].single_use  # it has a square rule


def test_ko_mur_projective_degrees():
    pres = e2_mur_projective(ko_ext_chart(),
                             [("uh1b^2", "u2 h1b^2 + a^2 v1sqb")])
    gens = pres.chart.gens
    assert gens["h1b"].degree == Degree(1, 0, 1)
    assert gens["v1sqb"].degree == Degree(0, 2, 2)
    assert gens["uh1b"].degree == Degree(1, 1, 0)


def test_ko_motivic_degrees():
    pres = e2_motivic(ko_ext_chart(), KO_RELATIONS)
    gens = pres.chart.gens
    assert gens["uh1"].degree == Degree(1, 2, -1, 0, 1)
    assert gens["tau"].degree == Degree(-2, 0, 0, 0, -1)
    assert gens["u2"].degree == Degree(0, 2, -2, 0, 1)
    # the square rule acquired a tau to stay weight-homogeneous
    (lhs, rhs), = [r for r in pres.chart.rewrite_rules
                   if r[0] == pres.chart.monomial(uh1=2)]
    assert pres.chart.monomial(tau=1, u2=1, h1=2) in rhs
    assert pres.chart.monomial(a=2, v1sq=1) in rhs


def test_e2_of_unit_is_euler_ring():
    c = Coefficients(2)
    unit = ExtChart(ChartAlgebra("triv", c, []))
    pres = e2_trivial_action(unit)
    assert set(pres.chart.gens) == {"u2", "a"}
    g = pres.chart.bidegree_basis(Degree(2, 0, -2))
    assert g.labels == ("a^2",)


@pytest.mark.parametrize("j", [-2, -1, 0, 1, 3])
def test_ko_closed_form_vs_brute_oracle(j):
    A = ko_ext_chart()
    pres = e2_trivial_action(A, KO_RELATIONS)
    bt = BruteTotal(A, j, f_max=8)
    for f in range(0, 8):
        for stem in range(-6, 7):
            got = chart_orders(pres, Degree(f, stem, j))
            want = oracle_orders(bt.slot(f, stem), A.coeffs)
            assert got == want, (f, stem, j, got, want)


def test_synthetic_column_recovers_chart():
    A = ko_ext_chart()
    for two_t in range(0, 10, 2):
        col = realize_column(A, two_t, 6)
        for s in range(0, 6):
            orders, _ = col.cx.homology(s)
            got = tuple(sorted(A.coeffs.order_from_z(o) for o in orders))
            assert got == A.group(s, two_t).order_multiset()


def test_dcss_ii_examples():
    A = ko_ext_chart()
    # trivial group level: concentrated at a = 0 and equal to the chart
    assert dcss_trivial_group(A, 0, 4).order_multiset() == (2 ** 8,)
    # a^2-multiples: H^2 of a sign-trivial Z at (b, stem) = (0, ...)
    g = dcss_ii_slot(A, 2, 0, 0, -2)
    assert g.order_multiset() == (2,)
    # odd internal degree: empty
    assert dcss_ii_slot(A, 1, 0, 0, -2).is_trivial()


def test_dcss_cross_oracle_ko():
    """Both double complexes collapse, so their totals agree degreewise."""
    A = ko_ext_chart()
    f_max = 6
    oracle1 = DcssIOracle(A, f_max)
    for stem in range(-4, 5):
        for twist in range(-4, 5):
            for f in range(0, f_max + 1):
                tot1 = []
                tot2 = []
                for a in range(0, f + 1):
                    b = f - a
                    tot1 += list(oracle1.slot(b, a, stem, twist).orders)
                    tot2 += list(dcss_ii_slot(A, a, b, stem, twist).orders)
                assert sorted(tot1) == sorted(tot2), (f, stem, twist)


def test_dcss_i_matches_manss_e2():
    """Collapse of the first double complex: totals equal the closed form."""
    A = ko_ext_chart()
    pres = e2_trivial_action(A, KO_RELATIONS)
    oracle1 = DcssIOracle(A, 8)
    for stem in range(-4, 5):
        for twist in range(-3, 4):
            for f in range(0, 6):
                tot = []
                for a in range(0, f + 1):
                    tot += list(oracle1.slot(a, f - a, stem, twist).orders)
                got = chart_orders(pres, Degree(f, stem, twist))
                assert got == oracle_orders(AbGroup(tuple(tot)), A.coeffs)


def test_uct_split_examples():
    A = ko_ext_chart()
    # H = Z: middle = A, Tor = 0
    slot = uct_split(A, 0, 1, 2)
    assert slot.tor.is_trivial()
    assert same_groups(slot.middle, slot.tensor)
    # H = Z/2 at the h1 slot: both end terms F_2
    slot = uct_split(A, 2, 1, 2)
    assert slot.tensor.order_multiset() == (2,)
    assert slot.tor.is_trivial()  # A^{2,2} = 0
    slot = uct_split(A, 2, 0, 2)
    assert slot.tensor.is_trivial()  # A^{0,2} = 0
    assert slot.tor.order_multiset() == (2,)  # Tor(A^{1,2}, F_2) = F_2{h1}


def test_uct_order_product_random():
    rng = random.Random(61)
    A = ko_ext_chart()
    for _ in range(30):
        s = rng.randint(0, 4)
        two_t = 2 * rng.randint(0, 5)
        h = rng.choice([0, 2, 4, 8])
        slot = uct_split(A, h, s, two_t)

        def size(g):
            n = 1
            for o in g.orders:
                n *= o if o else 0
            return n if all(g.orders) else 0

        if all(slot.middle.orders) and all(slot.tensor.orders) and all(slot.tor.orders):
            assert size(slot.middle) == size(slot.tensor) * size(slot.tor)
        assert slot.middle.rank == slot.tensor.rank + slot.tor.rank


def test_uct_lift_ambiguity_shape():
    """Two splitting choices differ by alpha-images only."""
    c = Coefficients(2)
    chart = ChartAlgebra("triv", c, [
        Generator("y", Degree(0, 2, 0)),           # free class below h1
        Generator("x", Degree(1, 1, 0), torsion=1),
    ])
    A = ExtChart(chart, a2_generators=("x",))
    data = UCTData(A, 2, 6)
    poly = {chart.monomial(x=1): 1}
    diff = data.splitting_difference(0, 2, poly)
    # the difference is a cocycle whose class lies in the image of alpha
    T = data.total(2)
    if not all(v == 0 for v in diff.flat):
        col = data.column(2)
        alpha = T.embed(0, 0, col.class_vector(0, {chart.monomial(y=1): 1}))
        # diff must be an integer combination of alpha-type vectors
        from manss.core import intmat as im
        assert im.solve(alpha, diff) is not None


def test_translation_ko_identities():
    A = ko_ext_chart()
    triv = e2_trivial_action(A, KO_RELATIONS)
    bar = e2_mur_projective(A, [("uh1b^2", "u2 h1b^2 + a^2 v1sqb")])
    img = translation_images(triv, bar)
    bc = bar.chart
    assert img["v1sq"] == {bc.monomial(u2=1, v1sqb=1): 1}
    assert img["h1"] == {bc.monomial(uh1b=1): 1}
    assert img["uh1"] == {bc.monomial(u2=1, h1b=1): 1}
    # the translation respects the two exotic squares (h1^2bar identity)
    tc = triv.chart
    lhs = translate(triv, bar, tc.reduce_monomial(tc.monomial(uh1=2)))
    rhs = translate(triv, bar, {tc.monomial(uh1=2): 1})
    assert lhs == rhs
    # [x] = u^{2k} (u^eps x)bar mod (a): exact here for generators; check a
    # genuinely inexact case, [h1^2] vs u^2 h1^2bar
    h1sq = {tc.monomial(h1=2): 1}
    image = translate(triv, bar, h1sq)
    direct = {bc.monomial(u2=1, uh1b=0, h1b=2): 1}
    assert congruent_mod_a(bc, image, direct)
    assert image != direct


def test_uct_lift_slot_ambiguity_shape():
    """Alternate u-lift choices differ by classes of the stated shape: the
    other monomials in a [uy]-slot all carry (a^2/u^2)^i a [x] with i >= 0."""
    c = Coefficients(2)
    chart = ChartAlgebra("triv", c, [
        Generator("y", Degree(0, 2, 0)),           # nonzero A^{0,2}
        Generator("x", Degree(1, 1, 0), torsion=1),
    ])
    A = ExtChart(chart, a2_generators=("x",))
    pres = e2_trivial_action(A)
    # |[ux]| for x in A^{1,2}: (1, 2, -1)
    slot = pres.chart.bidegree_basis(Degree(1, 2, -1))
    others = [m for m in pres.chart.monomials_of_degree(Degree(1, 2, -1))
              if dict(m).get("ux", 0) == 0]
    assert len(slot.orders) == len(others) + 1
    for m in others:
        exps = dict(m)
        a_exp = exps.get("a", 0)
        u_exp = exps.get("u2", 0)
        assert a_exp % 2 == 1 and a_exp >= 1
        assert u_exp == -(a_exp - 1) // 2  # (a^2/u^2)^i * a shape
    # and the chain-level splitting difference is an alpha-image (tested in
    # test_uct_lift_ambiguity_shape above)


def test_translation_is_slotwise_bijective():
    A = ko_ext_chart()
    triv = e2_trivial_action(A, KO_RELATIONS)
    bar = e2_mur_projective(A, [("uh1b^2", "u2 h1b^2 + a^2 v1sqb")])
    for f in range(0, 5):
        for stem in range(-4, 5):
            for twist in range(-4, 3):
                d = Degree(f, stem, twist)
                a = triv.chart.bidegree_basis(d).order_multiset()
                b = bar.chart.bidegree_basis(d).order_multiset()
                assert a == b, d
