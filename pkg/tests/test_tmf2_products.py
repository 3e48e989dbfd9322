"""The frozen C3 chart rules re-derived from the exact lattice model.

The shipped rewrite rules of the level-3 chart carry numeric coefficients;
this oracle recomputes every one of them (and the zero rules) from polynomial
arithmetic in the invariant rows, so a wrong frozen coefficient cannot hide.
"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
from oracles import tmf2_model as T

from manss.core import intmat as im
from manss.core.coeffs import Coefficients
from manss.scenarios.builtin import TMF2_ZERO_RULES, tmf2_chart, tmf2_rules

PREC = T.PREC


def col(vals):
    v = im.zeros(len(vals), 1)
    for i, x in enumerate(vals):
        v[i, 0] = x
    return v


C4 = col([1, 1, 1])
DL = col([0, 1, 1, 0])
C6 = col([1, 3, 0, -1])
V1 = col([0, 1, -1, 0])
V1P = col([1, 2, -1, 1])
W4 = col([0, 1, 2, 2, 1, 0])
W4P = col([-1, -1, -2, 0, 0, 1])
W6 = col([0, -1, 1, -1, 1, -1, 1, 0])
W6P = col([1, 1, 1, 2, 1, 2, 0, 1])

GENS = {"c4": (2, 0, C4), "c6": (3, 0, C6), "Dh": (3, 0, DL),
        "v1b": (1, 1, V1), "v1bp": (1, 1, V1P),
        "w4": (2, 1, W4), "w4p": (2, 1, W4P),
        "w6": (3, 1, W6), "w6p": (3, 1, W6P)}


def model_product(names):
    k, s, v = GENS[names[0]]
    for name in names[1:]:
        k2, s2, v2 = GENS[name]
        v = T.mul_with_spokes(k, s, v, k2, s2, v2)
        k, s = k + k2, s + s2
    if s == 2:
        v = T.project_double_spoke(k, v)
        s = 0
    return k, s, v


def chart_poly_to_model(chart, poly):
    """Evaluate a chart polynomial (u_lambda powers dropped) in the model."""
    acc = None
    shape = None
    for m, c in poly.items():
        names = []
        for name, e in m:
            if name == "ul":
                continue
            assert e > 0 and name in GENS, (name, e)
            names += [name] * e
        k, s, v = model_product(names)
        v = (c % PREC) * v
        if acc is None:
            acc, shape = v, (k, s)
        else:
            assert shape == (k, s)
            acc = acc + v
    return shape, acc


def normalize_mod(v):
    return tuple(int(x) % PREC for x in v.flat)


def test_generators_are_the_invariant_lattice_bases():
    # v1b spans the non-norm part of the invariants of pi4 (x) spoke
    inv = T.invariants(1, 1)
    assert im.lattice_member(inv, V1[:, 0]) and im.lattice_member(inv, V1P[:, 0])
    B = im.hstack([V1, V1P])
    assert im.lattice_eq(inv, B)
    assert im.lattice_eq(T.invariants(2, 1), im.hstack([W4, W4P]))
    assert im.lattice_eq(T.invariants(3, 1), im.hstack([W6, W6P]))
    assert im.lattice_eq(T.invariants(2, 0), C4)
    assert im.lattice_eq(T.invariants(3, 0), im.hstack([DL, C6]))


def test_every_rewrite_rule_holds_in_the_model():
    chart = tmf2_chart(8)
    c = Coefficients(3, 8)
    for lhs_s, rhs_s in tmf2_rules(c):
        lhs = chart.parse_monomial(lhs_s)
        rhs = chart.parse_poly(rhs_s)
        (k1, s1), left = chart_poly_to_model(chart, {lhs: 1})
        (k2, s2), right = chart_poly_to_model(chart, rhs)
        assert (k1, s1) == (k2, s2), lhs_s
        assert normalize_mod(left) == normalize_mod(right), lhs_s


def test_zero_rules_hold_in_the_model():
    chart = tmf2_chart(8)
    for rule in TMF2_ZERO_RULES:
        if rule.startswith("asp"):
            continue  # torsion-row vanishing, checked by the additive scan
        m = chart.parse_monomial(rule)
        _, v = chart_poly_to_model(chart, {m: 1})
        assert normalize_mod(v) == tuple(0 for _ in v.flat), rule


def test_asp_zero_rules_via_cup_classes():
    """a_spoke kills exactly the declared generators: the cup class of each
    with the degree-one spoke class vanishes, while v1b's and Dh's do not."""
    def asp_class(k, s, v):
        u1 = col([1, 0])
        vv = T.mul_with_spokes(k, s, v, 0, 1, u1)
        if s == 1:
            vv = T.project_double_spoke(k, vv)
            g = T.gamma_sym(k)
        else:
            g = T.gamma_on(k, 1)
        n = g.shape[0]
        N = im.eye(n) + g + g @ g
        d1 = g - im.eye(n)
        Z = im.kernel(N)
        orders, reps = im.subquotient(Z, im.hnf_columns(d1))
        if not orders:
            return ()
        A = im.hstack([reps, d1, PREC * im.eye(n)])
        sol = im.solve(A, vv)
        assert sol is not None
        return tuple(int(sol[i, 0]) % 3 for i in range(reps.shape[1]))

    for name in ("c4", "c6", "v1bp", "w4", "w4p", "w6", "w6p"):
        k, s, v = GENS[name]
        cls = asp_class(k, s, v)
        assert all(x == 0 for x in cls), name
    for name in ("v1b", "Dh"):
        k, s, v = GENS[name]
        cls = asp_class(k, s, v)
        assert any(x != 0 for x in cls), name


def test_sigma3_metadata_spot_checks():
    """gamma^3 = 1 and mu^2 = 1 on the degree-4 row; the half-discriminant
    polynomial is gamma-invariant and squares to the discriminant shape."""
    g = T.gamma_sym(1)
    assert im.is_zero_matrix(g @ g @ g - im.eye(2))
    mu = im.intmat([[0, -1], [-1, 0]])  # e1 -> -e2, e2 -> -e1
    assert im.is_zero_matrix(mu @ mu - im.eye(2))
    # gamma and mu generate a order-6 group with mu gamma mu = gamma^2
    assert im.is_zero_matrix(mu @ g @ mu - g @ g)
    # half-discriminant 4 e1 e2 (e1 + e2) = 4 (e1^2 e2 + e1 e2^2) = 4 Dl
    g3 = T.gamma_sym(3)
    assert im.is_zero_matrix(g3 @ (4 * DL) - 4 * DL)
    mu3 = _mu_sym3()
    assert im.is_zero_matrix(mu3 @ (4 * DL) - (-4) * DL)  # odd under mu


def _mu_sym3():
    basis = T.sym_basis(3)
    index = {m: i for i, m in enumerate(basis)}
    from math import comb
    M = im.zeros(4, 4)
    for jcol, (a, b) in enumerate(basis):
        # mu(e1^a e2^b) = (-e2)^a (-e1)^b
        M[index[(b, a)], jcol] += (-1) ** (a + b)
    return M
