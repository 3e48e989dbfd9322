import random

import pytest

from manss.core import intmat as im
from manss.core.abgroups import AbGroup, same_groups
from manss.filtered import complexes as cxs
from manss.filtered.convolution import associated_graded, day_convolution
from manss.filtered.decalage import (decalage, decalage_even,
                                     is_even_concentrated, verify_page_shift,
                                     verify_page_shift_even)
from manss.filtered.leibniz import d1_leibniz_check
from manss.filtered.pages import ss_pages
from manss.filtered import textio


def test_unit_graded():
    gr = associated_graded(cxs.unit_filtration())
    assert gr == {(0, 0): AbGroup((0,))}


def test_two_step_graded():
    gr = associated_graded(cxs.two_step(2))
    assert gr[(0, 0)].order_multiset() == (2,)
    assert gr[(1, 0)].order_multiset() == (0,)


def test_convolution_unit_and_square():
    I = cxs.two_step(2)
    U = cxs.unit_filtration()
    IU = day_convolution(I, U)
    assert associated_graded(IU) == associated_graded(I)
    II = day_convolution(I, I)
    gr = associated_graded(II)
    assert gr[(0, 0)].order_multiset() == (2,)
    assert gr[(1, 0)].order_multiset() == (2,)
    assert gr[(2, 0)].order_multiset() == (0,)


def test_convolution_graded_kunneth_random():
    rng = random.Random(101)
    for _ in range(8):
        I = cxs.random_filtered_complex(rng, max_levels=3, max_rank=2, entries=2)
        J = cxs.random_filtered_complex(rng, max_levels=3, max_rank=2, entries=2)
        conv = day_convolution(I, J)
        # rank check of Gr^n(IxJ) = sum Gr^i I x Gr^j J  (free ranks per degree)
        for n in range(conv.s_min, conv.s_max + 1):
            for m in conv.cx.degrees():
                lhs = im.rank(conv.level(n, m)) - im.rank(conv.level(n + 1, m))
                rhs = 0
                for i in range(I.s_min, I.s_max + 1):
                    j = n - i
                    for m1 in I.cx.degrees():
                        m2 = m - m1
                        a = im.rank(I.level(i, m1)) - im.rank(I.level(i + 1, m1))
                        b = im.rank(J.level(j, m2)) - im.rank(J.level(j + 1, m2))
                        rhs += a * b
                assert lhs == rhs


def test_convolution_completeness():
    rng = random.Random(55)
    for _ in range(6):
        I = cxs.random_filtered_complex(rng, 3, 2, 2)
        J = cxs.random_filtered_complex(rng, 3, 2, 2)
        conv = day_convolution(I, J)
        for m in conv.cx.degrees():
            assert conv.level(conv.s_max + 1, m).shape[1] == 0


def _associator(I, J, K, L, R, m):
    """Permutation matrix sending R-ambient coordinates to L-ambient ones.

    Both sides have basis e_a (x) f_b (x) g_c; only the block ordering by
    internal degrees differs, so the associator is a signless permutation.
    """
    TIJ = L.cx.c1
    TK = L.cx
    TJK = R.cx.c2
    labels_L = {}
    for m12, m3, offL in TK._blocks.get(m, []):
        for m1, m2, offIJ in TIJ._blocks.get(m12, []):
            r1, r2, r3 = I.cx.rank(m1), J.cx.rank(m2), K.cx.rank(m3)
            for a in range(r1):
                for b in range(r2):
                    for c in range(r3):
                        idx = offL + (offIJ + a * r2 + b) * r3 + c
                        labels_L[(m1, m2, m3, a, b, c)] = idx
    labels_R = {}
    for m1, m23, offR in R.cx._blocks.get(m, []):
        for m2, m3, offJK in TJK._blocks.get(m23, []):
            r1, r2, r3 = I.cx.rank(m1), J.cx.rank(m2), K.cx.rank(m3)
            for a in range(r1):
                for b in range(r2):
                    for c in range(r3):
                        idx = offR + a * TJK.rank(m23) + offJK + b * r3 + c
                        labels_R[(m1, m2, m3, a, b, c)] = idx
    P = im.zeros(L.cx.rank(m), R.cx.rank(m))
    assert set(labels_L) == set(labels_R)
    for lab, iL in labels_L.items():
        P[iL, labels_R[lab]] = 1
    return P


def test_monoidal_associativity_levelwise():
    rng = random.Random(77)
    for _ in range(4):
        I = cxs.random_filtered_complex(rng, 3, 2, 2)
        J = cxs.random_filtered_complex(rng, 3, 2, 2)
        K = cxs.random_filtered_complex(rng, 3, 2, 2)
        L = day_convolution(day_convolution(I, J), K)
        R = day_convolution(I, day_convolution(J, K))
        assert L.s_min == R.s_min and L.s_max == R.s_max
        for m in L.cx.degrees():
            P = _associator(I, J, K, L, R, m)
            for n in range(L.s_min, L.s_max + 1):
                assert im.lattice_eq(L.level(n, m), P @ R.level(n, m)), (n, m)


def test_ss_pages_trivial_filtration():
    cx = cxs.Complex({0: 2, 1: 1}, {0: im.intmat([[0, 0]])})
    fc = cxs.FilteredComplex(cx, 0, 0, {})
    P = ss_pages(fc)
    assert P.page(1) == P.page(P.r_collapse)
    assert P.group(1, 0, 0).order_multiset() == (0, 0)
    assert P.group(1, 0, -1).order_multiset() == (0,)


def test_ss_pages_crossing_differential():
    fc = cxs.crossing_differential(2)
    P = ss_pages(fc)
    assert P.group(1, 0, 0).order_multiset() == (0,)
    assert P.group(1, 1, -1).order_multiset() == (0,)
    D = P.differential(1, 0, 0)
    assert D is not None and abs(D[0, 0]) == 2
    assert P.group(2, 0, 0).is_trivial()
    assert P.group(2, 1, -1).order_multiset() == (2,)
    assert P.converges()


def test_ss_pages_random_convergence_100():
    rng = random.Random(424242)
    for _ in range(100):
        fc = cxs.random_filtered_complex(rng, max_levels=6, max_rank=4, entries=3)
        P = ss_pages(fc)
        assert P.converges()
        for r in range(1, P.r_collapse):
            assert P.dr_squared_is_zero(r)


def test_decalage_unit_and_two_step():
    dec = decalage(cxs.unit_filtration())
    P = ss_pages(dec)
    assert P.group(1, 0, 0).order_multiset() == (0,)
    # crossing differential: E_2-phenomenon moves to E_1 of the decalage
    fc = cxs.crossing_differential(2)
    dec = decalage(fc)
    DP = ss_pages(dec)
    # the E_2 class of the original appears on E_1 at (s+n, n) = (0, -1)
    assert DP.group(1, 0, -1).order_multiset() == (2,)
    assert DP.group(1, 0, 0).is_trivial()


def test_page_shift_two_step():
    fc = cxs.crossing_differential(2)
    rep = verify_page_shift(fc, 1)
    assert rep.ok, rep.mismatches


def test_page_shift_zero_differentials():
    cx = cxs.Complex({0: 2}, {})
    fc = cxs.FilteredComplex(cx, 0, 1, {(1, 0): im.intmat([[1], [0]])})
    for r in range(1, 4):
        assert verify_page_shift(fc, r).ok


def test_page_shift_random_100():
    rng = random.Random(987654)
    for _ in range(100):
        fc = cxs.random_filtered_complex(rng, max_levels=6, max_rank=4, entries=3)
        P = ss_pages(fc)
        DP = ss_pages(decalage(fc))
        for r in range(1, P.r_collapse + 1):
            rep = verify_page_shift(fc, r, pages=P, dec_pages=DP)
            assert rep.ok, (r, rep.mismatches)


def test_even_page_shift():
    rng = random.Random(31337)
    count = 0
    for _ in range(25):
        fc = cxs.random_even_filtered_complex(rng)
        if not is_even_concentrated(fc):
            continue
        count += 1
        for r in range(1, (fc.s_max - fc.s_min) // 2 + 2):
            rep = verify_page_shift_even(fc, r)
            assert rep.ok, (r, rep.mismatches)
    assert count >= 20


def test_d1_leibniz_two_step_square():
    I = cxs.crossing_differential(2)
    rep = d1_leibniz_check(I, I)
    assert rep and rep.checked > 0


def test_d1_leibniz_random_pairs():
    rng = random.Random(13579)
    total = 0
    for _ in range(12):
        I = cxs.random_filtered_complex(rng, 3, 2, 2)
        J = cxs.random_filtered_complex(rng, 3, 2, 2)
        rep = d1_leibniz_check(I, J)
        assert rep, rep.failures
        total += rep.checked
    assert total > 50


def test_textio_roundtrip():
    rng = random.Random(2)
    for _ in range(5):
        fc = cxs.random_filtered_complex(rng, 4, 3, 2)
        text = textio.dumps(fc)
        back = textio.loads(text)
        assert back.s_min == fc.s_min and back.s_max == fc.s_max
        for m in fc.cx.degrees():
            assert back.cx.rank(m) == fc.cx.rank(m)
            assert im.is_zero_matrix(back.cx.diff(m) - fc.cx.diff(m))
            for s in range(fc.s_min, fc.s_max + 1):
                assert im.lattice_eq(back.level(s, m), fc.level(s, m))


def test_malformed_filtration_rejected():
    cx = cxs.Complex({0: 1, 1: 1}, {0: im.intmat([[1]])})
    # level not d-stable: F^1 contains degree-0 generator but not its image
    with pytest.raises(cxs.MalformedFiltration):
        cxs.FilteredComplex(cx, 0, 1, {(1, 0): im.eye(1), (1, 1): im.zeros(1, 0)})
