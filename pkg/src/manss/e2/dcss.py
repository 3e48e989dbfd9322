"""The two double complex spectral sequences identifying the E_2 page.

Both collapse in the supported cases; their E_2-terms are computed
independently of the closed forms and serve as cross-oracles:

* second form: H^a(C_2; Ext^{b, a+b+n}) with the conjugation sign action;
* first form (trivial action): Ext^{b, 2t}(N (x) H^{a+j}(P_j)), realized
  synthetically.
"""
from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..core import intmat as im
from ..core.abgroups import AbGroup
from ..grpcoh.cyclic import presented_cyclic_cohomology
from ..grpcoh.stunted import stunted_cohomology
from .ext_chart import ExtChart
from .uct import UCTData


def dcss_ii_slot(A: ExtChart, a: int, b: int, stem: int, twist: int) -> AbGroup:
    """H^a(C_2; Ext^{b,2T}) with 2T = a + b + stem + twist and sign (-1)^(T+j)."""
    if a < 0 or b < 0:
        return AbGroup()
    two_T = a + b + stem + twist
    if two_T % 2 != 0:
        return AbGroup()
    g = A.group(b, two_T)
    if g.is_trivial():
        return AbGroup()
    c = A.coeffs
    eps = 1 if (two_T // 2 + twist) % 2 == 0 else -1
    r = g.rank
    T = im.zeros(r, r)
    rel_cols = []
    for i, o in enumerate(g.orders):
        T[i, i] = eps
        if not c.is_free(o):
            col = im.zeros(r, 1)
            col[i, 0] = o
            rel_cols.append(col)
    R = im.hstack([im.zeros(r, 0)] + rel_cols)
    h = presented_cyclic_cohomology(2, T, R, [a])[0]
    return AbGroup(tuple(sorted(c.order_from_z(o) for o in h.orders)))


def dcss_ii_e2(A: ExtChart, f_max: int, stem_range: Tuple[int, int],
               twist_range: Tuple[int, int]) -> Dict[Tuple[int, int, int, int], AbGroup]:
    """Trigraded array, keyed by (a, b, stem, twist); zero slots omitted."""
    out = {}
    for a in range(0, f_max + 1):
        for b in range(0, f_max + 1 - a):
            for stem in range(stem_range[0], stem_range[1] + 1):
                for twist in range(twist_range[0], twist_range[1] + 1):
                    g = dcss_ii_slot(A, a, b, stem, twist)
                    if not g.is_trivial():
                        out[(a, b, stem, twist)] = g
    return out


class DcssIOracle:
    """First double complex E_2 for trivial actions, via synthetic middles."""

    def __init__(self, A: ExtChart, f_max: int):
        self.A = A
        self.f_max = f_max
        self._uct: Dict[int, UCTData] = {}
        self._stunted: Dict[int, Dict[int, AbGroup]] = {}

    def _coeff(self, j: int, m: int) -> Optional[int]:
        """Cyclic order of H^m(P_j): 0 for Z, 2 for Z/2, None for zero."""
        if j not in self._stunted:
            self._stunted[j] = stunted_cohomology(
                j, range(j - 1, j + 3 * self.f_max + 6))
        g = self._stunted[j].get(m, AbGroup())
        if g.is_trivial():
            return None
        return g.orders[0]

    def slot(self, a: int, b: int, stem: int, twist: int) -> AbGroup:
        """{}_I E_2^{a,b} at RO-degree stem + twist*sigma: Ext-part a, cell-part b.

        Equals Ext^{a, 2t}(N (x) H^{b+j}(P_j)) with 2t = a + b + stem + twist.
        """
        j = twist
        two_t = a + b + stem + twist
        if two_t % 2 != 0 or a < 0 or b < 0:
            return AbGroup()
        h = self._coeff(j, b + j)
        if h is None:
            return AbGroup()
        if h not in self._uct:
            self._uct[h] = UCTData(self.A, h, self.f_max + 2)
        return self._uct[h].slot(a, two_t).middle


def dcss_i_e2(A: ExtChart, f_max: int, stem_range: Tuple[int, int],
              twist_range: Tuple[int, int]) -> Dict[Tuple[int, int, int, int], AbGroup]:
    """Trigraded array keyed (a, b, stem, twist) for a trivial-action source."""
    oracle = DcssIOracle(A, f_max)
    out = {}
    for a in range(0, f_max + 1):
        for b in range(0, f_max + 1 - a):
            for stem in range(stem_range[0], stem_range[1] + 1):
                for twist in range(twist_range[0], twist_range[1] + 1):
                    g = oracle.slot(a, b, stem, twist)
                    if not g.is_trivial():
                        out[(a, b, stem, twist)] = g
    return out


def dcss_trivial_group(A: ExtChart, b: int, stem: int) -> AbGroup:
    """The G/e value: concentrated at a = 0 and equal to the chart itself."""
    return A.group(b, b + stem)
