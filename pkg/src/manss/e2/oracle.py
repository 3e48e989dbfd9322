"""Brute-force total-complex oracle for the closed-form E_2 descriptions.

For a fixed twist j, the slot at (filtration f, stem i) has internal degree
2t = i + f + j and equals H^f of (synthetic column of A at 2t) (x) (cellular
cochains of the stunted complex P_j, shifted to start in degree 0).
"""
from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..core import intmat as im
from ..core.abgroups import AbGroup
from ..core.coeffs import Coefficients
from ..filtered.complexes import Complex, TensorComplex
from ..grpcoh.stunted import StuntedComplex
from .ext_chart import ExtChart
from .synth import ColumnComplex, realize_column


def shifted_cell_complex(j: int, b_top: int) -> Complex:
    """Cellular cochains of P_j reindexed to degrees b = (cell - j) >= 0."""
    st = StuntedComplex(j, j + b_top)
    ranks = {b: 1 for b in range(0, b_top + 1)}
    diffs = {}
    for b in range(0, b_top):
        diffs[b] = st.diff(j + b)
    return Complex(ranks, diffs)


class BruteTotal:
    """Caches the per-internal-degree total complexes for one twist j."""

    def __init__(self, A: ExtChart, j: int, f_max: int):
        self.A = A
        self.j = j
        self.f_max = f_max
        self._cols: Dict[int, ColumnComplex] = {}
        self._tots: Dict[int, TensorComplex] = {}
        self.cells = shifted_cell_complex(j, f_max + 2)

    def column(self, two_t: int) -> ColumnComplex:
        if two_t not in self._cols:
            self._cols[two_t] = realize_column(self.A, two_t, self.f_max + 2)
        return self._cols[two_t]

    def total(self, two_t: int) -> TensorComplex:
        if two_t not in self._tots:
            self._tots[two_t] = TensorComplex(self.column(two_t).cx, self.cells)
        return self._tots[two_t]

    def slot(self, f: int, stem: int) -> AbGroup:
        two_t = stem + f + self.j
        if two_t % 2 != 0:
            return AbGroup()
        if f < 0 or f > self.f_max:
            return AbGroup()
        orders, _ = self.total(two_t).homology(f)
        c = self.A.coeffs
        return AbGroup(tuple(sorted(c.order_from_z(o) for o in orders)))


def brute_total_cohomology(A: ExtChart, j: int, f_range: Tuple[int, int],
                           stem_range: Tuple[int, int]) -> Dict[Tuple[int, int], AbGroup]:
    """Bigraded array {(f, stem): group} for twist j; zero slots omitted."""
    bt = BruteTotal(A, j, f_range[1])
    out = {}
    for f in range(max(f_range[0], 0), f_range[1] + 1):
        for stem in range(stem_range[0], stem_range[1] + 1):
            g = bt.slot(f, stem)
            if not g.is_trivial():
                out[(f, stem)] = g
    return out
