"""Input Ext charts: the nonequivariant algebra a scenario starts from."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..core.abgroups import AbGroup
from ..core.chart import ChartAlgebra, Generator, Monomial, Polynomial
from ..core.coeffs import Coefficients
from ..core.degrees import Degree


@dataclass
class ExtChart:
    """A^{s,2t} with its torsion structure and presentation.

    The chart grading is "triv": a generator of cobar degree (s, 2t) is stored
    at Degree(s, 2t - s).  a2_generators names the module generators of the
    2-torsion part A[2] over A (for ko: h1 generates).
    """
    chart: ChartAlgebra
    a2_generators: Tuple[str, ...] = ()
    even: bool = True
    torsion_free_source: bool = True
    mur_projective: bool = False
    # named differentials of the underlying Adams-Novikov chart, page -> {gen: poly}
    differentials: Dict[int, Dict[str, Polynomial]] = field(default_factory=dict)

    @property
    def coeffs(self) -> Coefficients:
        return self.chart.coeffs

    def internal_degree(self, m: Monomial) -> Tuple[int, int]:
        d = self.chart.degree_of(m)
        return d.filtration, d.filtration + d.stem

    def group(self, s: int, two_t: int) -> AbGroup:
        return self.chart.bidegree_basis(Degree(s, two_t - s))

    def monomials(self, s: int, two_t: int):
        return self.chart.monomials_of_degree(Degree(s, two_t - s))

    def column_range(self, two_t: int, s_max: int) -> List[Tuple[int, list]]:
        out = []
        for s in range(0, s_max + 1):
            monos = self.monomials(s, two_t)
            if monos:
                out.append((s, monos))
        return out

    def check_even(self):
        for g in self.chart.gens.values():
            if (g.degree.filtration + g.degree.stem) % 2 != 0:
                raise ValueError(f"generator {g.name} has odd internal degree")


def ko_ext_chart(coeffs: Optional[Coefficients] = None) -> ExtChart:
    """Z_2[h1, v1sq]/(2 h1) with |h1| = (1,2), |v1sq| = (0,4), Adams graded."""
    c = coeffs or Coefficients(2)
    chart = ChartAlgebra("triv", c, [
        Generator("h1", Degree(1, 1, 0), torsion=1),
        Generator("v1sq", Degree(0, 4, 0)),
    ])
    d3 = {"h1": {}, "v1sq": {chart.monomial(h1=3): 1}}
    return ExtChart(chart, a2_generators=("h1",), differentials={3: d3})
