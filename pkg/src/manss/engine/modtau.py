"""Mod-tau and tau-inverted pages of a motivic presentation, and the
coordinate dictionary onto the cell-filtered couple."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..core.chart import ChartAlgebra, Polynomial
from ..core.degrees import Degree, DegreeWindow
from ..e2.closed_forms import E2Presentation
from .ahss import AHSSRun
from .compare import invert_tau_chart, mod_tau_chart, motivic_to_couple_coords
from .page import Page


def tau_lift_poly(chart: ChartAlgebra, source_weight: int,
                  poly: Polynomial) -> Polynomial:
    """Multiply each term by the tau power restoring the source weight."""
    out: Polynomial = {}
    for m, c in poly.items():
        dw = chart.degree_of(m).weight - source_weight
        if dw < 0:
            raise ValueError("term weight below the source weight")
        mm = chart.sort_monomial(m + (("tau", dw),)) if dw else m
        out[mm] = out.get(mm, 0) + c
    return out


def mod_tau_seeds(mot_pres: E2Presentation, target_chart: ChartAlgebra,
                  seeds: List[dict]) -> List[dict]:
    """Seed scripts carried to the tau = 0 page: tau-divisible terms drop."""
    mot = mot_pres.chart
    out = []
    for seed in seeds:
        src = mot.parse_monomial(seed["source"])
        w = mot.degree_of(src).weight
        tgt = tau_lift_poly(mot, w, mot.parse_poly(seed["target"]))
        dropped: Polynomial = {}
        for m, c in tgt.items():
            if dict(m).get("tau", 0):
                continue
            dropped[target_chart.sort_monomial(m)] = c
        out.append({
            "page": seed["page"],
            "source": seed["source"],
            "target": target_chart.format_poly(target_chart.normalize(dropped)),
            "justification": seed["justification"],
        })
    return out


def mod_tau_page(mot_pres: E2Presentation, seeds: List[dict],
                 permanents: List[Tuple[str, str]], r_final: int,
                 window: DegreeWindow,
                 check_window: Optional[DegreeWindow] = None) -> Dict[int, Page]:
    """Run the tau = 0 page of a motivic presentation through r_final."""
    chart = mod_tau_chart(mot_pres.chart)
    mseeds = mod_tau_seeds(mot_pres, chart, seeds)
    page = Page(chart, 2, window)
    page.populate(window, pad_f=r_final + 2)
    pages = {2: page}
    for r in range(2, r_final):
        for mono_s, just in permanents:
            try:
                page.register(chart.parse_monomial(mono_s), {}, just,
                              ("declared permanent",))
            except Exception:
                pass
        for seed in mseeds:
            if seed["page"] == r:
                page.register(chart.parse_monomial(seed["source"]),
                              chart.parse_poly(seed["target"]),
                              seed["justification"])
        if any(s["page"] == r for s in mseeds) and check_window is not None:
            page.leibniz_close(check_window)
        page = page.turn()
        pages[page.r] = page
    return pages


def invert_tau_presentation(mot_pres: E2Presentation) -> ChartAlgebra:
    return invert_tau_chart(mot_pres.chart)


@dataclass
class CoupleComparison:
    ok: bool
    compared: int
    mismatches: List[tuple]


def compare_mod_tau_with_couple(pages: Dict[int, Page], run: AHSSRun,
                                twist: int, r: int, f_max: int,
                                stem_range: Tuple[int, int]) -> CoupleComparison:
    """Slotwise comparison of the tau = 0 page 2r+1 with couple page r.

    Under (s, i + j sigma, w) -> (block (i+j+s)/2 - w, 2w - i, 2w); only
    slots whose block lies in the couple's materialized range are compared.
    """
    page = pages[2 * r + 1]
    chart = page.chart
    mismatches = []
    compared = 0
    for s in range(0, f_max + 1):
        for i in range(stem_range[0], stem_range[1] + 1):
            if (i + twist + s) % 2 != 0:
                continue
            from .page import chart_weights
            for w in chart_weights(chart, s, i, twist):
                d = Degree(s, i, twist, 0, w)
                block, ext_s, two_w = motivic_to_couple_coords(d)
                if block < run.couple.k_min or block > run.k_top:
                    continue
                if ext_s < 0 or ext_s > run.s_cap - 2:
                    continue
                left = page.group(d).order_multiset()
                right = run.group(r, block, ext_s, two_w).order_multiset()
                compared += 1
                if left != right:
                    mismatches.append((d.key(), (block, ext_s, two_w), left, right))
    return CoupleComparison(not mismatches, compared, mismatches)
