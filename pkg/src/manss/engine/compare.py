"""Comparison maps out of a Borel page.

* restriction to the underlying nonequivariant page (kills the Euler class,
  trivializes u^2, sends bracket generators to their chart sources);
* mod tau and tau-inverted forms of a motivic page;
* pure index translations: motivic coordinates to the cell-filtered couple,
  and the odd-page re-indexing against the slice-style filtration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..core.chart import ChartAlgebra, Generator, Monomial, Polynomial, ONE
from ..core.degrees import Degree, DegreeWindow
from ..e2.closed_forms import E2Presentation
from ..e2.ext_chart import ExtChart
from .page import Page


def restriction_images(pres: E2Presentation, A: ExtChart,
                       overrides: Optional[Dict[str, str]] = None) -> Dict[str, Polynomial]:
    """Algebra map to the underlying chart: a -> 0, u^2 -> 1, [x] -> x.

    The image of a u-lift generator [uy] is scenario data (for the shipped
    cases it is the source element y itself); overrides supply it by name.
    """
    images: Dict[str, Polynomial] = {}
    overrides = overrides or {}
    for gname, src in pres.gen_sources.items():
        if gname in overrides:
            images[gname] = A.chart.parse_poly(overrides[gname])
        elif gname == "a":
            images[gname] = {}
        elif gname in ("u2", "tau"):
            images[gname] = {ONE: 1}
        elif src[0] in ("x", "ux"):
            images[gname] = {A.chart.monomial(**{src[1]: 1}): 1}
        else:
            images[gname] = {ONE: 1}
    return images


def restrict_to_anss(pres: E2Presentation, poly: Polynomial,
                     overrides: Optional[Dict[str, str]] = None) -> Polynomial:
    A = pres.source
    return pres.chart.substitute(poly, A.chart, restriction_images(pres, A, overrides))


def restriction_commutes(pres: E2Presentation, page: Page, d_window,
                         anss_page: int = 3,
                         overrides: Optional[Dict[str, str]] = None) -> bool:
    """res(d_r m) = d^{underlying}(res m) for every basis monomial in range."""
    A = pres.source
    diffs = A.differentials.get(anss_page, {})
    chart = pres.chart

    def d_under(p: Polynomial) -> Polynomial:
        out: Polynomial = {}
        for m, c in p.items():
            val = _derive_simple(A.chart, diffs, m)
            for mm, cc in val.items():
                out[mm] = out.get(mm, 0) + c * cc
        return A.chart.reduce(out)

    for d in d_window:
        for m in page.ambient(d):
            lhs = restrict_to_anss(pres, page.resolve_opaque(page.d_value(m)),
                                   overrides)
            rhs = d_under(restrict_to_anss(pres, {m: 1}, overrides))
            if A.chart.reduce(lhs) != A.chart.reduce(rhs):
                return False
    return True


def _derive_simple(chart: ChartAlgebra, gen_diffs: Dict[str, Polynomial],
                   m: Monomial) -> Polynomial:
    if m == ONE:
        return {}
    name, e = m[0]
    rest = chart._divide_monomial(m, ((name, e),))
    dg = gen_diffs.get(name, {})
    head = chart.multiply({chart.sort_monomial(((name, e - 1),)): e}, dg)
    left = chart.multiply(head, {rest: 1})
    sign = -1 if (chart.gens[name].degree.stem * e) % 2 else 1
    right = chart.scalar(sign, chart.multiply(
        {chart.sort_monomial(((name, e),)): 1}, _derive_simple(chart, gen_diffs, rest)))
    return chart.add(left, right)


# ---------------------------------------------------------------------------
# mod tau and inverted tau
# ---------------------------------------------------------------------------

def _strip_tau(poly: Polynomial, target: ChartAlgebra, drop: bool) -> Polynomial:
    out: Polynomial = {}
    for m, c in poly.items():
        tau_e = dict(m).get("tau", 0)
        if tau_e and drop:
            continue
        mm = target.sort_monomial(tuple((n, e) for n, e in m if n != "tau"))
        out[mm] = out.get(mm, 0) + c
    return target.normalize(out)


def mod_tau_chart(chart: ChartAlgebra) -> ChartAlgebra:
    """Same presentation with tau = 0: motivic grading, no tau generator."""
    gens = [g for name, g in chart.gens.items() if name != "tau"]
    tmp = ChartAlgebra("motC2", chart.coeffs, gens)
    rules = []
    for lhs, rhs in chart.rewrite_rules:
        if any(n == "tau" for n, _ in lhs):
            continue
        lhs2 = tmp.sort_monomial(lhs)
        rhs2 = _strip_tau(rhs, tmp, drop=True)
        rules.append((lhs2, rhs2))
    return ChartAlgebra("motC2", chart.coeffs, gens, rewrite_rules=rules)


def invert_tau_chart(chart: ChartAlgebra) -> ChartAlgebra:
    """Collapse tau-towers: forget the weight; recovers the plain C2 chart."""
    gens = []
    for name, g in chart.gens.items():
        if name == "tau":
            continue
        d = g.degree
        gens.append(Generator(name, Degree(d.filtration, d.stem, d.twist,
                                           d.spoke, 0),
                              g.torsion, g.invertible, g.single_use))
    tmp = ChartAlgebra("C2", chart.coeffs, gens)
    rules = []
    for lhs, rhs in chart.rewrite_rules:
        if any(n == "tau" for n, _ in lhs):
            continue
        rules.append((tmp.sort_monomial(tuple((n, e) for n, e in lhs)),
                      _strip_tau(rhs, tmp, drop=False)))
    return ChartAlgebra("C2", chart.coeffs, gens, rewrite_rules=rules)


def mod_tau_facts(page: Page, target: ChartAlgebra):
    """Seed facts of a motivic page with tau-divisible targets dropped."""
    out = []
    for fact in page.facts:
        if any(n == "tau" for n, _ in fact.source):
            continue
        src = target.sort_monomial(fact.source)
        tgt = _strip_tau(fact.target, target, drop=True)
        out.append((src, tgt, fact.justification, fact.chain))
    return out


# ---------------------------------------------------------------------------
# index translations
# ---------------------------------------------------------------------------

def motivic_to_couple_coords(d: Degree) -> Tuple[int, int, int]:
    """(block, ext_s, ext_t) of a motivic slot (s, stem + twist*sigma, w).

    block = (stem + twist + s)/2 - w, ext_s = 2w - stem, ext_t = 2w.
    """
    s, i, j, w = d.filtration, d.stem, d.twist, d.weight
    if (i + j + s) % 2 != 0:
        raise ValueError(f"odd-parity slot {d} has no couple coordinates")
    return ((i + j + s) // 2 - w, 2 * w - i, 2 * w)


def couple_to_motivic_coords(block: int, ext_s: int, ext_t: int,
                             twist: int) -> Degree:
    w = ext_t // 2
    i = 2 * w - ext_s
    s = 2 * (block + w) - i - twist
    return Degree(s, i, twist, 0, w)


def odd_page_reindex(r: int, s: int, n: int) -> Tuple[int, Tuple[int, int]]:
    """Page and position of a (2r+1)-page slot in the halved slice indexing.

    (s, n) on page 2r+1 corresponds to ((n+s)/2, n) on page r.  Only defined
    when n + s is even; valid inside the window where both spectral sequences
    are trusted, no claim is made outside it.
    """
    if (n + s) % 2 != 0:
        raise ValueError("slot has odd total parity")
    return r, ((n + s) // 2, n)
