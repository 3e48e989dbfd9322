"""Closed-form E_2 presentations over the Euler-class ring.

Three shapes, all with underlying array
(A (x) Z[u^{+-2},a]/(pa)) + (A[2] (x) F_2[u^{+-2},a]):

* trivial action:  [x] at (s, 2t-s),      [uy] at (s, 2t-s+1-sigma);
* projective form: xb at (s, t rho - s),  uyb at (s, t rho - s + 1 - sigma);
* motivic:         trivial action tensored with tau, weights w([x]) = t,
                   w(u^2) = 1, w(a) = 0, |tau| = (-2, 0, -1).

Generator naming: [x] keeps the source name, [uy] prepends "u", barred
generators append "b".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.chart import ChartAlgebra, Generator, Monomial, Polynomial
from ..core.degrees import Degree
from .ext_chart import ExtChart


@dataclass
class E2Presentation:
    chart: ChartAlgebra
    case: str
    source: Optional[ExtChart] = None
    gen_sources: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def basis(self, d: Degree):
        return self.chart.bidegree_basis(d)


def _source_st(A: ExtChart, name: str) -> Tuple[int, int]:
    g = A.chart.gens[name]
    s = g.degree.filtration
    two_t = s + g.degree.stem
    if two_t % 2 != 0:
        raise ValueError(f"{name} has odd internal degree")
    return s, two_t


def _build(A: ExtChart, case: str,
           relations: Sequence[Tuple[str, str]] = ()) -> E2Presentation:
    motivic = case == "motivic"
    grading = "motC2" if motivic else "C2"
    gens: List[Generator] = []
    sources: Dict[str, Tuple[str, ...]] = {}
    if motivic:
        gens.append(Generator("tau", Degree(-2, 0, 0, 0, -1)))
        sources["tau"] = ("deformation",)
    gens.append(Generator("u2", Degree(0, 2, -2, 0, 1 if motivic else 0),
                          invertible=True))
    gens.append(Generator("a", Degree(1, 0, -1), torsion=1))
    sources["u2"] = sources["a"] = ("euler",)
    for name, g in A.chart.gens.items():
        s, two_t = _source_st(A, name)
        t = two_t // 2
        if case == "mur-projective":
            d = Degree(s, t - s, t)
            gname = name + "b"
        else:
            d = Degree(s, two_t - s, 0, 0, t if motivic else 0)
            gname = name
        gens.append(Generator(gname, d, torsion=g.torsion))
        sources[gname] = ("x", name)
    for name in A.a2_generators:
        s, two_t = _source_st(A, name)
        t = two_t // 2
        if case == "mur-projective":
            d = Degree(s, t - s + 1, t - 1)
            gname = "u" + name + "b"
        else:
            d = Degree(s, two_t - s + 1, -1, 0, t if motivic else 0)
            gname = "u" + name
        has_rule = any(lhs.split()[0].startswith(gname) for lhs, _ in relations)
        gens.append(Generator(gname, d, torsion=1, single_use=not has_rule))
        sources[gname] = ("ux", name)
    chart = ChartAlgebra(grading, A.coeffs, gens)
    rules = []
    for lhs_s, rhs_s in relations:
        lhs = chart.parse_monomial(lhs_s)
        rhs = chart.parse_poly(rhs_s)
        if motivic:
            rhs = _tau_lift(chart, lhs, rhs)
        rules.append((lhs, rhs))
    # inherited rewrite rules of A transfer under x -> [x]
    for lhs, rhs in A.chart.rewrite_rules:
        rules.append((_transfer_mono(A, chart, case, lhs),
                      {_transfer_mono(A, chart, case, m): c for m, c in rhs.items()}))
    chart = ChartAlgebra(grading, A.coeffs, gens, rewrite_rules=rules)
    return E2Presentation(chart, case, A, sources)


def _transfer_mono(A: ExtChart, chart: ChartAlgebra, case: str, m: Monomial) -> Monomial:
    items = []
    for name, e in m:
        gname = name + "b" if case == "mur-projective" else name
        items.append((gname, e))
    return chart.sort_monomial(items)


def _tau_lift(chart: ChartAlgebra, lhs: Monomial, rhs: Polynomial) -> Polynomial:
    """Multiply each term by the tau power making weights match the left side."""
    w0 = chart.degree_of(lhs).weight
    out: Polynomial = {}
    for m, c in rhs.items():
        dw = chart.degree_of(m).weight - w0
        if dw < 0:
            raise ValueError("rule right side has smaller weight than left side")
        mm = chart.sort_monomial(m + (("tau", dw),)) if dw else m
        out[mm] = out.get(mm, 0) + c
    return out


def e2_trivial_action(A: ExtChart,
                      relations: Sequence[Tuple[str, str]] = ()) -> E2Presentation:
    if not A.torsion_free_source:
        raise ValueError("trivial-action form requires a torsion-free source")
    return _build(A, "trivial-action", relations)


def e2_mur_projective(A: ExtChart,
                      relations: Sequence[Tuple[str, str]] = ()) -> E2Presentation:
    A.check_even()
    return _build(A, "mur-projective", relations)


def e2_motivic(A: ExtChart,
               relations: Sequence[Tuple[str, str]] = ()) -> E2Presentation:
    if not A.even:
        raise ValueError("motivic form requires an even chart")
    return _build(A, "motivic", relations)


# ---------------------------------------------------------------------------
# translation between the trivial-action and projective presentations
# ---------------------------------------------------------------------------

def translation_images(triv: E2Presentation, bar: E2Presentation) -> Dict[str, Polynomial]:
    """Images of trivial-action generators in the barred chart.

    [x] = u^{2k} (u^eps x)bar with t = 2k + eps, and [uy] = u^{t+1} yb for t
    odd, u^t (uy)bar for t even.
    """
    A = triv.source
    images: Dict[str, Polynomial] = {}
    bc = bar.chart
    images["u2"] = {bc.monomial(u2=1): 1}
    images["a"] = {bc.monomial(a=1): 1}
    if "tau" in triv.chart.gens:
        images["tau"] = {(): 1}
    for gname, src in triv.gen_sources.items():
        if src[0] == "x":
            name = src[1]
            s, two_t = _source_st(A, name)
            t = two_t // 2
            k, eps = divmod(t, 2)
            if eps == 0:
                images[gname] = {bc.sort_monomial((("u2", k), (name + "b", 1))): 1}
            else:
                if name not in A.a2_generators:
                    raise ValueError(f"{name} has odd t but no u-lift generator")
                images[gname] = {bc.sort_monomial(
                    (("u2", k), ("u" + name + "b", 1))): 1}
        elif src[0] == "ux":
            name = src[1]
            s, two_t = _source_st(A, name)
            t = two_t // 2
            if t % 2 == 1:
                images[gname] = {bc.sort_monomial(
                    (("u2", (t + 1) // 2), (name + "b", 1))): 1}
            else:
                images[gname] = {bc.sort_monomial(
                    (("u2", t // 2), ("u" + name + "b", 1))): 1}
    return images


def translate(triv: E2Presentation, bar: E2Presentation, poly: Polynomial) -> Polynomial:
    return triv.chart.substitute(poly, bar.chart, translation_images(triv, bar))


def congruent_mod_a(chart: ChartAlgebra, p: Polynomial, q: Polynomial) -> bool:
    """p = q modulo the ideal (a)."""
    diff = chart.add(p, chart.scalar(-1, q))
    for m in diff:
        if dict(m).get("a", 0) < 1:
            return False
    return True
