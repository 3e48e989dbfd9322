"""Scenario-driven deduction runs: seeds, closure, turning, collapse reports.

A run starts on E_2, advances page by page re-asserting the permanent classes,
registers the seed differentials at their stated pages, Leibniz-closes there,
and turns to the declared final page.  Pages without seeds are closed by the
forced-zero machinery alone; a contradiction anywhere aborts the run loudly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.abgroups import AbGroup
from ..core.degrees import Degree, DegreeWindow
from .page import (Contradiction, Differential, EngineError, Page,
                   Rejection, Underdetermined)


@dataclass
class CollapseCandidate:
    source: Degree
    target: Degree
    r: int
    kind: str  # "unresolved" | "nonzero"
    detail: str = ""


@dataclass
class DeductionResult:
    pages: Dict[int, Page]
    final: Page
    audit: List[dict]
    collapse: List[CollapseCandidate]

    def audit_text(self) -> str:
        return json.dumps(self.audit, indent=1, sort_keys=True) + "\n"


def detect_forced_collapse(page: Page, window: Optional[DegreeWindow] = None,
                           permanents: Sequence[Tuple[str, str]] = (),
                           r_horizon: Optional[int] = None
                           ) -> List[CollapseCandidate]:
    """In-window pairs admitting a nonzero d_r for some r >= the page index.

    A pair is admitted when both bidegree slots are nonzero on page r and the
    product rule plus forced-zero detection cannot certify the differential
    to vanish.  Pages are advanced as long as every d_r is certified zero, so
    an empty list certifies collapse within the window; nothing is claimed
    outside it.
    """
    window = window or page.window
    horizon = r_horizon if r_horizon is not None else window.f_max - window.f_min
    chart = page.chart
    cur = page
    out: List[CollapseCandidate] = []
    nonzero = [d for d in page.window_degrees(window)
               if not page.state(d).is_trivial()]
    keys = {d.key() for d in nonzero}
    for r in range(page.r, horizon + 1):
        # cheap bidegree filter first: a slot with a zero target needs no work
        pairs = []
        for d in nonzero:
            tgt = Degree(d.filtration + r, d.stem - 1, d.twist, d.spoke, d.weight)
            if tgt.key() in keys:
                pairs.append((d, tgt))
        if not pairs:
            cur = cur.advance_trivially()
            continue
        for mono_s, just in permanents:
            try:
                cur.register(chart.parse_monomial(mono_s), {}, just,
                             ("declared permanent",))
            except Rejection:
                pass
        found = False
        for d, tgt in pairs:
            try:
                nonzero_monos = []
                for m in cur.ambient(d):
                    val = cur.resolve_opaque(cur.d_value(m))
                    if val and not cur.poly_is_zero_class(val):
                        nonzero_monos.append(m)
                if nonzero_monos:
                    out.append(CollapseCandidate(
                        d, tgt, r, "nonzero",
                        ", ".join(chart.format_monomial(m) for m in nonzero_monos)))
                    found = True
            except EngineError as e:
                out.append(CollapseCandidate(d, tgt, r, "unresolved", str(e)))
                found = True
        if found:
            break
        cur = cur.advance_trivially()
    return out


def run_deduction_script(pres, scenario, window: Optional[DegreeWindow] = None,
                         check_window: Optional[DegreeWindow] = None
                         ) -> DeductionResult:
    """Execute a scenario's seed script on its presentation.

    `window` bounds the trusted region (defaults to the scenario's golden
    window); `check_window` bounds the Leibniz consistency sweeps.
    """
    chart = pres.chart
    window = window or scenario.golden_window()
    check_window = check_window or _default_check_window(window)
    r_final = scenario.r_final
    page = Page(chart, 2, window)
    page.populate(window, pad_f=r_final + 2, pad_stem=2)
    pages: Dict[int, Page] = {2: page}
    seeds_by_page: Dict[int, list] = {}
    for seed in scenario.seeds():
        seeds_by_page.setdefault(seed["page"], []).append(seed)
    audit: List[dict] = []
    for r in range(2, r_final):
        _assert_permanents(page, scenario)
        for seed in seeds_by_page.get(r, []):
            src = chart.parse_monomial(seed["source"])
            tgt = chart.parse_poly(seed["target"])
            page.register(src, tgt, seed["justification"],
                          tuple(seed.get("chain", ())))
        if r in seeds_by_page:
            derived = page.leibniz_close(check_window)
            for fact in derived:
                audit.append({
                    "page": r,
                    "source": chart.format_monomial(fact.source),
                    "target": chart.format_poly(fact.target),
                    "justification": fact.justification,
                    "chain": list(fact.chain),
                })
        page = page.turn()
        pages[page.r] = page
    _assert_permanents(page, scenario)
    collapse = detect_forced_collapse(page, window,
                                      permanents=scenario.permanent_classes())
    audit = pages[2].audit + audit  # registrations first, then derivations
    return DeductionResult(pages, page, audit, collapse)


def _default_check_window(window: DegreeWindow) -> DegreeWindow:
    return DegreeWindow(0, min(window.f_max, 14),
                        max(window.stem_min, -14), min(window.stem_max, 14),
                        max(window.twist_min, -8), min(window.twist_max, 8))


def _assert_permanents(page: Page, scenario):
    """Re-register d_r = 0 for the declared permanent classes; they must be
    alive, or the scenario is inconsistent."""
    chart = page.chart
    for mono_s, just in scenario.permanent_classes():
        m = chart.parse_monomial(mono_s)
        try:
            page.register(m, {}, just, ("declared permanent",))
        except Rejection as e:
            if e.reason == "source-dead":
                raise Contradiction(mono_s, "declared permanent",
                                    f"dead on page {page.r}")
            raise


def hfpss_import(page: Page, scenario, source: str, target: str) -> Differential:
    """Register a differential imported along the fixed-point comparison.

    Only legal when the scenario declares the identification (the
    even-homotopy case); rejected otherwise.
    """
    if scenario.case != "even-homotopy-c3" and not scenario.data.get(
            "hfpss_identification", False):
        raise Rejection("wrong-degree",
                        "scenario declares no fixed-point identification")
    chart = page.chart
    return page.register(chart.parse_monomial(source), chart.parse_poly(target),
                         "hfpss-import")


def surviving_cells(page: Page, window: DegreeWindow) -> Dict[tuple, AbGroup]:
    """Labeled nonzero groups of a page over a window, keyed by degree tuple."""
    out = {}
    for d in page.window_degrees(window):
        g = page.labeled_group(d)
        if g.orders:
            out[d.key()] = g
    return out


def is_permanent_in_window(result: DeductionResult, mono_s: str) -> bool:
    """No derived differential in or out, and alive on the final page."""
    chart = result.final.chart
    m = chart.parse_monomial(mono_s)
    if not result.final._alive(m):
        return False
    target_name = chart.format_monomial(m)
    for entry in result.audit:
        tgt = entry["target"]
        if not tgt or tgt == "0":
            continue
        if entry["source"] == target_name:
            return False
        if target_name != "1" and target_name in tgt.split(" + "):
            return False
    return True
