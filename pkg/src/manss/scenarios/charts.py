"""Chart rendering: (stem, filtration) grids at a fixed twist.

Dots are basis summands (filled = free at working precision, open = torsion,
radius shrinks with the torsion exponent); differentials are arrows colored
by justification.  Output is deterministic: cells and summands are emitted in
sorted order.
"""
from __future__ import annotations

import json
from typing import Dict, List, Optional, Tuple

from ..core.degrees import Degree, DegreeWindow
from ..engine.page import Page

JUST_COLORS = {
    "hurewicz-permanent": "#777777",
    "restriction-to-ANSS": "#c0392b",
    "ahss-mod-tau": "#2471a3",
    "hfpss-import": "#229954",
    "leibniz-derived": "#9b59b6",
    "user-hypothesis": "#e67e22",
    "forced-zero": "#bbbbbb",
}

CELL = 36


def page_slice(page: Page, twist: int, window: DegreeWindow,
               spoke: int = 0) -> Dict[Tuple[int, int], dict]:
    """Cells of a (stem, filtration) slice with labeled summands."""
    out = {}
    for f in range(window.f_min, window.f_max + 1):
        for stem in range(window.stem_min, window.stem_max + 1):
            weights = [0]
            if page.chart.grading == "motC2":
                from ..engine.page import chart_weights
                weights = chart_weights(page.chart, f, stem, twist)
            orders: List[int] = []
            labels: List[str] = []
            for wt in weights:
                g = page.labeled_group(Degree(f, stem, twist, spoke, wt))
                orders += list(g.orders)
                labels += list(g.labels)
            if orders:
                out[(stem, f)] = {"orders": orders, "labels": labels}
    return out


def slice_arrows(page: Page, twist: int, window: DegreeWindow,
                 spoke: int = 0) -> List[dict]:
    arrows = []
    chart = page.chart
    for entry in page.audit:
        if entry["page"] != page.r or not entry["target"]:
            continue
        src = chart.effective_degree(chart.parse_monomial(entry["source"]))
        if src.twist != twist or src.spoke != spoke:
            continue
        if not window.contains(src):
            continue
        arrows.append({
            "from": [src.stem, src.filtration],
            "to": [src.stem - 1, src.filtration + page.r],
            "justification": entry["justification"],
            "label": f"d{page.r}({entry['source']}) = {entry['target']}",
        })
    return sorted(arrows, key=lambda a: (a["from"], a["label"]))


def emit_table(page: Page, twist: int, window: DegreeWindow) -> str:
    cells = page_slice(page, twist, window)
    lines = [f"# page r={page.r}, twist {twist}"]
    for (stem, f) in sorted(cells):
        c = cells[(stem, f)]
        parts = [f"{o}:{l}" for o, l in zip(c["orders"], c["labels"])]
        lines.append(f"({stem},{f})  " + "; ".join(parts))
    return "\n".join(lines) + "\n"


def emit_json(page: Page, twist: int, window: DegreeWindow) -> str:
    cells = page_slice(page, twist, window)
    data = {
        "page": page.r,
        "twist": twist,
        "window": [window.stem_min, window.stem_max, window.f_min, window.f_max],
        "cells": [{"stem": k[0], "filtration": k[1], **v}
                  for k, v in sorted(cells.items())],
        "arrows": slice_arrows(page, twist, window),
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def emit_svg(page: Page, twist: int, window: DegreeWindow) -> str:
    cells = page_slice(page, twist, window)
    arrows = slice_arrows(page, twist, window)
    w0, w1 = window.stem_min, window.stem_max
    f0, f1 = window.f_min, window.f_max
    width = (w1 - w0 + 2) * CELL
    height = (f1 - f0 + 2) * CELL

    def xy(stem, f):
        return ((stem - w0 + 1) * CELL, height - (f - f0 + 1) * CELL)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}" font-family="monospace" font-size="9">']
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    for stem in range(w0, w1 + 1):
        x, _ = xy(stem, f0)
        out.append(f'<line x1="{x}" y1="0" x2="{x}" y2="{height}" '
                   f'stroke="#eeeeee"/>')
        out.append(f'<text x="{x - 4}" y="{height - 4}" fill="#999999">{stem}</text>')
    for f in range(f0, f1 + 1):
        _, y = xy(w0, f)
        out.append(f'<line x1="0" y1="{y}" x2="{width}" y2="{y}" '
                   f'stroke="#eeeeee"/>')
        out.append(f'<text x="2" y="{y + 3}" fill="#999999">{f}</text>')
    for (stem, f) in sorted(cells):
        cell = cells[(stem, f)]
        x, y = xy(stem, f)
        n = len(cell["orders"])
        for i, (o, label) in enumerate(zip(cell["orders"], cell["labels"])):
            dx = (i - (n - 1) / 2) * 8
            free = o == page.coeffs.modulus
            r = 4 if free else max(2, 4 - (o.bit_length() // 4))
            fill = "#222222" if free else "none"
            out.append(
                f'<circle cx="{x + dx:.1f}" cy="{y}" r="{r}" fill="{fill}" '
                f'stroke="#222222"><title>({stem},{f}) {o}: {_esc(label)}'
                f'</title></circle>')
    for a in arrows:
        x1, y1 = xy(*a["from"])
        x2, y2 = xy(*a["to"])
        color = JUST_COLORS.get(a["justification"], "#000000")
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   f'stroke="{color}" stroke-width="1.2">'
                   f'<title>{_esc(a["label"])}</title></line>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return (s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def emit_chart(page: Page, fmt: str, twist: int, window: DegreeWindow) -> str:
    if fmt == "svg":
        return emit_svg(page, twist, window)
    if fmt == "table":
        return emit_table(page, twist, window)
    if fmt == "json":
        return emit_json(page, twist, window)
    raise ValueError(f"unknown chart format {fmt!r}")
