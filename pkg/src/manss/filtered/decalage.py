"""Decalage of filtered complexes and the page-shift checks.

(Dec I)(p) in cohomological degree m is {x in F^{p+m} C^m : dx in F^{p+m+1}},
and the spectral sequence satisfies E_{r+1}^{s,n}(I) = E_r^{s+n,n}(Dec I).
The even variant skips odd levels and halves page numbers; it only applies
when E_1(I) is concentrated where s + n is even.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup, same_groups
from .complexes import FilteredComplex
from .pages import SSeqPages, ss_pages


def decalage(I: FilteredComplex) -> FilteredComplex:
    cx = I.cx
    s_min = I.s_min - cx.m_max
    s_max = I.s_max - cx.m_min
    bases: Dict[Tuple[int, int], np.ndarray] = {}
    for p in range(s_min + 1, s_max + 1):
        for m in cx.degrees():
            F = I.level(p + m, m)
            D = cx.diff(m)
            if D.shape[0] == 0:
                bases[(p, m)] = F
            else:
                pre = im.preimage_lattice(D, I.level(p + m + 1, m + 1))
                bases[(p, m)] = im.lattice_intersection(F, pre)
    return FilteredComplex(cx, s_min, s_max, bases)


def decalage_even(I: FilteredComplex) -> FilteredComplex:
    """Skip odd decalage levels: (Dec^ev I)(p) = (Dec I)(2p)."""
    dec = decalage(I)
    s_min = dec.s_min // 2 - 1
    s_max = dec.s_max // 2 + 1
    bases = {}
    for p in range(s_min + 1, s_max + 1):
        for m in dec.cx.degrees():
            bases[(p, m)] = dec.level(2 * p, m)
    return FilteredComplex(dec.cx, s_min, s_max, bases)


def is_even_concentrated(I: FilteredComplex) -> bool:
    """E_1 concentrated in slots with s + n even."""
    pages = ss_pages(I)
    for (f, n), g in pages.page(1).items():
        if (f + n) % 2 != 0:
            return False
    return True


@dataclass
class PageShiftReport:
    ok: bool
    mismatches: list
    compared: int

    def __bool__(self):
        return self.ok


def verify_page_shift(I: FilteredComplex, r: int,
                      pages: Optional[SSeqPages] = None,
                      dec_pages: Optional[SSeqPages] = None) -> PageShiftReport:
    """Check E_{r+1}^{s,n}(I) = E_r^{s+n,n}(Dec I) slotwise (order multisets)."""
    P = pages if pages is not None else ss_pages(I)
    DP = dec_pages if dec_pages is not None else ss_pages(decalage(I))
    left = P.page(r + 1)
    mismatches = []
    compared = 0
    keys = set(left)
    for (s2, n) in DP.page(r):
        keys.add((s2 - n, n))
    for (s, n) in sorted(keys):
        a = P.group(r + 1, s, n)
        b = DP.group(r, s + n, n)
        compared += 1
        if not same_groups(a, b):
            mismatches.append(((s, n), a.order_multiset(), b.order_multiset()))
    return PageShiftReport(not mismatches, mismatches, compared)


def verify_page_shift_even(I: FilteredComplex, r: int) -> PageShiftReport:
    """Check E^{s,n}_{2r+1}(I) = E^{(s+n)/2, n}_r(Dec^ev I) on even-concentrated input."""
    if not is_even_concentrated(I):
        raise ValueError("even page shift requires E_1 concentrated in even s+n")
    P = ss_pages(I)
    DP = ss_pages(decalage_even(I))
    mismatches = []
    compared = 0
    keys = set(P.page(2 * r + 1))
    for (p, n) in DP.page(r):
        keys.add((2 * p - n, n))
    for (s, n) in sorted(keys):
        if (s + n) % 2 != 0:
            a = P.group(2 * r + 1, s, n)
            if not a.is_trivial():
                mismatches.append(((s, n), a.order_multiset(), "odd-parity slot"))
            continue
        a = P.group(2 * r + 1, s, n)
        b = DP.group(r, (s + n) // 2, n)
        compared += 1
        if not same_groups(a, b):
            mismatches.append(((s, n), a.order_multiset(), b.order_multiset()))
    return PageShiftReport(not mismatches, mismatches, compared)
