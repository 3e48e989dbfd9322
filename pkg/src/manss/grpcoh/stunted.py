"""Cellular cochain complexes of stunted projective spectra.

P_j has one cell in each dimension >= j.  The integral coboundary pattern
(multiplication by 2 from odd to even degrees) is derived by matching the
resulting cohomology against the target ring Z[u^{+-2}, a]/(2a) rather than
hard-coded; see derive_coboundary_pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..core import intmat as im
from ..core.abgroups import AbGroup


@dataclass(frozen=True)
class StuntedComplex:
    """One Z in each degree bottom..top; d is x2 out of odd degrees."""
    bottom: int
    top: int
    odd_to_even: bool = True  # which parity carries the nonzero coboundary

    def rank(self, m: int) -> int:
        return 1 if self.bottom <= m <= self.top else 0

    def diff(self, m: int):
        """Matrix of C^m -> C^{m+1}."""
        if self.rank(m) and self.rank(m + 1):
            carries = (m % 2 != 0) if self.odd_to_even else (m % 2 == 0)
            return im.intmat([[2 if carries else 0]])
        return im.zeros(self.rank(m + 1), self.rank(m))


def stunted_cohomology(j: int, degrees) -> Dict[int, AbGroup]:
    """H^m(P_j) for m in degrees, computed from the cochain complex by SNF."""
    lo = min(degrees)
    hi = max(degrees)
    cx = StuntedComplex(j, hi + 2)
    out: Dict[int, AbGroup] = {}
    for m in degrees:
        if cx.rank(m) == 0:
            out[m] = AbGroup()
            continue
        d_out = cx.diff(m)
        d_in = cx.diff(m - 1)
        Z = im.kernel(d_out) if d_out.shape[0] else im.eye(1)
        B = d_in if cx.rank(m - 1) else im.zeros(1, 0)
        orders, _ = im.subquotient(Z, B)
        out[m] = AbGroup(tuple(orders))
    return out


def positive_cone_array(window: int) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    """Monomial array of Z[u^{+-2}, a]/(2a) under a^k u^{2l} -> (i, j) = (2l, -k-2l).

    Value at (i, j): cyclic orders (0 = Z) of the slot, i.e. Z for k = 0 and
    Z/2 for k >= 1, within |i|, |j| <= window.
    """
    out: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for l in range(-window, window + 1):
        for k in range(0, 3 * window + 1):
            i, j = 2 * l, -k - 2 * l
            if abs(i) <= window and abs(j) <= window:
                out[(i, j)] = (0,) if k == 0 else (2,)
    return out


def stunted_array(window: int) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    """{H^{-i}(P_j)} over |i|, |j| <= window as order tuples, zeros omitted."""
    out: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for j in range(-window, window + 1):
        h = stunted_cohomology(j, range(-window, window + 1))
        for m, grp in h.items():
            if not grp.is_trivial():
                out[(-m, j)] = grp.order_multiset()
    return out


def derive_coboundary_pattern(window: int = 6) -> bool:
    """Select the coboundary parity by matching the positive-cone array.

    Returns the odd_to_even flag of the unique pattern whose cohomology equals
    the monomial array of Z[u^{+-2}, a]/(2a); raises if none or both match.
    """
    target = positive_cone_array(window)
    matches = []
    for flag in (True, False):
        got: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        for j in range(-window, window + 1):
            cx = StuntedComplex(j, window + 2, odd_to_even=flag)
            for m in range(-window, window + 1):
                if cx.rank(m) == 0:
                    continue
                Z = im.kernel(cx.diff(m)) if cx.rank(m + 1) else im.eye(1)
                B = cx.diff(m - 1) if cx.rank(m - 1) else im.zeros(1, 0)
                orders, _ = im.subquotient(Z, B)
                if orders:
                    got[(-m, j)] = tuple(sorted(orders))
        if got == target:
            matches.append(flag)
    if len(matches) != 1:
        raise RuntimeError(f"coboundary pattern not determined: {matches}")
    return matches[0]
