"""The spectral sequence of a complete filtered complex.

Indexing: E_1^{f,n} = H^{-n}(Gr^f) and d_r: E_r^{f,n} -> E_r^{f+r,n-1}; the
internal cohomological degree is m = -n.  Pages are computed exactly from the
cycle lattices Z_r^{f,m} = F^f C^m  intersect  d^{-1} F^{f+r} C^{m+1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup, same_groups
from .complexes import FilteredComplex


@dataclass
class Slot:
    orders: List[int]
    reps: np.ndarray        # ambient representatives, one column per summand
    cycles: np.ndarray      # Z_r lattice
    boundaries: np.ndarray  # denominator lattice B_r

    def group(self) -> AbGroup:
        return AbGroup(tuple(self.orders))

    def express(self, v: np.ndarray) -> Optional[np.ndarray]:
        """Coordinates of an ambient vector in this subquotient, or None."""
        if self.reps.shape[1] == 0:
            z = v.reshape(-1, 1)
            if im.lattice_member(self.boundaries, z[:, 0]):
                return im.zeros(0, 1)
            return None
        A = im.hstack([self.reps, self.boundaries])
        sol = im.solve(A, v.reshape(-1, 1))
        if sol is None:
            return None
        return sol[:self.reps.shape[1], :]

    def is_zero_class(self, v: np.ndarray) -> Optional[bool]:
        c = self.express(v)
        if c is None:
            return None
        for i, o in enumerate(self.orders):
            x = c[i, 0]
            if o == 0:
                if x != 0:
                    return False
            elif x % o != 0:
                return False
        return True


class SSeqPages:
    """All pages of the filtration spectral sequence, with representatives."""

    def __init__(self, I: FilteredComplex, r_max: Optional[int] = None):
        self.I = I
        span = I.s_max + 1 - I.s_min
        self.r_collapse = span + 1
        self.r_max = r_max if r_max is not None else self.r_collapse
        self._z_cache: Dict[Tuple[int, int, int], np.ndarray] = {}
        self._slots: Dict[Tuple[int, int, int], Slot] = {}

    # Z_r^{f,m}; r = 0 is the filtration level itself
    def cycles(self, r: int, f: int, m: int) -> np.ndarray:
        r = min(r, self.r_collapse)
        key = (r, f, m)
        if key in self._z_cache:
            return self._z_cache[key]
        I = self.I
        if r == 0:
            Z = I.level(f, m)
        else:
            F = I.level(f, m)
            D = I.cx.diff(m)
            if D.shape[0] == 0:
                Z = F
            else:
                target = I.level(f + r, m + 1)
                pre = im.preimage_lattice(D, target)
                Z = im.lattice_intersection(F, pre)
        self._z_cache[key] = Z
        return Z

    def slot(self, r: int, f: int, n: int) -> Slot:
        m = -n
        key = (min(r, self.r_collapse), f, m)
        if key in self._slots:
            return self._slots[key]
        r = key[0]
        I = self.I
        Z = self.cycles(r, f, m)
        B_parts = [self.cycles(r - 1, f + 1, m)]
        Dprev = I.cx.diff(m - 1)
        if Dprev.shape[0] and Dprev.shape[1]:
            Zprev = self.cycles(r - 1, f - r + 1, m - 1)
            if Zprev.shape[1]:
                B_parts.append(Dprev @ Zprev)
        B = im.lattice_sum(*B_parts) if B_parts else im.zeros(I.cx.rank(m), 0)
        orders, reps = im.subquotient(Z, B)
        slot = Slot(orders, reps, Z, B)
        self._slots[key] = slot
        return slot

    def group(self, r: int, f: int, n: int) -> AbGroup:
        return self.slot(r, f, n).group()

    def page(self, r: int) -> Dict[Tuple[int, int], AbGroup]:
        """All nonzero E_r^{f,n} in the supported range, keyed by (f, n)."""
        out = {}
        I = self.I
        for f in range(I.s_min, I.s_max + 1):
            for m in I.cx.degrees():
                g = self.group(r, f, -m)
                if not g.is_trivial():
                    out[(f, -m)] = g
        return out

    def differential(self, r: int, f: int, n: int) -> Optional[np.ndarray]:
        """Matrix of d_r from (f, n) to (f+r, n-1) in slot coordinates."""
        src = self.slot(r, f, n)
        if not src.orders:
            return None
        tgt = self.slot(r, f + r, n - 1)
        m = -n
        D = self.I.cx.diff(m)
        cols = []
        for i in range(src.reps.shape[1]):
            v = D @ src.reps[:, i].reshape(-1, 1) if D.shape[0] \
                else im.zeros(self.I.cx.rank(m + 1), 1)
            c = tgt.express(v[:, 0]) if tgt.orders else im.zeros(0, 1)
            if c is None:
                raise RuntimeError("differential image not expressible in target slot")
            cols.append(c)
        if not tgt.orders:
            return im.zeros(0, len(cols))
        return im.hstack(cols)

    def dr_squared_is_zero(self, r: int) -> bool:
        I = self.I
        for f in range(I.s_min, I.s_max + 1):
            for m in I.cx.degrees():
                n = -m
                s0 = self.slot(r, f, n)
                if not s0.orders:
                    continue
                s2 = self.slot(r, f + 2 * r, n - 2)
                if not s2.orders:
                    continue
                A = self.differential(r, f, n)
                B = self.differential(r, f + r, n - 1)
                if A is not None and B is not None and A.shape[0] and B.shape[0]:
                    C = B @ A
                    for i in range(C.shape[0]):
                        o = s2.orders[i]
                        for j in range(C.shape[1]):
                            if (o == 0 and C[i, j] != 0) or (o and C[i, j] % o):
                                return False
        return True

    # -- convergence ---------------------------------------------------------

    def limit_graded(self) -> Dict[Tuple[int, int], AbGroup]:
        """Gr of the filtration on H^*(C(min)), keyed by (f, n)."""
        I = self.I
        out = {}
        for m in I.cx.degrees():
            D = I.cx.diff(m)
            ker = im.kernel(D) if D.shape[0] else im.eye(I.cx.rank(m))
            Dp = I.cx.diff(m - 1)
            img = Dp if Dp.shape[0] == I.cx.rank(m) and Dp.shape[1] else \
                im.zeros(I.cx.rank(m), 0)
            for f in range(I.s_min, I.s_max + 1):
                num = im.lattice_sum(im.lattice_intersection(ker, I.level(f, m)), img)
                den = im.lattice_sum(im.lattice_intersection(ker, I.level(f + 1, m)), img)
                orders, _ = im.quotient_group(num, den)
                if orders:
                    out[(f, -m)] = AbGroup(tuple(orders))
        return out

    def converges(self) -> bool:
        """E_infty = Gr H(C(min)) slotwise (equal order multisets)."""
        einf = self.page(self.r_collapse)
        lim = self.limit_graded()
        keys = set(einf) | set(lim)
        for k in keys:
            a = einf.get(k, AbGroup())
            b = lim.get(k, AbGroup())
            if not same_groups(a, b):
                return False
        return True


def ss_pages(I: FilteredComplex, r_max: Optional[int] = None) -> SSeqPages:
    return SSeqPages(I, r_max)
