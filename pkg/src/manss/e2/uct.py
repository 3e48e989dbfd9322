"""Universal-coefficient splittings for chart columns.

For a cyclic group H, the middle term Ext(N (x) H) is realized as the total
complex of the synthetic column with a two-term resolution of H; the end
terms are A (x) H and Tor_1(A^{s+1}, H).  Splittings are chosen
deterministically by reducing a preimage against the image lattice in a fixed
(or reversed) basis order.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup
from ..filtered.complexes import Complex, TensorComplex
from .ext_chart import ExtChart
from .synth import ColumnComplex, realize_column


def resolution_of(h: int) -> Complex:
    """Z at degree 0 for h = 0 (meaning Z), else Z@-1 --h--> Z@0."""
    if h == 0:
        return Complex({0: 1}, {})
    return Complex({-1: 1, 0: 1}, {-1: im.intmat([[h]])})


@dataclass
class UCTSlot:
    tensor: AbGroup       # A^{s,2t} (x) H
    tor: AbGroup          # Tor_1(A^{s+1,2t}, H)
    middle: AbGroup       # H^s of the realized total complex
    middle_orders: list
    middle_reps: np.ndarray


class UCTData:
    def __init__(self, A: ExtChart, h: int, s_max: int):
        self.A = A
        self.h = h
        self.s_max = s_max
        self._cols: Dict[int, ColumnComplex] = {}
        self._tots: Dict[int, TensorComplex] = {}
        self.res = resolution_of(h)

    def column(self, two_t: int) -> ColumnComplex:
        if two_t not in self._cols:
            self._cols[two_t] = realize_column(self.A, two_t, self.s_max + 2)
        return self._cols[two_t]

    def total(self, two_t: int) -> TensorComplex:
        if two_t not in self._tots:
            self._tots[two_t] = TensorComplex(self.column(two_t).cx, self.res)
        return self._tots[two_t]

    def _tensor_part(self, s: int, two_t: int) -> AbGroup:
        c = self.A.coeffs
        g = self.A.group(s, two_t)
        orders = []
        for o in g.orders:
            o_z = 0 if c.is_free(o) else o
            val = self.h if o_z == 0 else (gcd(o_z, self.h) if self.h else o_z)
            if val != 1:
                orders.append(c.order_from_z(val) if val else c.modulus)
        return AbGroup(tuple(sorted(orders)))

    def _tor_part(self, s: int, two_t: int) -> AbGroup:
        c = self.A.coeffs
        g = self.A.group(s + 1, two_t)
        orders = []
        for o in g.orders:
            if c.is_free(o) or self.h == 0:
                continue
            val = gcd(o, self.h)
            if val != 1:
                orders.append(c.order_from_z(val))
        return AbGroup(tuple(sorted(orders)))

    def slot(self, s: int, two_t: int) -> UCTSlot:
        orders, reps = self.total(two_t).homology(s)
        c = self.A.coeffs
        middle = AbGroup(tuple(sorted(c.order_from_z(o) for o in orders)))
        return UCTSlot(self._tensor_part(s, two_t), self._tor_part(s, two_t),
                       middle, orders, reps)

    # -- chain-level splitting ----------------------------------------------

    def alpha_vector(self, s: int, two_t: int, poly) -> np.ndarray:
        """Image of an A-class under alpha: x -> x (x) e_0, in total coords."""
        col = self.column(two_t)
        T = self.total(two_t)
        v = col.class_vector(s, poly)
        return T.embed(s, 0, v)

    def tor_lift(self, s: int, two_t: int, poly, mode: str = "low") -> np.ndarray:
        """A cocycle of the total complex hitting the Tor-class of poly.

        poly lives in A^{s+1, 2t} and must be h-torsion.  The lift is the
        canonical solution of d(z) = 0 with e_{-1}-component representing
        poly, reduced deterministically against the alpha-image: "low" keeps
        the HNF-canonical representative, "high" reduces in reversed row
        order.
        """
        col = self.column(two_t)
        T = self.total(two_t)
        w = col.class_vector(s + 1, poly)
        base = T.embed(s + 1, -1, w)  # degree s component with e_{-1}
        # need z = base + alpha-part with dz = 0
        D = T.diff(s)
        rhs = -(D @ base)
        # correct with x (x) e0, x in col^s: columns of the embedding of identity
        emb = T.embed(s, 0, im.eye(col.cx.rank(s))) if col.cx.rank(s) else None
        if emb is None:
            if not im.is_zero_matrix(rhs):
                raise ValueError("class is not h-torsion: no cocycle lift")
            return base
        sol = im.solve(D @ emb, rhs)
        if sol is None:
            raise ValueError("class is not h-torsion: no cocycle lift")
        z = base + emb @ sol
        # canonicalize the free part: reduce against ker(D restricted to alpha)
        K = im.kernel(D @ emb)
        if K.shape[1]:
            amb = emb @ K
            z = _reduce_against(z, amb, reverse=(mode == "high"))
        return z

    def splitting_difference(self, s: int, two_t: int, poly) -> np.ndarray:
        """tor_lift(low) - tor_lift(high): an alpha-image measuring ambiguity."""
        return self.tor_lift(s, two_t, poly, "low") - self.tor_lift(s, two_t, poly, "high")


def _reduce_against(v: np.ndarray, L: np.ndarray, reverse: bool = False) -> np.ndarray:
    """Reduce a vector modulo a lattice, deterministically.

    Brings v into a canonical coset representative by clearing entries against
    the HNF pivots, scanning rows in the given or reversed order.
    """
    n = v.shape[0]
    if reverse:
        P = im.zeros(n, n)
        for i in range(n):
            P[i, n - 1 - i] = 1
        w = P @ v
        H = im.hnf_columns(P @ L)
        w = _reduce_against(w, H, reverse=False)
        return P @ w
    H = im.hnf_columns(L)
    w = v.copy()
    for jcol in range(H.shape[1]):
        piv = None
        for i in range(n):
            if H[i, jcol] != 0:
                piv = i
                break
        if piv is None:
            continue
        q = w[piv, 0] // H[piv, jcol]
        if q:
            w = w - q * H[:, jcol].reshape(-1, 1)
    return w


def uct_split(A: ExtChart, h: int, s: int, two_t: int,
              s_max: Optional[int] = None) -> UCTSlot:
    """End terms and realized middle of the coefficient sequence at one slot."""
    data = UCTData(A, h, s_max if s_max is not None else s + 3)
    return data.slot(s, two_t)
