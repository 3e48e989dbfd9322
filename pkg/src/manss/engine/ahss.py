"""The cell-filtered exact couple on Ext charts (algebraic AHSS).

One honest filtered cochain complex per abutment internal degree 2w: block k
carries the synthetic column of A at internal degree 2w + 2k tensored with a
two-cell piece M(2) (cells 2k-1, 2k; the bottom block of an even stunted
complex is a single cell).  The attaching table contributes block-raising
differential components; chain-level corrections in the (bottom cell of the
source) -> (top cell of the target) slot are solved for tier by tier until
the total differential squares to zero exactly, so every page of the couple
is computed from an actual complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup
from ..filtered.complexes import Complex, FilteredComplex, TensorComplex
from ..filtered.pages import SSeqPages
from ..e2.ext_chart import ExtChart
from ..e2.synth import ColumnComplex, multiplication_lift, realize_column


@dataclass
class BlockOps:
    even: Optional[str] = None  # Ext element acting on the 2k-cell part
    odd: Optional[str] = None   # Ext element acting on the (2k-1)-cell part


AttachTable = Callable[[int], BlockOps]


def eta_parity_table(elem: str = "h1") -> AttachTable:
    """Attachings of the real stunted cells: the even-cell part carries the
    element out of odd blocks, the odd-cell part out of even blocks.  The
    naive table with the element between every adjacent pair fails d^2 = 0."""
    def table(k: int) -> BlockOps:
        return BlockOps(even=elem if k % 2 else None,
                        odd=None if k % 2 else elem)
    return table


def constant_table(elem: str = "h1") -> AttachTable:
    def table(k: int) -> BlockOps:
        return BlockOps(even=elem, odd=elem)
    return table


def zero_table() -> AttachTable:
    return lambda k: BlockOps()


def table_from_data(data) -> AttachTable:
    """Scenario encoding: {"rule": "eta-parity"|"constant"|"zero",
    "element": name, "overrides": {str(k): [even, odd]}}."""
    rule = data.get("rule", "eta-parity")
    elem = data.get("element", "h1")
    base = {"eta-parity": eta_parity_table,
            "constant": constant_table}.get(rule, lambda e: zero_table())
    base_table = base(elem) if rule != "zero" else zero_table()
    overrides = {int(k): v for k, v in data.get("overrides", {}).items()}

    def table(k: int) -> BlockOps:
        if k in overrides:
            ev, od = overrides[k]
            return BlockOps(even=ev or None, odd=od or None)
        return base_table(k)
    return table


@dataclass
class AHSSCouple:
    A: ExtChart
    j: int
    table: AttachTable
    accelerated: bool = True

    @property
    def k_min(self) -> int:
        return -(-self.j // 2)  # ceil(j/2): block of the bottom cell

    def bottom_is_single(self) -> bool:
        return self.j % 2 == 0


class CoupleComplexError(RuntimeError):
    pass


def _m2() -> Complex:
    return Complex({-1: 1, 0: 1}, {-1: im.intmat([[2]])})


class CoupleComplex:
    """The filtered complex of one internal degree 2w of the couple."""

    def __init__(self, couple: AHSSCouple, two_w: int, k_top: int, s_cap: int):
        if couple.A.coeffs.prime != 2:
            raise CoupleComplexError("the cell couple is built at the prime 2")
        self.couple = couple
        self.two_w = two_w
        self.k_top = k_top
        self.s_cap = s_cap
        A = couple.A
        self.blocks: Dict[int, TensorComplex] = {}
        self.cols: Dict[int, ColumnComplex] = {}
        for k in range(couple.k_min, k_top + 1):
            col = realize_column(A, two_w + 2 * k, s_cap)
            self.cols[k] = col
            piece = Complex({0: 1}, {}) if (
                k == couple.k_min and couple.bottom_is_single()) else _m2()
            self.blocks[k] = TensorComplex(col.cx, piece)
        self._assemble()

    def _is_single(self, k: int) -> bool:
        return k == self.couple.k_min and self.couple.bottom_is_single()

    # embeddings of the two cell parts of a block into its total degree
    def _part_embed(self, k: int, m: int, part: int) -> Optional[np.ndarray]:
        """Columns embedding col^sigma (x) e_part into S_k^m.

        part 0: sigma = m (top/even cell); part -1: sigma = m + 1."""
        S = self.blocks[k]
        if self._is_single(k):
            if part != 0:
                return None
            m2 = 0
        else:
            m2 = part
        m1 = m - m2
        if S.rank(m) == 0 or S.c1.rank(m1) == 0:
            return None
        return S.embed(m1, m2, im.eye(S.c1.rank(m1)))

    def _sign_lift(self, lift: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
        # anti-chain twist so that d f + f d = 0 for a chain map f
        return {s: (M if s % 2 == 0 else -1 * M) for s, M in lift.items()}

    def _pair_from_components(self, k1: int, k2: int,
                              e00: Dict[int, np.ndarray],
                              e11: Dict[int, np.ndarray],
                              nu: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """Assemble S_{k1}^m -> S_{k2}^{m+1} maps from cell components.

        e00: col^sigma -> col'^{sigma+1} on the top cells;
        e11: col^sigma -> col'^{sigma+1} on the bottom cells;
        nu:  col^sigma -> col'^sigma from bottom cell to top cell.
        """
        Ssrc, Stgt = self.blocks[k1], self.blocks[k2]
        out: Dict[int, np.ndarray] = {}
        for m in Ssrc.degrees():
            if Stgt.rank(m + 1) == 0:
                continue
            M = im.zeros(Stgt.rank(m + 1), Ssrc.rank(m))
            used = False
            # top -> top: sigma = m
            L = e00.get(m)
            E_s = self._part_embed(k1, m, 0)
            E_t = self._part_embed(k2, m + 1, 0)
            if L is not None and E_s is not None and E_t is not None and L.shape[0]:
                M += E_t @ L @ E_s.transpose()
                used = True
            # bottom -> bottom: sigma = m + 1
            L = e11.get(m + 1)
            E_s = self._part_embed(k1, m, -1)
            E_t = self._part_embed(k2, m + 1, -1)
            if L is not None and E_s is not None and E_t is not None and L.shape[0]:
                M += E_t @ L @ E_s.transpose()
                used = True
            # bottom -> top: sigma = m + 1, degree-0 column map
            L = nu.get(m + 1)
            E_s = self._part_embed(k1, m, -1)
            E_t = self._part_embed(k2, m + 1, 0)
            if L is not None and E_s is not None and E_t is not None and L.shape[0]:
                M += E_t @ L @ E_s.transpose()
                used = True
            if used:
                out[m] = M
        return out

    def _anticommutator(self, k1: int, k2: int,
                        pair: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """d phi + phi d: maps S_{k1}^m -> S_{k2}^{m+2}."""
        Ssrc, Stgt = self.blocks[k1], self.blocks[k2]
        out = {}
        for m in set(Ssrc.degrees()):
            rows = Stgt.rank(m + 2)
            cols = Ssrc.rank(m)
            if not rows or not cols:
                continue
            B = im.zeros(rows, cols)
            if pair.get(m) is not None:
                B += Stgt.diff(m + 1) @ pair[m]
            if pair.get(m + 1) is not None and Ssrc.rank(m + 1):
                B += pair[m + 1] @ Ssrc.diff(m)
            if not im.is_zero_matrix(B):
                out[m] = B
        return out

    def _nu_local_defect(self, k1: int, k2: int,
                         defect: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """Extract the bottom->top part of a defect; raise if anything else."""
        local: Dict[int, np.ndarray] = {}
        for m, B in defect.items():
            E_s = self._part_embed(k1, m, -1)
            E_t = self._part_embed(k2, m + 2, 0)
            if E_s is None or E_t is None:
                if not im.is_zero_matrix(B):
                    raise CoupleComplexError(
                        "defect outside the correctable cell component")
                continue
            L = E_t.transpose() @ B @ E_s
            back = E_t @ L @ E_s.transpose()
            if not im.is_zero_matrix(B - back):
                raise CoupleComplexError(
                    "defect outside the correctable cell component")
            if not im.is_zero_matrix(L):
                local[m + 1] = L  # sigma = m + 1, maps col^sigma -> col'^{sigma+1}
        return local

    def _solve_nu(self, k1: int, k2: int,
                  local: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """Solve d nu + nu d = -local (nu degree-0 column maps)."""
        col_s, col_t = self.cols[k1].cx, self.cols[k2].cx
        var_index = {}
        for s in col_s.degrees():
            for i in range(col_t.rank(s)):
                for jc in range(col_s.rank(s)):
                    var_index[(s, i, jc)] = len(var_index)
        rows: List[List[int]] = []
        rhs: List[int] = []
        for sigma, L in local.items():
            # L: col_s^sigma -> col_t^{sigma+1}
            Dt = col_t.diff(sigma)
            Ds = col_s.diff(sigma)
            for i in range(L.shape[0]):
                for jc in range(L.shape[1]):
                    row = [0] * len(var_index)
                    for l in range(col_t.rank(sigma)):
                        key = (sigma, l, jc)
                        if key in var_index and Dt.shape[0]:
                            row[var_index[key]] += Dt[i, l]
                    for l in range(col_s.rank(sigma + 1)):
                        key = (sigma + 1, i, l)
                        if key in var_index and Ds.shape[0]:
                            row[var_index[key]] += Ds[l, jc]
                    rows.append(row)
                    rhs.append(-L[i, jc])
        if not rows or not var_index:
            if any(not im.is_zero_matrix(L) for L in local.values()):
                raise CoupleComplexError("no variables available for correction")
            return {}
        sol = im.solve(im.intmat(rows), im.intmat([[x] for x in rhs]))
        if sol is None:
            raise CoupleComplexError("no chain correction exists for the table")
        nu: Dict[int, np.ndarray] = {}
        for (s, i, jc), idx in var_index.items():
            v = sol[idx, 0]
            if v:
                if s not in nu:
                    nu[s] = im.zeros(col_t.rank(s), col_s.rank(s))
                nu[s][i, jc] = v
        return nu

    def _assemble(self):
        A = self.couple.A
        ks = sorted(self.blocks)
        # tier 1: parity attachings with their corrections
        self.u: Dict[Tuple[int, int], Dict[int, np.ndarray]] = {}
        for k in ks[:-1]:
            ops = self.couple.table(k)
            e00: Dict[int, np.ndarray] = {}
            e11: Dict[int, np.ndarray] = {}
            if ops.even:
                elem = {A.chart.monomial(**{ops.even: 1}): 1}
                e00 = self._sign_lift(multiplication_lift(
                    A, self.cols[k], self.cols[k + 1], elem, 1))
            if ops.odd and not self._is_single(k):
                elem = {A.chart.monomial(**{ops.odd: 1}): 1}
                e11 = self._sign_lift(multiplication_lift(
                    A, self.cols[k], self.cols[k + 1], elem, 1))
            pair = self._pair_from_components(k, k + 1, e00, e11, {})
            defect = self._anticommutator(k, k + 1, pair)
            if defect:
                nu = self._solve_nu(k, k + 1, self._nu_local_defect(k, k + 1, defect))
                pair = self._pair_from_components(k, k + 1, e00, e11, nu)
                defect = self._anticommutator(k, k + 1, pair)
                if defect:
                    raise CoupleComplexError("tier-1 correction failed")
            if pair:
                self.u[(k, k + 1)] = pair
        # higher tiers: u_a u_b composites live in the bottom->top component
        span = len(ks)
        for ell in range(2, span + 1):
            for k in ks:
                k2 = k + ell
                if k2 not in self.blocks:
                    continue
                R: Dict[int, np.ndarray] = {}
                for a in range(1, ell):
                    u1 = self.u.get((k, k + a))
                    u2 = self.u.get((k + a, k2))
                    if not u1 or not u2:
                        continue
                    for m, M1 in u1.items():
                        M2_ = u2.get(m + 1)
                        if M2_ is None:
                            continue
                        C = M2_ @ M1
                        if not im.is_zero_matrix(C):
                            R[m] = R.get(m, im.zeros(C.shape[0], C.shape[1])) + C
                R = {m: B for m, B in R.items() if not im.is_zero_matrix(B)}
                if not R:
                    continue
                nu = self._solve_nu(k, k2, self._nu_local_defect(k, k2, R))
                corr = self._pair_from_components(k, k2, {}, {}, nu)
                # (d u + u d) of the correction must cancel R exactly
                anti = self._anticommutator(k, k2, corr)
                for m in set(R) | set(anti):
                    tot = R.get(m)
                    other = anti.get(m)
                    if tot is None:
                        tot = other
                    elif other is not None:
                        tot = tot + other
                    if tot is not None and not im.is_zero_matrix(tot):
                        raise CoupleComplexError(f"tier-{ell} correction failed")
                if corr:
                    self.u[(k, k2)] = corr
        self._build_total(ks)

    def _build_total(self, ks):
        self.offsets: Dict[Tuple[int, int], int] = {}
        degrees = set()
        for S in self.blocks.values():
            degrees.update(S.degrees())
        ranks: Dict[int, int] = {}
        for m in sorted(degrees):
            at = 0
            for k in ks:
                r = self.blocks[k].rank(m)
                if r:
                    self.offsets[(k, m)] = at
                    at += r
            if at:
                ranks[m] = at
        diffs: Dict[int, np.ndarray] = {}
        for m in ranks:
            D = im.zeros(ranks.get(m + 1, 0), ranks[m])
            for k in ks:
                S = self.blocks[k]
                if S.rank(m) and S.rank(m + 1):
                    r0 = self.offsets[(k, m + 1)]
                    c0 = self.offsets[(k, m)]
                    blk = S.diff(m)
                    D[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] += blk
            for (k1, k2), pair in self.u.items():
                M = pair.get(m)
                if M is None:
                    continue
                if (k1, m) in self.offsets and (k2, m + 1) in self.offsets:
                    r0 = self.offsets[(k2, m + 1)]
                    c0 = self.offsets[(k1, m)]
                    D[r0:r0 + M.shape[0], c0:c0 + M.shape[1]] += M
            diffs[m] = D
        self.cx = Complex(dict(ranks), diffs)  # d^2 = 0 verified here
        bases = {}
        k_min = self.couple.k_min
        for K in range(k_min + 1, self.k_top + 1):
            for m in self.cx.degrees():
                cols = []
                n = self.cx.rank(m)
                for k in range(K, self.k_top + 1):
                    off = self.offsets.get((k, m))
                    if off is None:
                        continue
                    r = self.blocks[k].rank(m)
                    E = im.zeros(n, r)
                    for i in range(r):
                        E[off + i, i] = 1
                    cols.append(E)
                bases[(K - k_min, m)] = im.hstack([im.zeros(n, 0)] + cols)
        self.filtered = FilteredComplex(self.cx, 0, self.k_top - k_min, bases)
        self.pages = SSeqPages(self.filtered)

    def group(self, r: int, block: int, ext_s: int) -> AbGroup:
        f = block - self.couple.k_min
        if f < 0:
            return AbGroup()
        return self.pages.group(r, f, -ext_s)


class AHSSRun:
    """Lazy per-internal-degree couple complexes with a uniform query API."""

    def __init__(self, couple: AHSSCouple, k_top: int, s_cap: int = 14):
        self.couple = couple
        self.k_top = k_top
        self.s_cap = s_cap
        self._per_w: Dict[int, CoupleComplex] = {}

    def complex_at(self, two_w: int) -> CoupleComplex:
        if two_w not in self._per_w:
            self._per_w[two_w] = CoupleComplex(self.couple, two_w, self.k_top,
                                               self.s_cap)
        return self._per_w[two_w]

    def group(self, r: int, block: int, ext_s: int, two_w: int) -> AbGroup:
        if two_w % 2 != 0 or ext_s < 0:
            return AbGroup()
        if block < self.couple.k_min or block > self.k_top:
            return AbGroup()
        c = self.couple.A.coeffs
        g = self.complex_at(two_w).group(r, block, ext_s)
        return AbGroup(tuple(sorted(c.order_from_z(o) for o in g.orders)))

    def d1(self, block: int, ext_s: int, two_w: int):
        cc = self.complex_at(two_w)
        return cc.pages.differential(1, block - self.couple.k_min, -ext_s)


def ahss_run(couple: AHSSCouple, k_top: int, s_cap: int = 14) -> AHSSRun:
    return AHSSRun(couple, k_top, s_cap)
