"""Multiplicative spectral-sequence pages over a chart algebra.

A Page holds, per degree, the surviving subquotient of the E_2 monomial
lattice: a generator lattice G and a relation lattice L inside the slot's
ambient Z^n (n = number of basis monomials there, torsion relations included
in L).  Differentials are registered as facts d_r(source) = target and
extended to all monomials by the product rule; page turning is exact integer
homology computed lazily per degree, with the previous page as parent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup
from ..core.chart import ChartAlgebra, Monomial, Polynomial, ONE
from ..core.degrees import Degree, DegreeWindow, differential_shift

JUSTIFICATIONS = ("hurewicz-permanent", "restriction-to-ANSS", "ahss-mod-tau",
                  "hfpss-import", "leibniz-derived", "user-hypothesis",
                  "forced-zero")


class EngineError(RuntimeError):
    pass


class Underdetermined(EngineError):
    def __init__(self, monomial, chart):
        super().__init__(
            f"no differential fact covers {chart.format_monomial(monomial)}")
        self.monomial = monomial


@dataclass
class Rejection(Exception):
    reason: str  # wrong-degree | target-dead | source-dead
    detail: str = ""

    def __str__(self):
        return f"{self.reason}: {self.detail}"


class Contradiction(EngineError):
    def __init__(self, where: str, chain_a: str, chain_b: str):
        super().__init__(
            f"contradiction at {where}: [{chain_a}] vs [{chain_b}]")
        self.where = where
        self.chain_a = chain_a
        self.chain_b = chain_b


@dataclass
class Differential:
    page: int
    source: Monomial
    target: Polynomial
    justification: str
    chain: Tuple[str, ...] = ()


@dataclass
class SlotState:
    monomials: List[Monomial]
    gens: np.ndarray   # lattice G
    rels: np.ndarray   # lattice L; the slot group is (G+L)/L
    _cache: Optional[Tuple[list, np.ndarray]] = None

    def presentation(self) -> Tuple[list, np.ndarray]:
        if self._cache is None:
            self._cache = im.subquotient(self.gens, self.rels)
        return self._cache

    def group(self, coeffs) -> AbGroup:
        orders, _ = self.presentation()
        return AbGroup(tuple(sorted(coeffs.order_from_z(o) for o in orders)))

    def is_trivial(self) -> bool:
        orders, _ = self.presentation()
        return not orders

    def express(self, v: np.ndarray) -> Optional[np.ndarray]:
        orders, reps = self.presentation()
        if not orders:
            return im.zeros(0, 1) if im.lattice_member(
                self.rels, v.reshape(-1, 1)[:, 0]) else None
        A = im.hstack([reps, self.rels])
        sol = im.solve(A, v.reshape(-1, 1))
        if sol is None:
            return None
        return sol[:len(orders), :]

    def class_is_zero(self, v: np.ndarray) -> Optional[bool]:
        c = self.express(v)
        if c is None:
            return None
        orders, _ = self.presentation()
        for i, o in enumerate(orders):
            if (o == 0 and c[i, 0] != 0) or (o and c[i, 0] % o):
                return False
        return True


class Page:
    def __init__(self, chart: ChartAlgebra, r: int, window: DegreeWindow,
                 parent: Optional["Page"] = None):
        self.chart = chart
        self.r = r
        self.window = window
        self.parent = parent
        self.coeffs = chart.coeffs
        if parent is None:
            self._amb: Dict[Tuple, List[Monomial]] = {}
            self._amb_boxes: List[DegreeWindow] = []
        else:
            self._amb = parent._amb
            self._amb_boxes = parent._amb_boxes
        self._states: Dict[Tuple, SlotState] = {}
        self.facts: List[Differential] = []
        self._fact_map: Dict[Monomial, Differential] = {}
        self._dvalue_memo: Dict[Monomial, Polynomial] = {}
        self._alive_memo: Dict[Monomial, bool] = {}
        self.audit: List[dict] = list(parent.audit) if parent else []

    # -- ambient bookkeeping ---------------------------------------------------

    def populate(self, window: DegreeWindow, pad_f: int = 0, pad_stem: int = 2):
        """Enumerate all window monomials in one pass (shared across pages)."""
        box = DegreeWindow(0, window.f_max + pad_f,
                           window.stem_min - pad_stem, window.stem_max + pad_stem,
                           window.twist_min, window.twist_max)
        buckets = self.chart.monomials_in_window(box)
        self._amb.update(buckets)
        self._amb_boxes.append(box)

    def _in_boxes(self, d: Degree) -> bool:
        for b in self._amb_boxes:
            if (0 <= d.filtration <= b.f_max and
                    b.stem_min <= d.stem <= b.stem_max and
                    b.twist_min <= d.twist <= b.twist_max):
                return True
        return False

    def ambient(self, d: Degree) -> List[Monomial]:
        key = d.key()
        got = self._amb.get(key)
        if got is not None:
            return got
        if d.filtration < 0 or self._in_boxes(d):
            return []
        self._amb[key] = self.chart.monomials_of_degree(d)
        return self._amb[key]

    def state(self, d: Degree) -> SlotState:
        key = d.key()
        st = self._states.get(key)
        if st is not None:
            return st
        if self.parent is None:
            monos = self.ambient(d)
            n = len(monos)
            rel_cols = []
            for i, m in enumerate(monos):
                k = self.chart.order_exponent(m)
                if k < self.coeffs.precision:
                    col = im.zeros(n, 1)
                    col[i, 0] = self.coeffs.prime ** k
                    rel_cols.append(col)
            rels = im.hstack([im.zeros(n, 0)] + rel_cols)
            st = SlotState(monos, im.eye(n), rels)
        else:
            st = self.parent._turned_state(d)
        self._states[key] = st
        return st

    def group(self, d: Degree) -> AbGroup:
        return self.state(d).group(self.coeffs)

    def labeled_group(self, d: Degree) -> AbGroup:
        st = self.state(d)
        orders, reps = st.presentation()
        labels = []
        for jcol in range(reps.shape[1]):
            terms = []
            for i, m in enumerate(st.monomials):
                c = reps[i, jcol]
                if c:
                    sm = self.chart.format_monomial(m)
                    terms.append(sm if c == 1 else f"{c}*{sm}")
            labels.append(" + ".join(terms) if terms else "0")
        pairs = sorted(zip((self.coeffs.order_from_z(o) for o in orders), labels))
        return AbGroup(tuple(o for o, _ in pairs), tuple(l for _, l in pairs))

    def vector_of(self, p: Polynomial, d: Degree) -> np.ndarray:
        st = self.state(d)
        v = im.zeros(len(st.monomials), 1)
        index = {m: i for i, m in enumerate(st.monomials)}
        for m, c in p.items():
            if m not in index:
                raise EngineError(
                    f"{self.chart.format_monomial(m)} is not a basis monomial at {d}")
            v[index[m], 0] += c
        return v

    def poly_is_zero_class(self, p: Polynomial) -> bool:
        p = self.resolve_opaque(self.chart.reduce(p))
        if not p:
            return True
        buckets: Dict[Tuple, Polynomial] = {}
        for m, c in p.items():
            buckets.setdefault(self.chart.effective_degree(m).key(), {})[m] = c
        for key, poly in buckets.items():
            d = Degree(*key)
            z = self.state(d).class_is_zero(self.vector_of(poly, d))
            if z is None:
                raise EngineError(f"class at {d} not expressible on page {self.r}")
            if not z:
                return False
        return True

    def resolve_opaque(self, p: Polynomial) -> Polynomial:
        """Drop sector-clash products whose slot vanishes on this page."""
        out: Polynomial = {}
        for m, c in p.items():
            if self.chart.has_sector_clash(m):
                d = self.chart.effective_degree(m)
                if self.state(d).is_trivial():
                    continue
                raise EngineError(
                    f"unknown product {self.chart.format_monomial(m)} in a "
                    f"nonzero slot {d}")
            out[m] = c
        return out

    # -- differential facts ------------------------------------------------------

    def register(self, source: Monomial, target: Polynomial, justification: str,
                 chain: Tuple[str, ...] = ()) -> Differential:
        source = self.chart.sort_monomial(source)
        if not self.chart.is_normal(source):
            red = self.chart.reduce_monomial(source)
            if len(red) == 1 and next(iter(red.values())) == 1:
                source = next(iter(red))
            else:
                raise Rejection(
                    "source-dead",
                    f"{self.chart.format_monomial(source)} is not a basis "
                    f"element; it reduces to {self.chart.format_poly(red)}")
        target = self.chart.reduce(target)
        sd = self.chart.effective_degree(source)
        shift = differential_shift(self.r)
        want = Degree(sd.filtration + shift.filtration, sd.stem + shift.stem,
                      sd.twist, sd.spoke, sd.weight)
        for m in target:
            got = self.chart.effective_degree(m)
            if got != want:
                raise Rejection("wrong-degree",
                                f"target term {self.chart.format_monomial(m)} "
                                f"sits at {got}, expected {want}")
        src_vec = self.vector_of({source: 1}, sd)
        z = self.state(sd).class_is_zero(src_vec)
        if z is None or z:
            raise Rejection("source-dead",
                            f"{self.chart.format_monomial(source)} is zero on "
                            f"page {self.r}")
        if target:
            tv = self.vector_of(target, want)
            z = self.state(want).class_is_zero(tv)
            if z is None:
                raise Rejection("target-dead",
                                "target not expressible on this page")
            if z:
                target = {}
        fact = Differential(self.r, source, target, justification, chain)
        if source in self._fact_map:
            old = self._fact_map[source]
            if self.chart.reduce(old.target) != target:
                raise Contradiction(
                    self.chart.format_monomial(source),
                    f"{old.justification}: {self.chart.format_poly(old.target)}",
                    f"{justification}: {self.chart.format_poly(target)}")
            return old
        self.facts.append(fact)
        self._fact_map[source] = fact
        self._dvalue_memo.clear()
        self.audit.append({
            "page": self.r,
            "source": self.chart.format_monomial(source),
            "target": self.chart.format_poly(target),
            "justification": justification,
            "chain": list(chain),
        })
        return fact

    # -- the product rule ----------------------------------------------------------

    def d_value(self, m: Monomial) -> Polynomial:
        if m == ONE:
            return {}
        if m in self._dvalue_memo:
            return self._dvalue_memo[m]
        val = self.chart.reduce(self._derive(m))
        self._dvalue_memo[m] = val
        return val

    def _derive(self, m: Monomial) -> Polynomial:
        if m == ONE:
            return {}
        if m in self._fact_map:
            return dict(self._fact_map[m].target)
        # a zero class has zero differential, and 0 is the sound representative;
        # this also guarantees that factorizations below never pass through a
        # dead factor (a product with a dead factor is itself dead).  Reducible
        # monomials (rule left sides) are derived formally instead.
        if self.chart.is_normal(m) and not self._alive(m):
            return {}
        for fact in self.facts:
            f = fact.source
            if f == m or (len(f) == 1 and f[0][1] == 1):
                continue
            # peeling must strictly shrink the non-invertible part, else the
            # recursion cannot terminate
            if not any(e > 0 and not self.chart.gens[n].invertible for n, e in f):
                continue
            if self._fact_divides(f, m):
                q = self.chart._divide_monomial(m, f)
                # the product rule applies to page classes only: the cofactor
                # must still be a defined class on this page
                if not self._defined(q):
                    continue
                return self._combine(f, dict(fact.target), q, self._derive(q))
        name, e = m[0]
        f = self.chart.sort_monomial(((name, e),))
        q = self.chart._divide_monomial(m, f)
        df = self._power_fact(name, e)
        if q == ONE:
            return df
        return self._combine(f, df, q, self._derive(q))

    def _fact_divides(self, f: Monomial, m: Monomial) -> bool:
        """Divisibility where invertible generators are unconstrained."""
        have = dict(m)
        for name, e in f:
            if self.chart.gens[name].invertible:
                continue
            if have.get(name, 0) < e:
                return False
        return True

    def _combine(self, f: Monomial, df: Polynomial, q: Monomial,
                 dq: Polynomial) -> Polynomial:
        chart = self.chart
        left = chart.multiply(df, {q: 1})
        sign = -1 if chart.stem_parity(f) else 1
        right = chart.scalar(sign, chart.multiply({f: 1}, dq))
        return chart.add(left, right)

    def _power_fact(self, name: str, e: int) -> Polynomial:
        chart = self.chart
        ge = chart.sort_monomial(((name, e),))
        if ge in self._fact_map:
            return dict(self._fact_map[ge].target)
        g1 = chart.sort_monomial(((name, 1),))
        if g1 in self._fact_map and e != 1:
            if chart.gens[name].degree.stem % 2 and chart.coeffs.prime != 2:
                raise EngineError(f"power rule needs even stem for {name}")
            dg = self._fact_map[g1].target
            return chart.multiply({chart.sort_monomial(((name, e - 1),)): e}, dg)
        # a fact on a pure power g^{e0} determines d on the subring it
        # generates: d(g^{k e0}) = k g^{(k-1) e0} d(g^{e0})
        for fact in self.facts:
            f = fact.source
            if len(f) == 1 and f[0][0] == name and f[0][1] not in (0, 1):
                e0 = f[0][1]
                if e % e0 == 0 and (e // e0 > 0 or chart.gens[name].invertible):
                    k = e // e0
                    lead = {chart.sort_monomial(((name, e - e0),)): k}
                    return chart.multiply(lead, dict(fact.target))
        # forced zero: the whole power maps into a slot that vanishes here
        d = chart.effective_degree(ge)
        tgt = Degree(d.filtration + self.r, d.stem - 1, d.twist, d.spoke, d.weight)
        if self.state(tgt).is_trivial():
            if self._alive(ge):
                self.register(ge, {}, "forced-zero",
                              (f"target slot {tgt} vanishes on page {self.r}",))
            return {}
        if not self._alive(ge):
            # zero class: any representative choice must be consistent, which
            # the relation check in turn() verifies; use zero
            return {}
        raise Underdetermined(ge, chart)

    def _alive(self, m: Monomial) -> bool:
        if self.parent is None:
            return True  # every basis monomial is a nonzero E_2 class
        if m in self._alive_memo:
            return self._alive_memo[m]
        d = self.chart.effective_degree(m)
        st = self.state(d)
        out = st.class_is_zero(self.vector_of({m: 1}, d)) is False
        self._alive_memo[m] = out
        return out

    def _defined(self, m: Monomial) -> bool:
        """m represents a class of this page (a surviving cycle or zero)."""
        if m == ONE or self.parent is None:
            return True
        d = self.chart.effective_degree(m)
        st = self.state(d)
        return st.class_is_zero(self.vector_of({m: 1}, d)) is not None

    # -- closure and consistency ------------------------------------------------

    def window_degrees(self, window: Optional[DegreeWindow] = None):
        window = window or self.window
        chart = self.chart
        if chart.grading == "C3":
            yield from window.degrees("C3", spokes=(0, 1))
        elif chart.grading == "motC2":
            if "tau" in chart.gens:
                raise EngineError(
                    "windowed scans need a tau-free chart; use mod_tau first")
            for f in range(max(window.f_min, 0), window.f_max + 1):
                for stem in range(window.stem_min, window.stem_max + 1):
                    for twist in range(window.twist_min, window.twist_max + 1):
                        for w in chart_weights(chart, f, stem, twist):
                            yield Degree(f, stem, twist, 0, w)
        else:
            yield from window.degrees(chart.grading)

    def leibniz_close(self, window: Optional[DegreeWindow] = None,
                      strict: bool = True) -> List[Differential]:
        """Derive d_r on every basis monomial in the window.

        Returns the nonzero derived differentials (registered facts excluded);
        raises Contradiction when a rewrite rule or torsion bound is violated.
        With strict=False, monomials whose differential is not yet determined
        by the registered facts are skipped (interactive sessions).
        """
        derived = []
        for d in self.window_degrees(window):
            for m in self.ambient(d):
                try:
                    val = self.resolve_opaque(self.d_value(m))
                except Underdetermined:
                    if strict:
                        raise
                    continue
                self._check_torsion(m, val)
                if val and m not in self._fact_map:
                    derived.append(Differential(
                        self.r, m, val, "leibniz-derived",
                        (self.chart.format_monomial(m),)))
        if strict:
            self._check_rules(window or self.window)
        return derived

    def _check_torsion(self, m: Monomial, val: Polynomial):
        k = self.chart.order_exponent(m)
        if k >= self.coeffs.precision:
            return
        scaled = self.chart.scalar(self.coeffs.prime ** k, val)
        if scaled and not self.poly_is_zero_class(scaled):
            raise Contradiction(
                self.chart.format_monomial(m), f"order p^{k} source",
                f"target {self.chart.format_poly(val)} has larger order")

    def _check_rules(self, window: DegreeWindow):
        for lhs, rhs in self.chart.rewrite_rules:
            d = self.chart.effective_degree(lhs)
            if not window.contains(d):
                continue
            dl = self._combine_rule_side({lhs: 1})
            dr = self._combine_rule_side(rhs)
            diff = self.chart.add(dl, self.chart.scalar(-1, dr))
            diff = self.resolve_opaque(self.chart.reduce(diff))
            if diff and not self.poly_is_zero_class(diff):
                raise Contradiction(
                    self.chart.format_monomial(lhs),
                    f"d(lhs) = {self.chart.format_poly(dl)}",
                    f"d(rhs) = {self.chart.format_poly(dr)}")

    def _combine_rule_side(self, p: Polynomial) -> Polynomial:
        # _derive applies the product rule formally, so it is usable on the
        # (reducible) left side of a rewrite rule as well
        out: Polynomial = {}
        for m, c in p.items():
            dm = self._derive(m)
            for mm, cc in dm.items():
                out[mm] = out.get(mm, 0) + c * cc
        return self.chart.reduce(out)

    def d_value_of_poly(self, p: Polynomial) -> Polynomial:
        out: Polynomial = {}
        for m, c in p.items():
            for mm, cc in self.d_value(m).items():
                out[mm] = out.get(mm, 0) + c * cc
        return self.chart.reduce(out)

    # -- matrices and turning -------------------------------------------------------

    def d_matrix(self, d: Degree):
        """Ambient-coordinates matrix of d_r out of degree d, with its target."""
        shift = differential_shift(self.r)
        tgt = Degree(d.filtration + shift.filtration, d.stem + shift.stem,
                     d.twist, d.spoke, d.weight)
        src_m = self.ambient(d)
        tgt_m = self.ambient(tgt)
        index = {m: i for i, m in enumerate(tgt_m)}
        M = im.zeros(len(tgt_m), len(src_m))
        for jcol, m in enumerate(src_m):
            for mm, c in self.resolve_opaque(self.d_value(m)).items():
                M[index[mm], jcol] += c
        return M, tgt

    def _turned_state(self, d: Degree) -> SlotState:
        st = self.state(d)
        if not st.monomials:
            return st
        D_out, tgt = self.d_matrix(d)
        changed = False
        new_gens = st.gens
        if D_out.shape[0] and not im.is_zero_matrix(D_out):
            tgt_st = self.state(tgt)
            self._check_class_welldefined(st, D_out, tgt_st, d)
            pre = im.preimage_lattice(D_out, tgt_st.rels)
            new_gens = im.lattice_intersection(st.gens, pre)
            changed = True
        src_deg = Degree(d.filtration - self.r, d.stem + 1, d.twist,
                         d.spoke, d.weight)
        new_rels = st.rels
        if self.ambient(src_deg):
            D_in, _ = self.d_matrix(src_deg)
            src_st = self.state(src_deg)
            if D_in.shape[0] and src_st.gens.shape[1] \
                    and not im.is_zero_matrix(D_in @ src_st.gens):
                new_rels = im.lattice_sum(st.rels, D_in @ src_st.gens)
                changed = True
        if not changed:
            return st
        return SlotState(st.monomials, im.hnf_columns(new_gens),
                         im.hnf_columns(new_rels))

    def _check_class_welldefined(self, st, D_out, tgt_st, d):
        # zero classes inside the surviving lattice must map to zero classes
        if st.rels.shape[1] == 0 or st.gens.shape[1] == 0:
            return
        zero_part = im.lattice_intersection(st.gens, st.rels)
        if zero_part.shape[1] == 0:
            return
        img = D_out @ zero_part
        for jcol in range(img.shape[1]):
            if tgt_st.class_is_zero(img[:, jcol]) is not True:
                raise Contradiction(
                    str(d), "zero class in the surviving lattice",
                    "its differential image is not a zero class")

    def turn(self) -> "Page":
        """Pass to homology; the trusted window shrinks by one arrow length."""
        return Page(self.chart, self.r + 1, self.window.shrink(self.r, 1),
                    parent=self)

    def advance_trivially(self) -> "Page":
        """Next page reusing this page's states verbatim.

        Only sound after every d_r on the computed slots has been certified
        zero (the collapse scan does exactly that before calling this).
        """
        nxt = Page(self.chart, self.r + 1, self.window, parent=self)
        nxt._states = self._states
        nxt._alive_memo = dict(self._alive_memo)
        return nxt


def chart_weights(chart: ChartAlgebra, f: int, stem: int, twist: int) -> List[int]:
    """Feasible motivic weights at (f, stem, twist) for a tau-free chart."""
    monos = chart.monomials_of_degree(Degree(f, stem, twist, 0, 0), any_weight=True)
    return sorted({chart.degree_of(m).weight for m in monos})
