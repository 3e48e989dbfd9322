"""Finitely presented graded-commutative monomial algebras with torsion.

A ChartAlgebra carries the presentation of an E_2 page: generators with
multigraded degrees and torsion exponents, monomial patterns declared zero,
and oriented rewrite rules monomial -> polynomial.  Monomials are stored as
sorted exponent tuples; polynomials are dicts monomial -> coefficient in
Z/p^N.

Products of two distinct "single use" generators have no normal form unless a
rewrite rule provides one; they are kept as-is and the page layer decides
whether the ambient slot forces them to vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .abgroups import AbGroup
from .coeffs import Coefficients
from .degrees import (Degree, DegreeWindow, add_degrees, normalize_degree,
                      zero_degree)

Monomial = Tuple[Tuple[str, int], ...]   # ((gen, exp), ...) sorted by gen index
Polynomial = Dict[Monomial, int]

ONE: Monomial = ()


class RewriteError(RuntimeError):
    pass


class UnknownProduct(RuntimeError):
    """Product of single-use generators with no rewrite rule."""
    def __init__(self, monomial: Monomial):
        super().__init__(f"no normal form for {monomial}")
        self.monomial = monomial


@dataclass(frozen=True)
class Generator:
    name: str
    degree: Degree
    torsion: int = 0          # exponent t with p^t * gen = 0; 0 means free
    invertible: bool = False
    single_use: bool = False  # module-sector generator: at most one per monomial


class ChartAlgebra:
    def __init__(self, grading: str, coeffs: Coefficients,
                 generators: Sequence[Generator],
                 zero_rules: Sequence[Monomial] = (),
                 rewrite_rules: Sequence[Tuple[Monomial, Polynomial]] = ()):
        self.grading = grading
        self.coeffs = coeffs
        self.gens: Dict[str, Generator] = {}
        self.gen_index: Dict[str, int] = {}
        for g in generators:
            if g.name in self.gens:
                raise ValueError(f"duplicate generator {g.name}")
            normalize_degree(g.degree, grading)
            self.gen_index[g.name] = len(self.gens)
            self.gens[g.name] = g
        self.zero_rules = [self._check_monomial(z) for z in zero_rules]
        self.rewrite_rules: List[Tuple[Monomial, Polynomial]] = []
        for lhs, rhs in rewrite_rules:
            lhs = self._check_monomial(lhs)
            if any(self.gens[n].invertible for n, _ in lhs):
                raise ValueError("rewrite left sides may not contain invertible generators")
            self.rewrite_rules.append((lhs, dict(rhs)))
        for lhs, rhs in self.rewrite_rules:
            dl = self.degree_of(lhs)
            for m in rhs:
                if self.effective_degree(m) != self.effective_degree(lhs):
                    raise ValueError(
                        f"rewrite rule for {lhs} is not degree-homogeneous: "
                        f"{m} has degree {self.degree_of(m)} vs {dl}")

    # -- basic monomial arithmetic ------------------------------------------

    def _check_monomial(self, m: Monomial) -> Monomial:
        for name, e in m:
            if name not in self.gens:
                raise ValueError(f"unknown generator {name}")
            if e < 0 and not self.gens[name].invertible:
                raise ValueError(f"negative power of non-invertible {name}")
        return self.sort_monomial(m)

    def sort_monomial(self, m: Iterable[Tuple[str, int]]) -> Monomial:
        acc: Dict[str, int] = {}
        for name, e in m:
            acc[name] = acc.get(name, 0) + e
        items = [(n, e) for n, e in acc.items() if e != 0]
        items.sort(key=lambda t: self.gen_index[t[0]])
        return tuple(items)

    def monomial(self, **exps: int) -> Monomial:
        return self._check_monomial(tuple(exps.items()))

    def poly(self, *terms: Tuple[int, Monomial]) -> Polynomial:
        out: Polynomial = {}
        for c, m in terms:
            m = self.sort_monomial(m)
            out[m] = out.get(m, 0) + c
        return self.normalize(out)

    def exp_vector(self, m: Monomial) -> Tuple[int, ...]:
        v = [0] * len(self.gens)
        for name, e in m:
            v[self.gen_index[name]] = e
        return tuple(v)

    def monomial_key(self, m: Monomial):
        return self.exp_vector(m)

    def degree_of(self, m: Monomial) -> Degree:
        f = s = t = sp = w = 0
        for name, e in m:
            d = self.gens[name].degree
            f += e * d.filtration
            s += e * d.stem
            t += e * d.twist
            sp += e * d.spoke
            w += e * d.weight
        return normalize_degree(Degree(f, s, t, sp, w), self.grading)

    def effective_degree(self, m: Monomial) -> Degree:
        """Slot degree: the display degree with tau moved to filtration 0.

        The motivic deformation parameter is displayed at filtration -2 but
        occupies the filtration-0 slot of the page it lives on, so each tau
        exponent adds 2 back to the filtration.
        """
        d = self.degree_of(m)
        if self.grading != "motC2":
            return d
        taup = 0
        for name, e in m:
            if name == "tau":
                taup = e
        if taup == 0:
            return d
        return Degree(d.filtration + 2 * taup, d.stem, d.twist, d.spoke, d.weight)

    def stem_parity(self, m: Monomial) -> int:
        return sum(e * self.gens[n].degree.stem for n, e in m) % 2

    def koszul_sign(self, a: Monomial, b: Monomial) -> int:
        """Sign incurred sorting the concatenation a*b into generator order."""
        if self.coeffs.prime == 2:
            return 1
        sign = 1
        for nb, eb in b:
            if eb % 2 == 0 or self.gens[nb].degree.stem % 2 == 0:
                continue
            jump = 0
            for na, ea in a:
                if self.gen_index[na] > self.gen_index[nb]:
                    if ea % 2 and self.gens[na].degree.stem % 2:
                        jump += 1
            if jump % 2:
                sign = -sign
        return sign

    # -- torsion and zero rules ---------------------------------------------

    def _divides(self, pattern: Monomial, m: Monomial) -> bool:
        have = dict(m)
        for name, e in pattern:
            if have.get(name, 0) < e:
                return False
        return True

    def order_exponent(self, m: Monomial) -> int:
        """k with p^k * m = 0; N means free at working precision, 0 means m = 0."""
        for z in self.zero_rules:
            if self._divides(z, m):
                return 0
        k = self.coeffs.precision
        for name, _ in m:
            t = self.gens[name].torsion
            if t > 0:
                k = min(k, t)
        return k

    def normalize(self, p: Polynomial) -> Polynomial:
        out: Polynomial = {}
        for m, c in p.items():
            k = self.order_exponent(m)
            if k == 0:
                continue
            c %= self.coeffs.prime ** k
            if c:
                out[m] = c
        return out

    # -- rewriting ------------------------------------------------------------

    def _find_rule(self, m: Monomial) -> Optional[int]:
        for i, (lhs, _) in enumerate(self.rewrite_rules):
            if self._divides(lhs, m):
                return i
        return None

    def is_normal(self, m: Monomial) -> bool:
        return self._find_rule(m) is None and self.order_exponent(m) > 0

    def _divide_monomial(self, m: Monomial, lhs: Monomial) -> Monomial:
        have = dict(m)
        for name, e in lhs:
            have[name] = have.get(name, 0) - e
        return self.sort_monomial(have.items())

    def reduce(self, p: Polynomial, budget: int = 20000) -> Polynomial:
        """Rewrite to normal form; raises RewriteError when the budget runs out."""
        work = dict(self.normalize(p))
        trace: List[Monomial] = []
        steps = 0
        while True:
            target = None
            for m in sorted(work, key=self.monomial_key):
                i = self._find_rule(m)
                if i is not None:
                    target = (m, i)
                    break
            if target is None:
                return self.normalize(work)
            m, i = target
            steps += 1
            if steps > budget:
                raise RewriteError(
                    "rewrite budget exceeded; last monomials: "
                    + ", ".join(self.format_monomial(t) for t in trace[-8:]))
            trace.append(m)
            lhs, rhs = self.rewrite_rules[i]
            q = self._divide_monomial(m, lhs)
            sign = self.koszul_sign(lhs, q)
            c = work.pop(m)
            for rm, rc in rhs.items():
                prod, psign = self._merge(rm, q)
                work[prod] = work.get(prod, 0) + c * rc * sign * psign
            work = dict(self.normalize(work))

    def reduce_monomial(self, m: Monomial, budget: int = 20000) -> Polynomial:
        m = self._check_monomial(m)
        return self.reduce({m: 1}, budget=budget)

    def _merge(self, a: Monomial, b: Monomial) -> Tuple[Monomial, int]:
        return self.sort_monomial(a + b), self.koszul_sign(a, b)

    def multiply(self, p: Polynomial, q: Polynomial) -> Polynomial:
        out: Polynomial = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m, sign = self._merge(m1, m2)
                out[m] = out.get(m, 0) + sign * c1 * c2
        return self.reduce(out)

    def scalar(self, c: int, p: Polynomial) -> Polynomial:
        return self.normalize({m: c * v for m, v in p.items()})

    def add(self, p: Polynomial, q: Polynomial) -> Polynomial:
        out = dict(p)
        for m, c in q.items():
            out[m] = out.get(m, 0) + c
        return self.normalize(out)

    def monomial_power(self, name: str, e: int) -> Polynomial:
        if e and e < 0 and not self.gens[name].invertible:
            raise ValueError(f"{name} is not invertible")
        return {self.sort_monomial(((name, e),)): 1} if e else {ONE: 1}

    def has_sector_clash(self, m: Monomial) -> bool:
        """More than one slot of the single-use sector is occupied."""
        count = 0
        for name, e in m:
            if self.gens[name].single_use:
                count += e
        return count > 1

    # -- bases ----------------------------------------------------------------

    def _free_gens(self) -> List[Generator]:
        free = [g for g in self.gens.values() if g.invertible or g.name == "tau"]
        for g in free:
            if g.name != "tau" and g.degree.filtration != 0:
                raise ValueError("invertible generators must sit in filtration 0")
        return free

    def _dim(self, d: Degree) -> int:
        if self.grading == "C3":
            return d.stem + 2 * d.twist + d.spoke
        return d.stem + d.twist

    def monomials_of_degree(self, d: Degree, any_weight: bool = False) -> List[Monomial]:
        """All normal-form monomials with effective degree d, in lex order.

        Enumeration: bounded generators first (positive filtration or positive
        virtual dimension, at most one single-use slot), then the exponents of
        the invertible generator and tau are solved exactly.  With any_weight
        (tau-free charts only) the weight component is unconstrained.
        """
        if any_weight and "tau" in self.gens:
            raise ValueError("any_weight enumeration requires a tau-free chart")
        d = normalize_degree(d, self.grading)
        free_names = {g.name for g in self._free_gens()}
        # positive-filtration generators first: once they are fixed the
        # dimension budget for the filtration-0 generators is exact
        bounded = [g for g in self.gens.values()
                   if g.name not in free_names and g.degree.filtration > 0]
        flat = [g for g in self.gens.values()
                if g.name not in free_names and g.degree.filtration == 0]
        for g in flat:
            if self._dim(g.degree) <= 0:
                raise ValueError(
                    f"generator {g.name} cannot be enumerated (needs positive "
                    "filtration or dimension)")
        for g in self.gens.values():
            if g.name not in free_names and g.degree.filtration < 0:
                raise ValueError(f"generator {g.name} has negative filtration")
        bounded = bounded + flat
        n_fpos = len(bounded) - len(flat)
        out: List[Monomial] = []
        choice: List[Tuple[str, int]] = []

        def rec(i: int, fleft: int, used_single: bool):
            if fleft < 0:
                return
            if i == len(bounded):
                if fleft != 0:
                    return
                self._solve_free_part(d, choice, out, any_weight)
                return
            g = bounded[i]
            fg = g.degree.filtration
            dg = self._dim(g.degree)
            if g.single_use:
                emax = 0 if used_single else 1
                if fg > 0:
                    emax = min(emax, fleft // fg)
            elif fg > 0:
                emax = fleft // fg
            else:
                emax = max(0, self._dim_budget(d, choice) // dg)
            for e in range(emax + 1):
                if fg * e > fleft:
                    break
                if e:
                    choice.append((g.name, e))
                rec(i + 1, fleft - fg * e,
                    used_single or (g.single_use and e > 0))
                if e:
                    choice.pop()

        rec(0, d.filtration, False)
        out_sorted = sorted(set(out), key=self.monomial_key)
        return [m for m in out_sorted if self.is_normal(m)
                and not self.has_sector_clash(m)]

    def _dim_budget(self, d: Degree, choice) -> int:
        used = 0
        for name, e in choice:
            used += e * self._dim(self.gens[name].degree)
        return self._dim(d) - used

    def _solve_free_part(self, d: Degree, choice, out: List[Monomial],
                         any_weight: bool = False):
        f = s = t = sp = w = 0
        for name, e in choice:
            gd = self.gens[name].degree
            f += e * gd.filtration
            s += e * gd.stem
            t += e * gd.twist
            sp += e * gd.spoke
            w += e * gd.weight
        partial = normalize_degree(Degree(f, s, t, sp, w), self.grading)
        free = self._free_gens()
        inv = [g for g in free if g.name != "tau"]
        has_tau = any(g.name == "tau" for g in free)
        rem = normalize_degree(
            Degree(d.filtration - partial.filtration, d.stem - partial.stem,
                   d.twist - partial.twist, d.spoke - partial.spoke,
                   d.weight - partial.weight), self.grading)
        l = None
        if inv:
            u = inv[0].degree
            if len(inv) > 1:
                raise ValueError("at most one invertible generator is supported")
            if u.stem == 0:
                raise ValueError("invertible generator must have nonzero stem")
            if rem.stem % u.stem == 0:
                l = rem.stem // u.stem
            else:
                return
            if rem.twist != l * u.twist or rem.spoke != l * u.spoke:
                return
        else:
            if rem.stem or rem.twist or rem.spoke:
                return
            l = 0
        wleft = rem.weight - (l * inv[0].degree.weight if inv else 0)
        if any_weight:
            m_tau = 0
        elif has_tau:
            m_tau = -wleft
            if m_tau < 0:
                return
        else:
            if wleft != 0:
                return
            m_tau = 0
        if rem.filtration != 0:
            return
        mono = list(choice)
        if inv and l:
            mono.append((inv[0].name, l))
        if m_tau:
            mono.append(("tau", m_tau))
        out.append(self.sort_monomial(mono))

    def monomials_in_window(self, window: DegreeWindow,
                            pad_f: int = 0) -> Dict[Tuple, List[Monomial]]:
        """All normal-form monomials with effective degree in the (f-padded)
        window, bucketed by degree key.  One DFS pass; much faster than
        per-degree enumeration over a box."""
        if "tau" in self.gens:
            raise ValueError("windowed enumeration requires a tau-free chart")
        f_max = window.f_max + pad_f
        free = self._free_gens()
        inv = [g for g in free if g.name != "tau"]
        if len(inv) > 1:
            raise ValueError("at most one invertible generator is supported")
        u = inv[0] if inv else None
        bounded = [g for g in self.gens.values()
                   if (not g.invertible) and g.degree.filtration > 0]
        flat = [g for g in self.gens.values()
                if (not g.invertible) and g.degree.filtration == 0]
        if self.grading == "C3":
            dim_hi = window.stem_max + 2 * window.twist_max + 1
        else:
            dim_hi = window.stem_max + window.twist_max
        out: Dict[Tuple, List[Monomial]] = {}
        gens_list = bounded + flat
        choice: List[Tuple[str, int]] = []

        def emit():
            f = s = t = sp = w = 0
            for name, e in choice:
                gd = self.gens[name].degree
                f += e * gd.filtration
                s += e * gd.stem
                t += e * gd.twist
                sp += e * gd.spoke
                w += e * gd.weight
            if u is None:
                l_range = [0]
            else:
                us = u.degree.stem
                lo = -(-(window.stem_min - s) // us) if us > 0 else 0
                hi = (window.stem_max - s) // us
                l_range = range(min(lo, hi), max(lo, hi) + 1)
            for l in l_range:
                if u is not None and l:
                    items = choice + [(u.name, l)]
                else:
                    items = list(choice)
                m = self.sort_monomial(items)
                d = self.effective_degree(m)
                if d.filtration > f_max or d.filtration < 0:
                    continue
                if not (window.stem_min <= d.stem <= window.stem_max):
                    continue
                if not (window.twist_min <= d.twist <= window.twist_max):
                    continue
                if not self.is_normal(m) or self.has_sector_clash(m):
                    continue
                out.setdefault(d.key(), []).append(m)

        def rec(i: int, fleft: int, dim_used: int, used_single: bool):
            if i == len(gens_list):
                emit()
                return
            g = gens_list[i]
            fg = g.degree.filtration
            dg = self._dim(g.degree)
            if g.single_use:
                emax = 0 if used_single else 1
                if fg > 0:
                    emax = min(emax, fleft // fg)
            elif fg > 0:
                emax = fleft // fg
            else:
                emax = max(0, (dim_hi - dim_used) // dg)
            for e in range(emax + 1):
                if fg * e > fleft:
                    break
                if e:
                    choice.append((g.name, e))
                rec(i + 1, fleft - fg * e, dim_used + e * dg,
                    used_single or (g.single_use and e > 0))
                if e:
                    choice.pop()

        rec(0, f_max, 0, False)
        for key in out:
            out[key] = sorted(set(out[key]), key=self.monomial_key)
        return out

    def bidegree_basis(self, d: Degree) -> AbGroup:
        """Normal-form monomials in effective degree d with their orders."""
        monos = self.monomials_of_degree(d)
        orders = []
        labels = []
        for m in monos:
            k = self.order_exponent(m)
            orders.append(self.coeffs.prime ** k)
            labels.append(self.format_monomial(m))
        return AbGroup(tuple(orders), tuple(labels))

    # -- confluence -------------------------------------------------------------

    def check_local_confluence(self, window: DegreeWindow) -> List[str]:
        """Reduce all critical overlaps whose degree lies in the window.

        Returns a list of human-readable failures (empty = locally confluent
        there).
        """
        failures = []
        rules = self.rewrite_rules
        for i in range(len(rules)):
            for j in range(i, len(rules)):
                lhs1, _ = rules[i]
                lhs2, _ = rules[j]
                share = {n for n, _ in lhs1} & {n for n, _ in lhs2}
                if i == j or not share:
                    continue
                lcm: Dict[str, int] = dict(lhs1)
                for n, e in lhs2:
                    lcm[n] = max(lcm.get(n, 0), e)
                m = self.sort_monomial(lcm.items())
                if self.has_sector_clash(m):
                    continue
                if not window.contains(self.effective_degree(m)):
                    continue
                a = self._reduce_first_with(m, i)
                b = self._reduce_first_with(m, j)
                if a != b:
                    failures.append(
                        f"overlap {self.format_monomial(m)}: rules {i} and {j} disagree")
        return failures

    def _reduce_first_with(self, m: Monomial, rule: int) -> Polynomial:
        lhs, rhs = self.rewrite_rules[rule]
        q = self._divide_monomial(m, lhs)
        sign = self.koszul_sign(lhs, q)
        acc: Polynomial = {}
        for rm, rc in rhs.items():
            prod, psign = self._merge(rm, q)
            acc[prod] = acc.get(prod, 0) + rc * sign * psign
        return self.reduce(acc)

    # -- formatting ---------------------------------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for name, e in m:
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def format_poly(self, p: Polynomial) -> str:
        if not p:
            return "0"
        terms = []
        for m in sorted(p, key=self.monomial_key):
            c = p[m]
            sm = self.format_monomial(m)
            terms.append(sm if c == 1 else f"{c}*{sm}")
        return " + ".join(terms)

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text in ("1", ""):
            return ONE
        items = []
        for part in text.split():
            if "^" in part:
                name, e = part.split("^")
                items.append((name, int(e)))
            else:
                items.append((part, 1))
        return self._check_monomial(tuple(items))

    def parse_poly(self, text: str) -> Polynomial:
        text = text.strip()
        if text in ("0", ""):
            return {}
        out: Polynomial = {}
        for term in text.split("+"):
            term = term.strip()
            c = 1
            if "*" in term:
                cs, term = term.split("*", 1)
                c = int(cs)
            m = self.parse_monomial(term)
            out[m] = out.get(m, 0) + c
        return self.normalize(out)

    # -- substitution ----------------------------------------------------------

    def substitute(self, p: Polynomial, target: "ChartAlgebra",
                   images: Dict[str, Polynomial]) -> Polynomial:
        """Apply the multiplicative map determined by generator images."""
        out: Polynomial = {}
        for m, c in p.items():
            acc: Polynomial = {ONE: c}
            for name, e in m:
                img = images.get(name)
                if img is None:
                    raise KeyError(f"no image for generator {name}")
                if e < 0:
                    img = _poly_inverse(target, img, -e)
                    e = 1
                for _ in range(e):
                    acc = target.multiply(acc, img)
            for mm, cc in acc.items():
                out[mm] = out.get(mm, 0) + cc
        return target.reduce(out)


def _poly_inverse(chart: ChartAlgebra, p: Polynomial, power: int) -> Polynomial:
    """Inverse of a single invertible monomial (or the unit), raised to power."""
    if len(p) != 1:
        raise ValueError("can only invert monomial images")
    (m, c), = p.items()
    if c % chart.coeffs.prime == 0:
        raise ValueError("coefficient not invertible")
    cinv = pow(c, -1, chart.coeffs.modulus)
    inv_m = chart.sort_monomial(tuple((n, -e) for n, e in m))
    for n, _ in inv_m:
        if not chart.gens[n].invertible:
            raise ValueError(f"cannot invert {n}")
    out = {ONE: 1}
    step = {inv_m: cinv}
    for _ in range(power):
        out = chart.multiply(out, step)
    return out
