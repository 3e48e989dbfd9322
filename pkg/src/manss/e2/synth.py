"""Synthetic torsion-free realizations of chart columns.

A column A^{*, 2t} of an Ext chart is realized by a small cochain complex of
free abelian groups: each free summand contributes a lone Z, each Z/p^k
summand a Z --p^k--> Z in adjacent degrees.  Kunneth-style computations depend
only on the cohomology of a torsion-free complex, so this stands in for the
cobar complex at desk scale.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core import intmat as im
from ..core.chart import Monomial, Polynomial
from ..core.degrees import Degree
from ..filtered.complexes import Complex
from .ext_chart import ExtChart


@dataclass
class ColumnComplex:
    """Realization of one internal degree column, with labeled rows."""
    cx: Complex
    two_t: int
    # row labels per cohomological degree s: ("gen"|"rel", monomial)
    rows: Dict[int, List[Tuple[str, Monomial]]]
    gen_row: Dict[Tuple[int, Monomial], int]
    rel_row: Dict[Tuple[int, Monomial], int]

    def class_vector(self, s: int, poly: Polynomial) -> np.ndarray:
        """Ambient vector of a chart polynomial concentrated in degree s."""
        v = im.zeros(self.cx.rank(s), 1)
        for m, c in poly.items():
            v[self.gen_row[(s, m)], 0] += c
        return v


def realize_column(A: ExtChart, two_t: int, s_max: int) -> ColumnComplex:
    # a Z/p^k class at cohomological degree s is witnessed by an auxiliary Z
    # at s-1 mapping in by p^k
    p = A.coeffs.prime
    N = A.coeffs.precision
    rows: Dict[int, List[Tuple[str, Monomial]]] = {s: [] for s in range(-1, s_max + 2)}
    gen_row: Dict[Tuple[int, Monomial], int] = {}
    rel_row: Dict[Tuple[int, Monomial], int] = {}
    for s in range(0, s_max + 1):
        for m in A.monomials(s, two_t):
            k = A.chart.order_exponent(m)
            if k < N:
                rel_row[(s - 1, m)] = len(rows[s - 1])
                rows[s - 1].append(("rel", m))
    for s in range(0, s_max + 1):
        for m in A.monomials(s, two_t):
            gen_row[(s, m)] = len(rows[s])
            rows[s].append(("gen", m))
    ranks = {s: len(r) for s, r in rows.items() if r}
    diffs = {}
    for s in sorted(ranks):
        r_out = ranks.get(s + 1, 0)
        D = im.zeros(r_out, ranks[s])
        for (ss, m), i in rel_row.items():
            if ss != s:
                continue
            j = gen_row.get((s + 1, m))
            if j is not None:
                D[j, i] = p ** A.chart.order_exponent(m)
        diffs[s] = D
    return ColumnComplex(Complex(ranks, diffs), two_t, rows, gen_row, rel_row)


def multiplication_lift(A: ExtChart, src: ColumnComplex, tgt: ColumnComplex,
                        elem: Polynomial, s_shift: int) -> Dict[int, np.ndarray]:
    """Chain maps src^s -> tgt^{s + s_shift} lifting multiplication by elem.

    Requires all torsion exponents <= 1, which makes the lift exist on the
    minimal realization.
    """
    N = A.coeffs.precision
    out: Dict[int, np.ndarray] = {}
    chart = A.chart
    for s in src.cx.degrees():
        M = im.zeros(tgt.cx.rank(s + s_shift), src.cx.rank(s))
        for kind, m in src.rows[s]:
            if kind == "gen":
                i = src.gen_row[(s, m)]
                img = chart.multiply({m: 1}, elem)
                for mm, c in img.items():
                    j = tgt.gen_row.get((s + s_shift, mm))
                    if j is None:
                        raise KeyError(f"missing target row for {mm} at {s + s_shift}")
                    M[j, i] += c
            else:
                # auxiliary row of a torsion monomial m sitting at s + 1
                k = chart.order_exponent(m)
                if k > 1:
                    raise ValueError("multiplication lifts need torsion exponent <= 1")
                i = src.rel_row[(s, m)]
                img = chart.multiply({m: 1}, elem)
                for mm, c in img.items():
                    kk = chart.order_exponent(mm)
                    if kk >= N:
                        if c:
                            raise ValueError(
                                "torsion class multiplies onto a free class; "
                                "no chain lift on the minimal realization")
                        continue
                    if kk > 1:
                        raise ValueError("multiplication lifts need torsion exponent <= 1")
                    j = tgt.rel_row.get((s + s_shift, mm))
                    if j is None:
                        raise KeyError(f"missing relation row for {mm}")
                    M[j, i] += c
        out[s] = M
    return out
