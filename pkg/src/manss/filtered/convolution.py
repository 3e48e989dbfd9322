"""Associated graded and Day convolution of filtered complexes."""
from __future__ import annotations

from typing import Dict, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup
from .complexes import Complex, FilteredComplex, TensorComplex


def associated_graded(I: FilteredComplex) -> Dict[Tuple[int, int], AbGroup]:
    """Gr^f in each cohomological degree m, keyed by (f, m); zeros omitted."""
    out: Dict[Tuple[int, int], AbGroup] = {}
    for f in range(I.s_min, I.s_max + 1):
        for m in I.cx.degrees():
            orders, _ = im.quotient_group(I.level(f, m), I.level(f + 1, m))
            if orders:
                out[(f, m)] = AbGroup(tuple(orders))
    return out


def graded_piece(I: FilteredComplex, f: int, m: int):
    """(orders, representative columns) of Gr^f C^m."""
    return im.quotient_group(I.level(f, m), I.level(f + 1, m))


def day_convolution(I: FilteredComplex, J: FilteredComplex) -> FilteredComplex:
    """(I (x) J)_n = sum over i+j = n of F_I^i (x) F_J^j inside the tensor.

    Injectivity of the structure maps makes the defining colimit a sum of
    subobjects, computed with integer lattices.
    """
    T = TensorComplex(I.cx, J.cx)
    s_min = I.s_min + J.s_min
    s_max = I.s_max + J.s_max
    bases: Dict[Tuple[int, int], np.ndarray] = {}
    for n in range(s_min + 1, s_max + 1):
        for m in T.degrees():
            cols = [im.zeros(T.rank(m), 0)]
            for m1 in I.cx.degrees():
                m2 = m - m1
                if J.cx.rank(m2) == 0:
                    continue
                for i in range(I.s_min, I.s_max + 2):
                    j = n - i
                    Bi = I.level(i, m1)
                    Bj = J.level(j, m2)
                    if Bi.shape[1] and Bj.shape[1]:
                        cols.append(T.embed(m1, m2, im.kron(Bi, Bj)))
            bases[(n, m)] = im.hnf_columns(im.hstack(cols))
    return FilteredComplex(T, s_min, s_max, bases)
