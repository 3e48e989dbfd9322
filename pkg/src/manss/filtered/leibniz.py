"""The d_1 product rule on a Day convolution, checked on pure tensors."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

from ..core import intmat as im
from .complexes import FilteredComplex, TensorComplex
from .convolution import day_convolution, graded_piece
from .pages import ss_pages


@dataclass
class LeibnizReport:
    checked: int
    failures: List[str]

    def __bool__(self):
        return not self.failures


def d1_leibniz_check(I: FilteredComplex, J: FilteredComplex) -> LeibnizReport:
    """Evaluate d1(x (x) y) = d1(x) (x) y + (-1)^{|x|} x (x) d1(y) on E_1 basis tensors.

    |x| is the cohomological degree of x.  Both sides are compared as classes
    in E_1 of the convolution.
    """
    conv = day_convolution(I, J)
    T: TensorComplex = conv.cx  # type: ignore[assignment]
    pages = ss_pages(conv)
    PI = ss_pages(I)
    PJ = ss_pages(J)
    checked = 0
    failures: List[str] = []
    for i in range(I.s_min, I.s_max + 1):
        for m1 in I.cx.degrees():
            sx = PI.slot(1, i, -m1)
            if not sx.orders:
                continue
            for j in range(J.s_min, J.s_max + 1):
                for m2 in J.cx.degrees():
                    sy = PJ.slot(1, j, -m2)
                    if not sy.orders:
                        continue
                    for a in range(sx.reps.shape[1]):
                        for b in range(sy.reps.shape[1]):
                            xi = sx.reps[:, a].reshape(-1, 1)
                            ups = sy.reps[:, b].reshape(-1, 1)
                            ok = _check_tensor(I, J, T, pages, i, j, m1, m2, xi, ups)
                            checked += 1
                            if not ok:
                                failures.append(
                                    f"failure at i={i}, j={j}, m1={m1}, m2={m2}")
    return LeibnizReport(checked, failures)


def _check_tensor(I, J, T, pages, i, j, m1, m2, xi, ups) -> bool:
    """Compare the page-level d_1 of [xi (x) ups] with the product formula."""
    n = i + j
    m = m1 + m2
    v = T.embed(m1, m2, im.kron(xi, ups))
    src = pages.slot(1, n, -m)
    c = src.express(v[:, 0])
    if c is None:
        return False
    tgt = pages.slot(1, n + 1, -(m + 1))
    rhs = im.zeros(T.rank(m + 1), 1) if T.rank(m + 1) else None
    if rhs is not None:
        if I.cx.rank(m1 + 1):
            rhs = rhs + T.embed(m1 + 1, m2, im.kron(I.cx.diff(m1) @ xi, ups))
        if J.cx.rank(m2 + 1):
            sign = -1 if m1 % 2 else 1
            rhs = rhs + sign * T.embed(m1, m2 + 1, im.kron(xi, J.cx.diff(m2) @ ups))
    if not tgt.orders:
        return True
    Dmat = pages.differential(1, n, -m)
    lhs_coords = Dmat @ c if Dmat is not None else im.zeros(len(tgt.orders), 1)
    rhs_coords = tgt.express(rhs[:, 0]) if rhs is not None else None
    if rhs_coords is None:
        return False
    diff = lhs_coords - rhs_coords
    for t, o in enumerate(tgt.orders):
        x = diff[t, 0]
        if (o == 0 and x != 0) or (o and x % o):
            return False
    return True
