"""E_2 of the Borel page for even-homotopy C_3 ring spectra.

The slot at filtration s and RO-degree stem + j*lambda + eps*spoke is
H^s(C_3; pi_{stem + 2j + eps + s} (x) (Zspoke)^eps), with pi given as a sum of
the three indecomposables Z, Zspoke, Z[C_3] per degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ..core.abgroups import AbGroup
from ..core.coeffs import Coefficients
from ..core.degrees import Degree, normalize_degree
from ..grpcoh.cyclic import (cyclic_cohomology, indecomposable,
                             c3_tensor_decompose, spoke_module)


@dataclass
class PiData:
    """Graded C_3-module: per degree, a list of 'Z' | 'Zspoke' | 'ZC3'."""
    summands: Dict[int, Tuple[str, ...]]

    def at(self, d: int) -> Tuple[str, ...]:
        return self.summands.get(d, ())


@lru_cache(maxsize=None)
def _spoke_twist(kind: str) -> Tuple[str, ...]:
    return tuple(c3_tensor_decompose(indecomposable(kind), spoke_module()))


@lru_cache(maxsize=None)
def _h_pattern(kind: str, s: int) -> Tuple[int, ...]:
    return cyclic_cohomology(indecomposable(kind), [s])[0].order_multiset()


def manss_slot_c3(pi: PiData, d: Degree, coeffs: Coefficients) -> AbGroup:
    d = normalize_degree(d, "C3")
    s = d.filtration
    if s < 0:
        return AbGroup()
    deg = d.stem + 2 * d.twist + d.spoke + s
    kinds: List[str] = list(pi.at(deg))
    if d.spoke:
        twisted: List[str] = []
        for k in kinds:
            twisted.extend(_spoke_twist(k))
        kinds = twisted
    orders = []
    for k in kinds:
        for o in _h_pattern(k, s):
            orders.append(coeffs.order_from_z(o))
    return AbGroup(tuple(sorted(orders)))


class EvenC3Page:
    """E_2 of the Borel page computed directly from pi-data, optionally
    cross-indexed with a shipped monomial presentation."""

    def __init__(self, pi: PiData, coeffs: Coefficients, presentation=None):
        self.pi = pi
        self.coeffs = coeffs
        self.presentation = presentation

    def slot(self, d: Degree) -> AbGroup:
        return manss_slot_c3(self.pi, d, self.coeffs)

    def labeled_slot(self, d: Degree) -> AbGroup:
        if self.presentation is None:
            return self.slot(d)
        return self.presentation.bidegree_basis(d)


def e2_even_homotopy_c3(pi: PiData, coeffs: Coefficients,
                        presentation=None) -> EvenC3Page:
    """Per-degree H^s(C_3; pi (x) twist) with an optional presentation.

    Raises UnsupportedModule upstream when pi contains anything but the three
    indecomposables (the decomposition data is lists of their names, so this
    is enforced at construction of the PiData).
    """
    for d, kinds in pi.summands.items():
        for k in kinds:
            if k not in ("Z", "Zspoke", "ZC3"):
                raise ValueError(f"unsupported summand {k!r} in degree {d}")
    return EvenC3Page(pi, coeffs, presentation)


def tmf2_pi_data(max_degree: int = 200) -> PiData:
    """Z_3[half-Delta] (x) (Z{1} + Zspoke{e1} + Z[C_3]{e1^{2i} e2^eps}, i>0).

    |e1| = |e2| = 4, |half-Delta| = 12; expanded degreewise up to max_degree.
    """
    base: Dict[int, List[str]] = {0: ["Z"], 4: ["Zspoke"]}
    d = 8
    while d <= max_degree:
        base.setdefault(d, []).append("ZC3")
        d += 4
    out: Dict[int, List[str]] = {}
    for q in range(0, max_degree // 12 + 1):
        for d0, kinds in base.items():
            d = d0 + 12 * q
            if d <= max_degree:
                out.setdefault(d, []).extend(kinds)
    return PiData({d: tuple(sorted(ks)) for d, ks in out.items()})
