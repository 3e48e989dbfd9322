"""Euler-class rings: the target coefficients of the Borel-complete pages.

C_2: Z[u^{+-2}, a]/(2a) with |u^2| = (0, 2 - 2*sigma), |a| = (1, -sigma).
C_3: Z_3[u_lambda^{+-1}, a_spoke]/(3 a_spoke) with |u_lambda| = (0, 2 - lambda)
and |a_spoke| = (1, -spoke); a_spoke^2 occupies the a_lambda slot.
"""
from __future__ import annotations

from ..core.chart import ChartAlgebra, Generator
from ..core.coeffs import Coefficients
from ..core.degrees import Degree

from .cyclic import (CyclicModule, cyclic_cohomology, sign_module,
                     spoke_module, trivial_module, tensor)


def euler_class_ring(group: str, coeffs: Coefficients | None = None) -> ChartAlgebra:
    if group == "C2":
        c = coeffs or Coefficients(2)
        gens = [
            Generator("u2", Degree(0, 2, -2), invertible=True),
            Generator("a", Degree(1, 0, -1), torsion=1),
        ]
        return ChartAlgebra("C2", c, gens)
    if group == "C3":
        c = coeffs or Coefficients(3)
        gens = [
            Generator("ul", Degree(0, 2, -1, 0), invertible=True),
            Generator("asp", Degree(1, 0, -1, 1), torsion=1),
        ]
        return ChartAlgebra("C3", c, gens)
    raise ValueError(f"unsupported group {group}")


def euler_slot_via_cohomology(group: str, d: Degree):
    """Group-cohomology value of the Euler ring slot at degree d.

    For C_2 the coefficient at RO-degree i + j*sigma in cohomological degree s
    is Z twisted by (-1)^(t+j) with 2t = i + s + j; for C_3 it is Z twisted by
    the spoke module when the normalized spoke flag is 1.
    """
    if group == "C2":
        s, i, j = d.filtration, d.stem, d.twist
        # Ext^{0,2t} of the sphere is Z only at t = 0, so i + s + j must vanish
        if i + s + j != 0:
            return cyclic_cohomology(trivial_module(2, 0), [0])[0]
        M = sign_module(0, j)
        return cyclic_cohomology(M, [s])[0]
    if group == "C3":
        s, i, j, eps = d.filtration, d.stem, d.twist, d.spoke
        total = i + 2 * j + eps + s
        if total != 0:
            return cyclic_cohomology(trivial_module(3, 0), [0])[0]
        M = spoke_module() if eps else trivial_module(3)
        return cyclic_cohomology(M, [s])[0]
    raise ValueError(group)
