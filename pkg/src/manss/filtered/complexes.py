"""Bounded cochain complexes of free abelian groups and finite filtrations.

A filtration is stored as a chain of sublattices of a fixed ambient complex:
F^s C^m is the column span of an integer matrix, F^{s_min} is everything and
levels above s_max are zero.  Structure maps are honest inclusions, so they
are injective by construction; validation checks containment and d-stability.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core import intmat as im


class MalformedFiltration(ValueError):
    pass


class Complex:
    """Cochain complex of free abelian groups, d: C^m -> C^{m+1}."""

    def __init__(self, ranks: Dict[int, int], diffs: Dict[int, np.ndarray]):
        self.ranks = {m: r for m, r in ranks.items() if r > 0}
        self.diffs = {}
        for m, D in diffs.items():
            if D.shape != (self.rank(m + 1), self.rank(m)):
                raise ValueError(f"differential at {m} has wrong shape")
            self.diffs[m] = D
        for m in list(self.ranks):
            D1 = self.diff(m)
            D2 = self.diff(m + 1)
            if D1.shape[0] and not im.is_zero_matrix(D2 @ D1):
                raise ValueError(f"d^2 != 0 at degree {m}")

    def rank(self, m: int) -> int:
        return self.ranks.get(m, 0)

    def degrees(self) -> List[int]:
        return sorted(self.ranks)

    @property
    def m_min(self) -> int:
        return min(self.ranks) if self.ranks else 0

    @property
    def m_max(self) -> int:
        return max(self.ranks) if self.ranks else 0

    def diff(self, m: int) -> np.ndarray:
        if m in self.diffs:
            return self.diffs[m]
        return im.zeros(self.rank(m + 1), self.rank(m))

    def homology(self, m: int) -> Tuple[list, np.ndarray]:
        """(orders, representative columns) of H^m."""
        if self.rank(m) == 0:
            return [], im.zeros(0, 0)
        Z = im.kernel(self.diff(m)) if self.rank(m + 1) else im.eye(self.rank(m))
        B = self.diff(m - 1) if self.rank(m - 1) else im.zeros(self.rank(m), 0)
        return im.subquotient(Z, B)


def tensor_complex(c1: Complex, c2: Complex) -> "TensorComplex":
    return TensorComplex(c1, c2)


class TensorComplex(Complex):
    """Tensor product with the Koszul differential d(x*y) = dx*y + (-1)^m x*dy."""

    def __init__(self, c1: Complex, c2: Complex):
        self.c1 = c1
        self.c2 = c2
        ranks: Dict[int, int] = {}
        self._blocks: Dict[int, List[Tuple[int, int, int]]] = {}  # m -> [(m1, m2, offset)]
        for m in range(c1.m_min + c2.m_min, c1.m_max + c2.m_max + 1):
            off = 0
            blocks = []
            for m1 in c1.degrees():
                m2 = m - m1
                r = c1.rank(m1) * c2.rank(m2)
                if r:
                    blocks.append((m1, m2, off))
                    off += r
            if off:
                ranks[m] = off
                self._blocks[m] = blocks
        diffs: Dict[int, np.ndarray] = {}
        for m in ranks:
            rows = ranks.get(m + 1, 0)
            D = im.zeros(rows, ranks[m])
            if rows:
                for m1, m2, off in self._blocks[m]:
                    r1, r2 = c1.rank(m1), c2.rank(m2)
                    # d1 (x) id into block (m1+1, m2)
                    tgt = self._block_offset(m + 1, m1 + 1, m2)
                    if tgt is not None and c1.rank(m1 + 1):
                        blk = im.kron(c1.diff(m1), im.eye(r2))
                        D[tgt:tgt + blk.shape[0], off:off + blk.shape[1]] += blk
                    # (-1)^{m1} id (x) d2 into block (m1, m2+1)
                    tgt = self._block_offset(m + 1, m1, m2 + 1)
                    if tgt is not None and c2.rank(m2 + 1):
                        sign = -1 if m1 % 2 else 1
                        blk = im.kron(im.eye(r1), c2.diff(m2))
                        D[tgt:tgt + blk.shape[0], off:off + blk.shape[1]] += sign * blk
            diffs[m] = D
        super().__init__(ranks, diffs)

    def _block_offset(self, m: int, m1: int, m2: int) -> Optional[int]:
        for b1, b2, off in self._blocks.get(m, []):
            if b1 == m1 and b2 == m2:
                return off
        return None

    def embed(self, m1: int, m2: int, cols: np.ndarray) -> np.ndarray:
        """Embed kron-coordinates of C1^{m1} (x) C2^{m2} into the total degree."""
        m = m1 + m2
        off = self._block_offset(m, m1, m2)
        if off is None:
            raise ValueError("empty block")
        out = im.zeros(self.rank(m), cols.shape[1])
        out[off:off + cols.shape[0], :] = cols
        return out


class FilteredComplex:
    def __init__(self, cx: Complex, s_min: int, s_max: int,
                 bases: Dict[Tuple[int, int], np.ndarray], validate: bool = True):
        self.cx = cx
        self.s_min = s_min
        self.s_max = s_max
        self.bases: Dict[Tuple[int, int], np.ndarray] = {}
        for (s, m), B in bases.items():
            if not (s_min < s <= s_max):
                raise ValueError(f"basis given outside filtration range: {s}")
            self.bases[(s, m)] = im.hnf_columns(B)
        if validate:
            self.validate()

    def level(self, s: int, m: int) -> np.ndarray:
        r = self.cx.rank(m)
        if s <= self.s_min:
            return im.eye(r)
        if s > self.s_max:
            return im.zeros(r, 0)
        return self.bases.get((s, m), im.zeros(r, 0))

    def validate(self):
        for s in range(self.s_min, self.s_max + 1):
            for m in self.cx.degrees():
                B0 = self.level(s, m)
                B1 = self.level(s + 1, m)
                if not im.lattice_contains(B0, B1):
                    raise MalformedFiltration(
                        f"F^{s + 1} not contained in F^{s} in degree {m}")
                D = self.cx.diff(m)
                if D.shape[0] and B0.shape[1]:
                    if not im.lattice_contains(self.level(s, m + 1), D @ B0):
                        raise MalformedFiltration(
                            f"F^{s} not d-stable in degree {m}")

    def shift_levels(self, ds: int) -> "FilteredComplex":
        return FilteredComplex(
            self.cx, self.s_min + ds, self.s_max + ds,
            {(s + ds, m): B for (s, m), B in self.bases.items()}, validate=False)


def unit_filtration() -> FilteredComplex:
    """Z in cohomological degree 0, filtration jumping to zero above level 0."""
    cx = Complex({0: 1}, {})
    return FilteredComplex(cx, 0, 0, {})


def two_step(k: int = 2) -> FilteredComplex:
    """Z in degree 0 with F^0 = Z, F^1 = kZ (a single multiplication step)."""
    cx = Complex({0: 1}, {})
    return FilteredComplex(cx, 0, 1, {(1, 0): im.intmat([[k]])})


def crossing_differential(k: int = 2) -> FilteredComplex:
    """Z --k--> Z in degrees 0, 1 placed in adjacent filtrations (d crosses one)."""
    cx = Complex({0: 1, 1: 1}, {0: im.intmat([[k]])})
    return FilteredComplex(cx, 0, 1, {(1, 1): im.intmat([[1]])})


def direct_sum_filtered(a: FilteredComplex, b: FilteredComplex) -> FilteredComplex:
    ranks = {}
    for m in set(a.cx.degrees()) | set(b.cx.degrees()):
        ranks[m] = a.cx.rank(m) + b.cx.rank(m)
    diffs = {}
    for m in ranks:
        D = im.zeros(ranks.get(m + 1, 0), ranks[m])
        Da, Db = a.cx.diff(m), b.cx.diff(m)
        D[:Da.shape[0], :Da.shape[1]] = Da
        D[Da.shape[0]:, Da.shape[1]:] = Db
        diffs[m] = D
    cx = Complex(ranks, diffs)
    s_min = min(a.s_min, b.s_min)
    s_max = max(a.s_max, b.s_max)
    bases = {}
    for s in range(s_min + 1, s_max + 1):
        for m in cx.degrees():
            La = a.level(s, m)
            Lb = b.level(s, m)
            B = im.zeros(cx.rank(m), La.shape[1] + Lb.shape[1])
            B[:a.cx.rank(m), :La.shape[1]] = La
            B[a.cx.rank(m):, La.shape[1]:] = Lb
            bases[(s, m)] = B
    return FilteredComplex(cx, s_min, s_max, bases)


# ---------------------------------------------------------------------------
# seeded random generators for the property suites
# ---------------------------------------------------------------------------

def _random_unimodular(rng: random.Random, n: int, steps: int = 6) -> np.ndarray:
    U = im.eye(n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            U[i, :] = U[i, :] + rng.randint(-2, 2) * U[j, :]
    return U


def random_complex(rng: random.Random, max_rank: int = 4, entries: int = 3,
                   m_lo: int = 0, m_hi: int = 3) -> Complex:
    """Random complex built from elementary pieces, then base-changed."""
    pieces = []  # (degree, k) with k = None for a lone Z
    total = {m: 0 for m in range(m_lo, m_hi + 1)}
    budget = rng.randint(1, max_rank * 2)
    for _ in range(budget):
        m = rng.randint(m_lo, m_hi)
        if rng.random() < 0.4 or m == m_hi:
            if total[m] < max_rank:
                pieces.append((m, None))
                total[m] += 1
        else:
            if total[m] < max_rank and total[m + 1] < max_rank:
                pieces.append((m, rng.randint(-entries, entries)))
                total[m] += 1
                total[m + 1] += 1
    if not pieces:
        pieces = [(m_lo, None)]
        total[m_lo] = 1
    ranks = {m: r for m, r in total.items() if r}
    offs = {m: 0 for m in ranks}
    diffs = {m: im.zeros(ranks.get(m + 1, 0), ranks.get(m, 0)) for m in ranks}
    slots = {m: 0 for m in ranks}
    positions = []
    for m, k in pieces:
        p = slots[m]
        slots[m] += 1
        if k is None:
            positions.append((m, p, None, None))
        else:
            q = slots[m + 1]
            slots[m + 1] += 1
            diffs[m][q, p] = k
            positions.append((m, p, q, k))
    cx = Complex(ranks, diffs)
    # conjugate by random unimodular matrices degreewise
    U = {m: _random_unimodular(rng, cx.rank(m)) for m in cx.degrees()}
    Uinv = {m: im.unimodular_inverse(U[m]) for m in cx.degrees()}
    new_diffs = {}
    for m in cx.degrees():
        if cx.rank(m + 1):
            new_diffs[m] = U[m + 1] @ cx.diff(m) @ Uinv[m]
    return Complex(dict(cx.ranks), new_diffs)


def random_filtered_complex(rng: random.Random, max_levels: int = 6,
                            max_rank: int = 4, entries: int = 3) -> FilteredComplex:
    cx = random_complex(rng, max_rank=max_rank, entries=entries)
    levels = rng.randint(1, max_levels)
    s_min = 0
    bases: Dict[Tuple[int, int], np.ndarray] = {}
    current = {m: im.eye(cx.rank(m)) for m in cx.degrees()}
    for s in range(1, levels + 1):
        nxt: Dict[int, np.ndarray] = {}
        for m in cx.degrees():  # ascending, so nxt[m-1] is ready
            B = current[m]
            cols = []
            for _ in range(rng.randint(0, B.shape[1])):
                v = im.zeros(cx.rank(m), 1)
                for j in range(B.shape[1]):
                    v[:, 0] += rng.randint(-2, 2) * B[:, j]
                cols.append(v)
            # add d-images of the new previous-degree level: keeps the new
            # level a subcomplex
            extra = []
            src = nxt.get(m - 1)
            if src is not None and src.shape[1] and cx.rank(m):
                extra.append(cx.diff(m - 1) @ src)
            mat = im.hstack([im.zeros(cx.rank(m), 0)] + cols + extra)
            nxt[m] = im.hnf_columns(mat)
        current = nxt
        for m in cx.degrees():
            bases[(s, m)] = current[m]
    return FilteredComplex(cx, s_min, levels, bases)


def random_even_filtered_complex(rng: random.Random, max_rank: int = 3) -> FilteredComplex:
    """Filtered complexes whose E_1 is concentrated where s + n is even.

    Built from pieces Z@m in filtration s with s = m (mod 2), and
    Z@m --k--> Z@(m+1) with the source filtration matching m and the target
    an odd number of levels deeper.
    """
    parts = []
    npieces = rng.randint(1, max_rank)
    for _ in range(npieces):
        m = rng.randint(0, 3)
        if rng.random() < 0.5:
            s = m % 2 + 2 * rng.randint(0, 1)
            cx = Complex({m: 1}, {})
            fc = FilteredComplex(cx, 0, s, {(t, m): im.eye(1) for t in range(1, s + 1)})
        else:
            k = rng.choice([2, 2, 4, 3])
            s = m % 2 + 2 * rng.randint(0, 1)
            jump = 1 + 2 * rng.randint(0, 1)
            cx = Complex({m: 1, m + 1: 1}, {m: im.intmat([[k]])})
            bases = {}
            for t in range(1, s + jump + 1):
                bm = im.eye(1) if t <= s else im.zeros(1, 0)
                bm1 = im.eye(1)
                bases[(t, m)] = bm
                bases[(t, m + 1)] = bm1
            fc = FilteredComplex(cx, 0, s + jump, bases)
        parts.append(fc)
    out = parts[0]
    for p in parts[1:]:
        out = direct_sum_filtered(out, p)
    return out
