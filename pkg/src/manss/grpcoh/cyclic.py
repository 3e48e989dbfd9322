"""Cohomology of C_2 and C_3 with coefficients in f.g. modules.

The standard 2-periodic resolution computes H^* with maps (gamma - 1) and the
norm 1 + gamma + ... + gamma^{n-1}; a truncated normalized bar resolution
serves as the independent oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..core import intmat as im
from ..core.abgroups import AbGroup


class InvalidAction(ValueError):
    pass


@dataclass(frozen=True)
class CyclicModule:
    """f.g. module over Z[C_n] given by the action matrix of a generator."""
    n: int
    action: tuple  # tuple of tuple of ints, rank x rank

    def __post_init__(self):
        T = self.matrix()
        if T.shape[0] != T.shape[1]:
            raise InvalidAction("action matrix must be square")
        P = im.eye(T.shape[0])
        for _ in range(self.n):
            P = T @ P
        if not im.is_zero_matrix(P - im.eye(T.shape[0])):
            raise InvalidAction(f"action matrix is not of order dividing {self.n}")

    @property
    def rank(self) -> int:
        return len(self.action)

    def matrix(self) -> np.ndarray:
        return im.intmat(self.action) if self.rank else im.zeros(0, 0)

    def norm(self) -> np.ndarray:
        T = self.matrix()
        N = im.zeros(self.rank, self.rank)
        P = im.eye(self.rank)
        for _ in range(self.n):
            N = N + P
            P = T @ P
        return N


def module(n: int, rows: Sequence[Sequence[int]]) -> CyclicModule:
    return CyclicModule(n, tuple(tuple(int(x) for x in r) for r in rows))


def trivial_module(n: int, rank: int = 1) -> CyclicModule:
    return module(n, [[1 if i == j else 0 for j in range(rank)] for i in range(rank)])


def sign_module(t: int, j: int) -> CyclicModule:
    """Rank-1 C_2-module where the generator acts by (-1)^(t+j)."""
    return module(2, [[1 if (t + j) % 2 == 0 else -1]])


def regular_module(n: int) -> CyclicModule:
    rows = [[1 if (i - j) % n == 1 else 0 for j in range(n)] for i in range(n)]
    return module(n, rows)


def spoke_module() -> CyclicModule:
    """Augmentation kernel of Z[C_3]: basis u1 = g-1, u2 = g^2-g."""
    return module(3, [[0, -1], [1, -1]])


def direct_sum(*mods: CyclicModule) -> CyclicModule:
    n = mods[0].n
    rank = sum(m.rank for m in mods)
    rows = [[0] * rank for _ in range(rank)]
    at = 0
    for m in mods:
        for i in range(m.rank):
            for j in range(m.rank):
                rows[at + i][at + j] = m.action[i][j]
        at += m.rank
    return module(n, rows)


def tensor(m1: CyclicModule, m2: CyclicModule) -> CyclicModule:
    T = im.kron(m1.matrix(), m2.matrix())
    return module(m1.n, [[int(T[i, j]) for j in range(T.shape[1])]
                         for i in range(T.shape[0])])


def cyclic_cohomology(M: CyclicModule, degrees: Sequence[int]) -> List[AbGroup]:
    """H^k(C_n; M) for each requested k >= 0, via the periodic resolution."""
    if M.rank == 0:
        return [AbGroup() for _ in degrees]
    T = M.matrix()
    d1 = T - im.eye(M.rank)     # gamma - 1
    N = M.norm()
    out = []
    for k in degrees:
        if k < 0:
            out.append(AbGroup())
        elif k == 0:
            ker = im.kernel(d1)
            orders = [0] * ker.shape[1]
            out.append(AbGroup(tuple(orders)))
        elif k % 2 == 1:
            orders, _ = im.subquotient(im.kernel(N), d1)
            out.append(AbGroup(tuple(orders)))
        else:
            orders, _ = im.subquotient(im.kernel(d1), N)
            out.append(AbGroup(tuple(orders)))
    return out


def _bar_differential(M: CyclicModule, k: int) -> np.ndarray:
    """Normalized bar differential C^k -> C^{k+1} with C^k = Maps((G-e)^k, M)."""
    n = M.n
    T = M.matrix()
    letters = list(range(1, n))  # nonidentity powers of gamma
    basis_k = list(itertools.product(letters, repeat=k))
    basis_k1 = list(itertools.product(letters, repeat=k + 1))
    rank = M.rank
    rows = len(basis_k1) * rank
    cols = len(basis_k) * rank
    D = im.zeros(rows, cols)
    powers = [im.eye(rank)]
    for _ in range(n - 1):
        powers.append(T @ powers[-1])
    index_k = {b: i for i, b in enumerate(basis_k)}

    for r, tup in enumerate(basis_k1):
        # (df)(g1,...,g_{k+1}) = g1 f(g2..) + sum (-1)^i f(..gi gi+1..) + (-1)^{k+1} f(g1..gk)
        g1 = tup[0]
        rest = tup[1:]
        j = index_k.get(rest)
        if j is not None:
            blk = powers[g1]
            for a in range(rank):
                for b in range(rank):
                    if blk[a, b]:
                        D[r * rank + a, j * rank + b] += blk[a, b]
        for i in range(k):
            merged = (tup[i] + tup[i + 1]) % n
            if merged == 0:
                continue  # normalized: tuples containing e are zero
            newt = tup[:i] + (merged,) + tup[i + 2:]
            j = index_k.get(newt)
            if j is None:
                continue
            s = -1 if (i + 1) % 2 else 1
            for a in range(rank):
                D[r * rank + a, j * rank + a] += s
        j = index_k.get(tup[:k])
        if j is not None:
            s = -1 if (k + 1) % 2 else 1
            for a in range(rank):
                D[r * rank + a, j * rank + a] += s
    return D


def bar_cohomology(M: CyclicModule, degrees: Sequence[int]) -> List[AbGroup]:
    """Truncated normalized-bar-resolution oracle for H^k(C_n; M)."""
    kmax = max(degrees)
    diffs = [_bar_differential(M, k) for k in range(kmax + 1)]
    out = []
    for k in degrees:
        d_out = diffs[k]
        if k == 0:
            orders, _ = im.quotient_group(im.kernel(d_out), im.zeros(M.rank, 0))
            out.append(AbGroup(tuple(orders)))
        else:
            d_in = diffs[k - 1]
            orders, _ = im.subquotient(im.kernel(d_out), d_in)
            out.append(AbGroup(tuple(orders)))
    return out


# ---------------------------------------------------------------------------
# C_3 indecomposables and tensor decomposition
# ---------------------------------------------------------------------------

INDECOMPOSABLES = ("Z", "Zspoke", "ZC3")


def indecomposable(kind: str) -> CyclicModule:
    if kind == "Z":
        return trivial_module(3)
    if kind == "Zspoke":
        return spoke_module()
    if kind == "ZC3":
        return regular_module(3)
    raise ValueError(f"unknown indecomposable {kind}")


def _fingerprint(M: CyclicModule) -> Tuple[int, int, int]:
    h = cyclic_cohomology(M, [0, 1, 2])
    return (M.rank, h[0].rank, len(h[1].orders))


_FPS = {
    "Z": (1, 1, 0),
    "Zspoke": (2, 0, 1),
    "ZC3": (3, 1, 0),
}


class UnsupportedModule(ValueError):
    pass


def recognize_summands(M: CyclicModule) -> List[str]:
    """Multiset of indecomposables of a C_3-module assumed to split into them.

    Solved from (rank, rank H^0, #H^1) and cross-checked by rebuilding the sum
    and comparing H^0..H^2.
    """
    if M.n != 3:
        raise UnsupportedModule("only C_3 modules decompose here")
    r, h0, h1 = _fingerprint(M)
    b = h1
    rest = r - h0 - 2 * b
    if rest < 0 or rest % 2 != 0:
        raise UnsupportedModule("fingerprint does not match a sum of indecomposables")
    c = rest // 2
    a = h0 - c
    if a < 0 or a + 2 * b + 3 * c != r:
        raise UnsupportedModule("fingerprint does not match a sum of indecomposables")
    combo = ["Z"] * a + ["Zspoke"] * b + ["ZC3"] * c
    if combo:
        rebuilt = direct_sum(*[indecomposable(k) for k in combo])
        for k in range(3):
            got = cyclic_cohomology(M, [k])[0].order_multiset()
            want = cyclic_cohomology(rebuilt, [k])[0].order_multiset()
            if got != want:
                raise UnsupportedModule("module is not a sum of Z, Zspoke, ZC3")
    return combo


def c3_tensor_decompose(M1: CyclicModule, M2: CyclicModule) -> List[str]:
    """Decompose M1 (x) M2 (diagonal action) into Z, Zspoke, ZC3 summands."""
    recognize_summands(M1)
    recognize_summands(M2)
    return recognize_summands(tensor(M1, M2))


def presented_cyclic_cohomology(n: int, T: np.ndarray, R: np.ndarray,
                                degrees: Sequence[int]) -> List[AbGroup]:
    """H^k(C_n; Z^r/span(R)) for an action matrix T preserving span(R).

    Extends the periodic-resolution computation to presented (possibly
    torsion) modules; all steps are lattice arithmetic.
    """
    r = T.shape[0]
    if r == 0:
        return [AbGroup() for _ in degrees]
    one = im.eye(r)
    d1 = T - one
    N = im.zeros(r, r)
    P = one
    for _ in range(n):
        N = N + P
        P = T @ P
    out = []
    for k in degrees:
        if k < 0:
            out.append(AbGroup())
            continue
        if k == 0:
            Z = im.preimage_lattice(d1, R)
            B = R
        elif k % 2 == 1:
            Z = im.preimage_lattice(N, R)
            B = im.lattice_sum(d1, R)
        else:
            Z = im.preimage_lattice(d1, R)
            B = im.lattice_sum(N, R)
        orders, _ = im.subquotient(Z, im.hnf_columns(B))
        out.append(AbGroup(tuple(orders)))
    return out
