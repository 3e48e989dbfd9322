"""Exact integer matrices: Smith/Hermite normal forms and lattice arithmetic.

Matrices are numpy arrays with dtype=object holding python ints, so all
arithmetic is exact at arbitrary magnitude.  A *lattice* (subgroup of Z^n)
is represented by an n x k matrix whose columns generate it.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np


def intmat(rows: Sequence[Sequence[int]]) -> np.ndarray:
    """Build an exact integer matrix from nested sequences."""
    r = len(rows)
    c = len(rows[0]) if r else 0
    M = np.empty((r, c), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != c:
            raise ValueError("ragged rows")
        for j, x in enumerate(row):
            M[i, j] = int(x)
    return M


def zeros(r: int, c: int) -> np.ndarray:
    M = np.empty((r, c), dtype=object)
    M[:, :] = 0
    return M


def eye(n: int) -> np.ndarray:
    M = zeros(n, n)
    for i in range(n):
        M[i, i] = 1
    return M


def hstack(blocks: Iterable[np.ndarray]) -> np.ndarray:
    blocks = [b for b in blocks]
    if not blocks:
        return zeros(0, 0)
    rows = blocks[0].shape[0]
    cols = sum(b.shape[1] for b in blocks)
    M = zeros(rows, cols)
    at = 0
    for b in blocks:
        if b.shape[0] != rows:
            raise ValueError("row mismatch in hstack")
        M[:, at:at + b.shape[1]] = b
        at += b.shape[1]
    return M


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B


def is_zero_matrix(M: np.ndarray) -> bool:
    return all(x == 0 for x in M.flat)


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product; index (i,j) blocks ordered row-major like np.kron."""
    ra, ca = A.shape
    rb, cb = B.shape
    M = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i, j]
            if a == 0:
                continue
            for k in range(rb):
                for l in range(cb):
                    M[i * rb + k, j * cb + l] = a * B[k, l]
    return M


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _swap_rows(M, i, j):
    M[[i, j], :] = M[[j, i], :]


def _swap_cols(M, i, j):
    M[:, [i, j]] = M[:, [j, i]]


def smith_normal_form(M: np.ndarray, transforms: bool = True):
    """Smith normal form of an integer matrix.

    Returns (D, U, V) with U @ M @ V == D, D diagonal with d_i | d_{i+1},
    d_i >= 0, and U, V unimodular.  With transforms=False returns just D
    (faster; used by the oracles that only need invariant factors).
    """
    D = M.copy()
    r, c = D.shape
    U = eye(r) if transforms else None
    V = eye(c) if transforms else None
    t = 0
    while t < min(r, c):
        # locate a pivot of minimal absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = D[i, j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        i, j = piv
        if i != t:
            _swap_rows(D, t, i)
            if transforms:
                _swap_rows(U, t, i)
        if j != t:
            _swap_cols(D, t, j)
            if transforms:
                _swap_cols(V, t, j)
        # clear row & column t; restart if a remainder shrinks the pivot
        while True:
            p = D[t, t]
            done = True
            for i in range(t + 1, r):
                if D[i, t] != 0:
                    q = D[i, t] // p
                    if q != 0:
                        D[i, :] = D[i, :] - q * D[t, :]
                        if transforms:
                            U[i, :] = U[i, :] - q * U[t, :]
                    if D[i, t] != 0:
                        _swap_rows(D, t, i)
                        if transforms:
                            _swap_rows(U, t, i)
                        done = False
                        break
            if not done:
                continue
            for j in range(t + 1, c):
                if D[t, j] != 0:
                    q = D[t, j] // p
                    if q != 0:
                        D[:, j] = D[:, j] - q * D[:, t]
                        if transforms:
                            V[:, j] = V[:, j] - q * V[:, t]
                    if D[t, j] != 0:
                        _swap_cols(D, t, j)
                        if transforms:
                            _swap_cols(V, t, j)
                        done = False
                        break
            if done:
                break
        # absorb entries not divisible by the pivot to fix divisibility
        p = D[t, t]
        bad = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if D[i, j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            D[t, :] = D[t, :] + D[bad, :]
            if transforms:
                U[t, :] = U[t, :] + U[bad, :]
            continue
        t += 1
    # normalize signs
    for i in range(min(r, c)):
        if D[i, i] < 0:
            D[i, :] = -D[i, :]
            if transforms:
                U[i, :] = -U[i, :]
    if transforms:
        return D, U, V
    return D


def invariant_factors(M: np.ndarray) -> list[int]:
    """Nonzero diagonal of the SNF followed by nothing; zeros are dropped."""
    D = smith_normal_form(M, transforms=False)
    out = []
    for i in range(min(D.shape)):
        if D[i, i] != 0:
            out.append(int(D[i, i]))
    return out


def rank(M: np.ndarray) -> int:
    return len(invariant_factors(M))


def unimodular_inverse(M: np.ndarray) -> np.ndarray:
    """Inverse of a square matrix with det +-1 (exact)."""
    n = M.shape[0]
    D, U, V = smith_normal_form(M)
    for i in range(n):
        if D[i, i] != 1:
            raise ValueError("matrix is not unimodular")
    return V @ U


# ---------------------------------------------------------------------------
# Lattice toolkit: columns of a matrix generate a subgroup of Z^n
# ---------------------------------------------------------------------------

def hnf_columns(M: np.ndarray) -> np.ndarray:
    """Canonical column-style Hermite form of the lattice spanned by M's columns.

    Pivot entries positive, entries left of a pivot reduced into [0, pivot),
    zero columns dropped.  Two matrices span the same lattice iff their HNFs
    are equal, which is how lattice equality is tested.
    """
    H = M.copy()
    rows, cols = H.shape
    pr = 0
    pc = 0
    while pr < rows and pc < cols:
        # gcd-reduce row pr across columns pc..cols-1
        while True:
            jmin = None
            best = None
            for j in range(pc, cols):
                x = H[pr, j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    jmin = j
            if jmin is None:
                break
            if jmin != pc:
                _swap_cols(H, pc, jmin)
            p = H[pr, pc]
            again = False
            for j in range(pc + 1, cols):
                if H[pr, j] != 0:
                    q = H[pr, j] // p
                    H[:, j] = H[:, j] - q * H[:, pc]
                    if H[pr, j] != 0:
                        again = True
            if not again:
                break
        if H[pr, pc] != 0:
            if H[pr, pc] < 0:
                H[:, pc] = -H[:, pc]
            p = H[pr, pc]
            for j in range(pc):
                q = H[pr, j] // p  # floor division puts entry in [0, p)
                if q != 0:
                    H[:, j] = H[:, j] - q * H[:, pc]
            pr += 1
            pc += 1
        else:
            pr += 1
    # drop zero columns, keep pivot order
    keep = [j for j in range(cols) if any(H[i, j] != 0 for i in range(rows))]
    return H[:, keep] if keep else zeros(rows, 0)


def kernel(M: np.ndarray) -> np.ndarray:
    """Basis (columns) of the integer kernel of M."""
    D, U, V = smith_normal_form(M)
    r = 0
    for i in range(min(D.shape)):
        if D[i, i] != 0:
            r += 1
    return V[:, r:] if r < M.shape[1] else zeros(M.shape[1], 0)


def solve(M: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One integer solution x of M x = b, or None."""
    D, U, V = smith_normal_form(M)
    ub = U @ b
    n = M.shape[1]
    y = zeros(n, b.shape[1] if b.ndim == 2 else 1)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
        ub = ub.reshape(-1, 1)
    for col in range(ub.shape[1]):
        for i in range(ub.shape[0]):
            d = D[i, i] if i < min(D.shape) else 0
            v = ub[i, col]
            if i < n and d != 0:
                if v % d != 0:
                    return None
                y[i, col] = v // d
            else:
                if v != 0:
                    return None
    return V @ y


def solve_matrix(M: np.ndarray, B: np.ndarray) -> Optional[np.ndarray]:
    """Integer X with M @ X = B, or None."""
    return solve(M, B)


def lattice_member(L: np.ndarray, v: np.ndarray) -> bool:
    return solve(L, v.reshape(-1, 1)) is not None


def lattice_contains(L1: np.ndarray, L2: np.ndarray) -> bool:
    """span(L2) subset of span(L1)?"""
    if L2.shape[1] == 0:
        return True
    return solve(L1, L2) is not None


def lattice_sum(*Ls: np.ndarray) -> np.ndarray:
    return hnf_columns(hstack(Ls))


def lattice_eq(L1: np.ndarray, L2: np.ndarray) -> bool:
    H1 = hnf_columns(L1)
    H2 = hnf_columns(L2)
    return H1.shape == H2.shape and is_zero_matrix(H1 - H2)


def lattice_intersection(L1: np.ndarray, L2: np.ndarray) -> np.ndarray:
    """Basis of span(L1) intersect span(L2)."""
    if L1.shape[1] == 0 or L2.shape[1] == 0:
        return zeros(L1.shape[0], 0)
    K = kernel(hstack([L1, -L2]))
    return hnf_columns(L1 @ K[:L1.shape[1], :])


def preimage_lattice(F: np.ndarray, L: np.ndarray) -> np.ndarray:
    """Basis of {x in Z^n : F x in span(L)} for F an m x n matrix."""
    n = F.shape[1]
    if L.shape[1] == 0:
        return kernel(F)
    K = kernel(hstack([F, -L]))
    return hnf_columns(K[:n, :])


def quotient_group(G: np.ndarray, R: np.ndarray) -> Tuple[list[int], np.ndarray]:
    """Present span(G)/span(R), assuming span(R) subset of span(G).

    Returns (orders, reps): orders[i] is the order of the i-th cyclic summand
    (0 meaning infinite) and reps[:, i] is an ambient representative.  Trivial
    summands are dropped; free summands come last.
    """
    G = hnf_columns(G)
    k = G.shape[1]
    if k == 0:
        return [], zeros(G.shape[0], 0)
    if R.shape[1] == 0:
        X = zeros(k, 0)
    else:
        X = solve(G, R)
        if X is None:
            raise ValueError("relation lattice not contained in generator lattice")
    D, U, V = smith_normal_form(X)
    Uinv = unimodular_inverse(U)
    newgens = G @ Uinv
    orders = []
    reps = []
    for i in range(k):
        d = int(D[i, i]) if i < min(D.shape) else 0
        if d == 1:
            continue
        orders.append(d)
        reps.append(i)
    # torsion first in increasing order, then free, for determinism
    idx = sorted(range(len(orders)), key=lambda t: (orders[t] == 0, orders[t]))
    orders_sorted = [orders[t] for t in idx]
    R_out = zeros(G.shape[0], len(idx))
    for out_j, t in enumerate(idx):
        R_out[:, out_j] = newgens[:, reps[t]]
    return orders_sorted, R_out


def subquotient(Z: np.ndarray, B: np.ndarray) -> Tuple[list[int], np.ndarray]:
    """Present (span(Z)+span(B))/span(B) = homology-style subquotient."""
    return quotient_group(lattice_sum(Z, B), hnf_columns(B))


def column_reduce_mod(L: np.ndarray, v: np.ndarray) -> Optional[np.ndarray]:
    """Coordinates of v in span(L) if representable, else None."""
    return solve(L, v.reshape(-1, 1))
