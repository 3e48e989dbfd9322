"""Working precision for p-complete coefficients.

Charts take values in finitely generated modules over the p-complete integers.
We compute in Z/p^N instead: every group order in the shipped scenarios is at
most p^4, so a cyclic summand of order p^N is reported as free at working
precision and nothing is lost.  N defaults to 8 and can be overridden with the
MANSS_PRECISION environment variable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_PRECISION = 8


@dataclass(frozen=True)
class Coefficients:
    prime: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.prime not in (2, 3):
            raise ValueError("only the primes 2 and 3 are supported")
        if self.precision < 4:
            raise ValueError("precision must be at least 4")

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def cap_exponent(self, k: int) -> int:
        """Clamp a torsion exponent into [0, N]; k<0 means free (-> N)."""
        if k < 0 or k >= self.precision:
            return self.precision
        return k

    def order_from_z(self, d: int) -> int:
        """Translate a Z-cyclic order (0 = free) into a p^k order, k <= N."""
        if d == 0:
            return self.prime ** self.precision
        d = abs(d)
        k = 0
        while d % self.prime == 0:
            d //= self.prime
            k += 1
        if d != 1:
            raise ValueError(f"order {d * self.prime**k} is not a power of {self.prime}")
        return self.prime ** min(k, self.precision)

    def is_free(self, order: int) -> bool:
        return order == self.modulus


def env_precision(default: int = DEFAULT_PRECISION) -> int:
    raw = os.environ.get("MANSS_PRECISION")
    if raw is None:
        return default
    return int(raw)
