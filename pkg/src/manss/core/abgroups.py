"""Finitely generated abelian groups as lists of cyclic orders with labels."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple


@dataclass(frozen=True)
class AbGroup:
    """Direct sum of cyclic groups; order 0 means an infinite cyclic summand.

    In chart contexts orders are powers of the working prime and p^N plays the
    role of a free summand; generic integer homology uses arbitrary orders.
    """
    orders: Tuple[int, ...] = ()
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.labels and len(self.labels) != len(self.orders):
            raise ValueError("label count must match summand count")

    @property
    def rank(self) -> int:
        return len(self.orders)

    def is_trivial(self) -> bool:
        return not self.orders

    def order_multiset(self) -> Tuple[int, ...]:
        return tuple(sorted(self.orders))

    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    def __str__(self):
        if not self.orders:
            return "0"
        parts = []
        for i, o in enumerate(self.orders):
            name = "Z" if o == 0 else f"Z/{o}"
            if self.labels:
                name += "{" + self.labels[i] + "}"
            parts.append(name)
        return " + ".join(parts)


def same_groups(a: AbGroup, b: AbGroup) -> bool:
    """Isomorphism test: equal multisets of cyclic orders."""
    return a.order_multiset() == b.order_multiset()


def from_orders(orders, labels=None) -> AbGroup:
    if labels is None:
        return AbGroup(tuple(int(o) for o in orders))
    return AbGroup(tuple(int(o) for o in orders), tuple(labels))
