"""Multigraded degrees for RO(G)-graded pages.

A Degree bundles (filtration, stem, twist, spoke, weight):

* ``stem``   -- multiplicity of the trivial representation,
* ``twist``  -- multiplicity of sigma (G = C_2) or lambda (G = C_3),
* ``spoke``  -- the half-twist adjoined at C_3, normalized via 2*spoke = lambda,
* ``weight`` -- motivic weight (only meaningful under the motivic grading).

Gradings are the string tags "C2", "C3", "motC2" and "triv" (no twist at all,
used for nonequivariant Ext charts).
"""
from __future__ import annotations

from dataclasses import dataclass

GRADINGS = ("C2", "C3", "motC2", "triv")


class GradingMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Degree:
    filtration: int
    stem: int
    twist: int = 0
    spoke: int = 0
    weight: int = 0

    def dimension(self) -> int:
        """Virtual dimension of the underlying RO(G) degree."""
        return self.stem + 2 * self.twist + self.spoke

    def shift(self, df: int, dstem: int) -> "Degree":
        return Degree(self.filtration + df, self.stem + dstem,
                      self.twist, self.spoke, self.weight)

    def key(self):
        return (self.filtration, self.stem, self.twist, self.spoke, self.weight)

    def __str__(self):
        parts = [str(self.filtration), str(self.stem)]
        if self.twist or self.spoke:
            parts.append(f"{self.twist}t")
        if self.spoke:
            parts.append(f"{self.spoke}s")
        if self.weight:
            parts.append(f"w{self.weight}")
        return "(" + ",".join(parts) + ")"


def normalize_degree(d: Degree, grading: str) -> Degree:
    """Reduce the spoke flag to {0,1}, folding pairs of spokes into twists.

    At C_2 a nonzero spoke is a grading mismatch.  The reduction
    (stem, twist, s) -> (stem, twist + s//2, s % 2) implements 2*spoke = lambda
    and is idempotent; it also handles negative spokes, where -spoke equals
    spoke - lambda.
    """
    if grading not in GRADINGS:
        raise GradingMismatch(f"unknown grading {grading!r}")
    if grading != "C3":
        if d.spoke != 0:
            raise GradingMismatch(f"spoke={d.spoke} is only available at C3")
        if grading in ("C2", "triv") and d.weight != 0:
            raise GradingMismatch("weights are only available motivically")
        return d
    if 0 <= d.spoke <= 1:
        return d
    return Degree(d.filtration, d.stem, d.twist + d.spoke // 2, d.spoke % 2,
                  d.weight)


def add_degrees(a: Degree, b: Degree, grading: str) -> Degree:
    raw = Degree(a.filtration + b.filtration, a.stem + b.stem,
                 a.twist + b.twist, a.spoke + b.spoke, a.weight + b.weight)
    return normalize_degree(raw, grading)


def scale_degree(n: int, d: Degree, grading: str) -> Degree:
    raw = Degree(n * d.filtration, n * d.stem, n * d.twist, n * d.spoke,
                 n * d.weight)
    return normalize_degree(raw, grading)


def zero_degree() -> Degree:
    return Degree(0, 0, 0, 0, 0)


def differential_shift(r: int) -> Degree:
    """Degree shift of d_r: filtration +r, stem -1, all twists preserved."""
    return Degree(r, -1, 0, 0, 0)


# rho constants: regular representation minus nothing, stored as Degrees with
# zero filtration.  rho_{C2} = 1 + sigma, rho_{C3} = 1 + lambda.
RHO_C2 = Degree(0, 1, 1, 0, 0)
RHO_C3 = Degree(0, 1, 1, 0, 0)


@dataclass(frozen=True)
class DegreeWindow:
    """A box of degrees; components with None bounds are unconstrained."""
    f_min: int = 0
    f_max: int = 20
    stem_min: int = -20
    stem_max: int = 20
    twist_min: int = -12
    twist_max: int = 12

    def contains(self, d: Degree) -> bool:
        return (self.f_min <= d.filtration <= self.f_max
                and self.stem_min <= d.stem <= self.stem_max
                and self.twist_min <= d.twist <= self.twist_max)

    def degrees(self, grading: str, spokes=(0,), weights=(0,)):
        for f in range(self.f_min, self.f_max + 1):
            for stem in range(self.stem_min, self.stem_max + 1):
                for twist in range(self.twist_min, self.twist_max + 1):
                    for sp in (spokes if grading == "C3" else (0,)):
                        for w in (weights if grading == "motC2" else (0,)):
                            yield Degree(f, stem, twist, sp, w)

    def shrink(self, df: int, dstem: int) -> "DegreeWindow":
        return DegreeWindow(self.f_min, self.f_max - df,
                            self.stem_min + dstem, self.stem_max - dstem,
                            self.twist_min, self.twist_max)
