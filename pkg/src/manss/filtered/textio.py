"""Plain-text matrix-list format for filtered complexes.

Line oriented, '#' comments::

    degrees <m_min> <m_max>
    rank <m> <r>
    d <m> <row entries, r(m+1) x r(m), row-major>
    range <s_min> <s_max>
    level <s> <m> <k> <column entries, r(m) x k, column-major>

Levels omitted between s_min and s_max default to zero columns.
"""
from __future__ import annotations

from typing import Dict, Tuple

from ..core import intmat as im
from .complexes import Complex, FilteredComplex


def dumps(fc: FilteredComplex) -> str:
    cx = fc.cx
    lines = [f"degrees {cx.m_min} {cx.m_max}"]
    for m in cx.degrees():
        lines.append(f"rank {m} {cx.rank(m)}")
    for m in cx.degrees():
        D = cx.diff(m)
        if D.shape[0] and D.shape[1] and not im.is_zero_matrix(D):
            flat = " ".join(str(D[i, j]) for i in range(D.shape[0])
                            for j in range(D.shape[1]))
            lines.append(f"d {m} {flat}")
    lines.append(f"range {fc.s_min} {fc.s_max}")
    for s in range(fc.s_min + 1, fc.s_max + 1):
        for m in cx.degrees():
            B = fc.level(s, m)
            if B.shape[1]:
                flat = " ".join(str(B[i, j]) for j in range(B.shape[1])
                                for i in range(B.shape[0]))
                lines.append(f"level {s} {m} {B.shape[1]} {flat}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> FilteredComplex:
    ranks: Dict[int, int] = {}
    diffs_raw: Dict[int, list] = {}
    levels_raw: Dict[Tuple[int, int], Tuple[int, list]] = {}
    s_min = s_max = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "degrees":
                pass
            elif parts[0] == "rank":
                ranks[int(parts[1])] = int(parts[2])
            elif parts[0] == "d":
                diffs_raw[int(parts[1])] = [int(x) for x in parts[2:]]
            elif parts[0] == "range":
                s_min, s_max = int(parts[1]), int(parts[2])
            elif parts[0] == "level":
                s, m, k = int(parts[1]), int(parts[2]), int(parts[3])
                levels_raw[(s, m)] = (k, [int(x) for x in parts[4:]])
            else:
                raise ValueError(f"unknown directive {parts[0]!r}")
        except (IndexError, ValueError) as e:
            raise ValueError(f"line {lineno}: {e}") from e
    diffs = {}
    for m, flat in diffs_raw.items():
        r_out = ranks.get(m + 1, 0)
        r_in = ranks.get(m, 0)
        if len(flat) != r_out * r_in:
            raise ValueError(f"differential at {m} has {len(flat)} entries, "
                             f"expected {r_out * r_in}")
        diffs[m] = im.intmat([[flat[i * r_in + j] for j in range(r_in)]
                              for i in range(r_out)])
    cx = Complex(ranks, diffs)
    bases = {}
    for (s, m), (k, flat) in levels_raw.items():
        r = ranks.get(m, 0)
        if len(flat) != r * k:
            raise ValueError(f"level ({s},{m}) has {len(flat)} entries, expected {r * k}")
        M = im.zeros(r, k)
        for j in range(k):
            for i in range(r):
                M[i, j] = flat[j * r + i]
        bases[(s, m)] = M
    return FilteredComplex(cx, s_min, s_max, bases)
