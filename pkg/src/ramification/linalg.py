"""Exact rank of integer matrices without fractions.

``rank_int`` is dense Bareiss elimination.  ``rank_sparse`` eliminates on
dict-of-column rows, dividing each new row by its content to keep entries
small; coboundary matrices of order complexes are very sparse, so this is the
workhorse.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a dense integer matrix (Bareiss)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col, ncols):
                # exact by Sylvester's identity
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def rank_sparse(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{col: value}`` rows."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                g = _content(row)
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
                pivots[col] = row
                break
            a, p = row[col], prow[col]
            new = {c: p * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - a * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = _content(new) if new else 0
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            row = new
    return len(pivots)
