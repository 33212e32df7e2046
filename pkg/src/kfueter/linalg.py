"""Exact sparse Gaussian elimination over the Gaussian rationals.

Rows are dicts ``{column: ExactComplex}``.  Elimination is incremental:
rows are inserted in the order given, each is reduced against the pivots
found so far and, if anything survives, its smallest surviving column
becomes a new pivot.  Pivot choice therefore depends only on row order and
column numbering, which makes every result reproducible.
"""

from __future__ import annotations

import heapq

from .exact import ExactComplex

__all__ = ["Echelon", "nullspace", "solve", "rank"]


class Echelon:
    """Row-echelon accumulator; ``pivots[c]`` is a row with a unit entry at ``c``."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}

    def _reduce(self, row):
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if v is None:
                continue
            for cc, pv in pivots[c].items():
                old = row.get(cc)
                nv = -(v * pv) if old is None else old - v * pv
                if nv:
                    if old is None and cc in pivots:
                        heapq.heappush(heap, cc)
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return row

    def add_row(self, row):
        """Insert a row; return the new pivot column or ``None`` if it reduced to zero."""
        row = self._reduce({c: ExactComplex.coerce(v) for c, v in row.items() if v})
        if not row:
            return None
        c = min(row)
        inv = 1 / row[c]
        self.pivots[c] = {cc: v * inv for cc, v in row.items()}
        return c

    @property
    def rank(self):
        return len(self.pivots)

    def reduced(self):
        """Fully reduced rows (pivot columns cleared from every other pivot row)."""
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            prow = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r = rows[c2]
                v = r.get(c)
                if v is None:
                    continue
                for cc, pv in prow.items():
                    old = r.get(cc)
                    nv = -(v * pv) if old is None else old - v * pv
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        return rows


def rank(rows, ncols):
    ech = Echelon(ncols)
    for row in rows:
        ech.add_row(row)
    return ech.rank


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` as dense lists, one vector per free column."""
    ech = Echelon(ncols)
    for row in rows:
        ech.add_row(row)
    red = ech.reduced()
    zero = ExactComplex(0)
    one = ExactComplex(1)
    basis = []
    for free in range(ncols):
        if free in red:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for p, r in red.items():
            v = r.get(free)
            if v is not None:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols):
    """One solution of ``A x = rhs`` (free variables set to zero), or ``None``.

    ``rhs`` is a sequence aligned with ``rows``.
    """
    aug = ncols
    ech = Echelon(ncols + 1)
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[aug] = ExactComplex.coerce(b)
        c = ech.add_row(r)
        if c == aug:
            return None
    red = ech.reduced()
    zero = ExactComplex(0)
    x = [zero] * ncols
    for p, r in red.items():
        v = r.get(aug)
        if v is not None:
            x[p] = v
    return x
