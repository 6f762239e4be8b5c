"""Pure-Python fraction-free elimination kernel.

This is the reference implementation of the hot loop behind every rank
computation.  A compiled twin lives in ``_elim.pyx``; ``curvhom._backend``
picks whichever is available at import time.

Rows are given as mappings ``col -> int``.  Columns are reordered once by
increasing occupancy (a static Markowitz ordering) and rows are processed
shortest first, which keeps fill-in and coefficient growth small for the
structured matrices produced by the complexes in this package.
"""

from math import gcd


def _content_normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for k in row:
            row[k] //= g
    return row


def column_order(rows, ncols):
    """Return ``perm`` with ``perm[col]`` the elimination position of ``col``."""
    count = [0] * ncols
    for row in rows:
        for c in row:
            count[c] += 1
    order = sorted(range(ncols), key=lambda c: (count[c], c))
    perm = [0] * ncols
    for pos, c in enumerate(order):
        perm[c] = pos
    return perm


def rank_rows(rows, ncols):
    """Exact rank of an integer matrix given as a list of sparse rows."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    perm = column_order(rows, ncols)
    work = []
    for r in rows:
        work.append({perm[c]: v for c, v in r.items() if v})
    work.sort(key=len)
    pivots = {}
    for row in work:
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = _content_normalize(row)
                break
            a = prow[lead]
            b = row[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                if a == -1:
                    for k in row:
                        row[k] = -row[k]
                else:
                    for k in row:
                        row[k] *= a
            for k, v in prow.items():
                nv = row.get(k, 0) - b * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if a != 1 and a != -1:
                _content_normalize(row)
    return len(pivots)
