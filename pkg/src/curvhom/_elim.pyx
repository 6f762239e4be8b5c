# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free elimination kernel.

Same algorithm as ``_elim_py.rank_rows`` but rows are stored as sorted C
arrays of (column, int64 value).  Every multiply and subtract is checked for
overflow; if any intermediate value leaves the int64 range the whole matrix
is handed back to the arbitrary-precision Python kernel, so the result is
always exact.
"""

from libc.stdlib cimport malloc, free, realloc
from libc.limits cimport LLONG_MIN

from curvhom import _elim_py

cdef extern from *:
    """
    static inline int ch_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ch_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int ch_mul_ovf(long long a, long long b, long long *r) nogil
    int ch_sub_ovf(long long a, long long b, long long *r) nogil


cdef struct Row:
    int n
    int cap
    int *col
    long long *val


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _normalize(Row *r) nogil:
    cdef long long g = 0
    cdef int i
    for i in range(r.n):
        g = _gcd(g, r.val[i])
        if g == 1:
            return 0
    if g > 1:
        for i in range(r.n):
            r.val[i] = r.val[i] // g
    return 0


cdef int _reduce(Row *row, Row *piv, Row *tmp) nogil:
    """row <- a*row - b*piv, both led by the same column.  Returns 1 on overflow."""
    cdef long long a = piv.val[0]
    cdef long long b = row.val[0]
    cdef long long g = _gcd(a, b)
    cdef long long x, y, z
    cdef int i = 1, j = 1, k = 0
    a = a // g
    b = b // g
    if tmp.cap < row.n + piv.n:
        tmp.cap = row.n + piv.n
        tmp.col = <int *> realloc(tmp.col, tmp.cap * sizeof(int))
        tmp.val = <long long *> realloc(tmp.val, tmp.cap * sizeof(long long))
    while i < row.n or j < piv.n:
        if j >= piv.n or (i < row.n and row.col[i] < piv.col[j]):
            if ch_mul_ovf(a, row.val[i], &x):
                return 1
            tmp.col[k] = row.col[i]
            tmp.val[k] = x
            k += 1
            i += 1
        elif i >= row.n or piv.col[j] < row.col[i]:
            if ch_mul_ovf(b, piv.val[j], &y):
                return 1
            if y == LLONG_MIN:
                return 1
            tmp.col[k] = piv.col[j]
            tmp.val[k] = -y
            k += 1
            j += 1
        else:
            if ch_mul_ovf(a, row.val[i], &x):
                return 1
            if ch_mul_ovf(b, piv.val[j], &y):
                return 1
            if ch_sub_ovf(x, y, &z):
                return 1
            if z != 0:
                tmp.col[k] = row.col[i]
                tmp.val[k] = z
                k += 1
            i += 1
            j += 1
    # swap buffers
    cdef int *c2 = row.col
    cdef long long *v2 = row.val
    cdef int cap2 = row.cap
    row.col = tmp.col
    row.val = tmp.val
    row.cap = tmp.cap
    row.n = k
    tmp.col = c2
    tmp.val = v2
    tmp.cap = cap2
    if a != 1 and a != -1:
        _normalize(row)
    return 0


def rank_rows(rows, int ncols):
    """Exact rank of an integer matrix given as a list of sparse rows."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    perm = _elim_py.column_order(rows, ncols)
    items = []
    for r in rows:
        try:
            items.append(sorted((perm[c], int(v)) for c, v in r.items() if v))
        except OverflowError:
            return _elim_py.rank_rows(rows, ncols)
    items.sort(key=len)
    cdef int nrows = len(items)
    cdef int i, t, lead, rank = 0, overflow = 0
    cdef Row *work = <Row *> malloc(nrows * sizeof(Row))
    cdef Row **pivots = <Row **> malloc(ncols * sizeof(Row *))
    cdef Row tmp
    tmp.n = 0
    tmp.cap = 16
    tmp.col = <int *> malloc(16 * sizeof(int))
    tmp.val = <long long *> malloc(16 * sizeof(long long))
    for i in range(ncols):
        pivots[i] = NULL
    for i in range(nrows):
        it = items[i]
        work[i].n = len(it)
        work[i].cap = len(it) if len(it) > 0 else 1
        work[i].col = <int *> malloc(work[i].cap * sizeof(int))
        work[i].val = <long long *> malloc(work[i].cap * sizeof(long long))
        t = 0
        for c, v in it:
            work[i].col[t] = c
            if v > 4611686018427387903 or v < -4611686018427387903:
                overflow = 1
                work[i].val[t] = 0
            else:
                work[i].val[t] = v
            t += 1
    if not overflow:
        with nogil:
            for i in range(nrows):
                while work[i].n > 0:
                    lead = work[i].col[0]
                    if pivots[lead] == NULL:
                        _normalize(&work[i])
                        pivots[lead] = &work[i]
                        rank += 1
                        break
                    if _reduce(&work[i], pivots[lead], &tmp):
                        overflow = 1
                        break
                if overflow:
                    break
    for i in range(nrows):
        free(work[i].col)
        free(work[i].val)
    free(work)
    free(pivots)
    free(tmp.col)
    free(tmp.val)
    if overflow:
        return _elim_py.rank_rows(rows, ncols)
    return rank
