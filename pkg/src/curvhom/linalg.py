"""Exact sparse linear algebra over the rationals and over windowed Q(u).

Everything that reports a dimension in this package ends up here.  Ranks of
rational matrices are computed exactly by fraction-free elimination (the hot
loop lives in the compiled kernel when available, see ``_backend``).  Ranks
over the rational function field Q(u) are obtained by specializing u at a few
random rationals and keeping the maximum; an exact Bareiss oracle over Q[u]
is kept for small matrices so the sampling can be cross-checked.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import _backend

Rational = Fraction


class WindowOverflow(ArithmeticError):
    """Raised when u-arithmetic would leave the declared Laurent window."""


def as_rational(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class UWindowScalar:
    """A Laurent polynomial in u with exponents confined to [-N_u, N_u].

    Products and shifts that would produce an exponent outside the window raise
    :class:`WindowOverflow` instead of silently dropping terms.
    """

    __slots__ = ("coeffs", "window")

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None, window: int = 4):
        if window < 0:
            raise ValueError("window must be non-negative")
        self.window = window
        clean = {}
        for e, c in (coeffs or {}).items():
            c = as_rational(c)
            if not c:
                continue
            if abs(e) > window:
                raise WindowOverflow(f"u^{e} outside window [-{window}, {window}]")
            clean[int(e)] = c
        self.coeffs = clean

    @classmethod
    def u(cls, power: int = 1, window: int = 4) -> "UWindowScalar":
        return cls({power: 1}, window)

    def _coerce(self, other) -> "UWindowScalar":
        if isinstance(other, UWindowScalar):
            return other
        return UWindowScalar({0: as_rational(other)}, self.window)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return UWindowScalar(out, max(self.window, other.window))

    __radd__ = __add__

    def __neg__(self):
        return UWindowScalar({e: -c for e, c in self.coeffs.items()}, self.window)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        window = max(self.window, other.window)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return UWindowScalar(out, window)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*u^{e}" for e, c in sorted(self.coeffs.items()))

    def evaluate(self, u: Fraction) -> Fraction:
        u = as_rational(u)
        if not u and any(e < 0 for e in self.coeffs):
            raise ZeroDivisionError("cannot evaluate negative u-powers at u = 0")
        return sum((c * u ** e for e, c in self.coeffs.items()), Fraction(0))


def _is_u(x) -> bool:
    return isinstance(x, UWindowScalar)


class SparseMatrix:
    """Immutable sparse matrix with exact entries.

    Entries are Fractions, or UWindowScalars for matrices over Q(u).  Zero
    entries are never stored and every (row, col) pair appears at most once.
    """

    __slots__ = ("nrows", "ncols", "_entries")

    def __init__(self, nrows: int, ncols: int, entries: Iterable[Tuple[int, int, object]] = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix shape")
        self.nrows = nrows
        self.ncols = ncols
        store: Dict[Tuple[int, int], object] = {}
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if (r, c) in store:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            if not _is_u(v):
                v = as_rational(v)
            if v:
                store[(r, c)] = v
        self._entries = store

    # construction helpers
    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ents = []
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                ents.append((i, j, v))
        return cls(nrows, ncols, ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, object]], ncols: int) -> "SparseMatrix":
        return cls(len(rows), ncols, ((i, c, v) for i, r in enumerate(rows) for c, v in r.items()))

    @classmethod
    def from_columns(cls, cols: Sequence[Mapping[int, object]], nrows: int) -> "SparseMatrix":
        return cls(nrows, len(cols), ((r, j, v) for j, col in enumerate(cols) for r, v in col.items()))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> List[Tuple[int, int, object]]:
        return [(r, c, v) for (r, c), v in sorted(self._entries.items())]

    def __getitem__(self, rc: Tuple[int, int]):
        return self._entries.get(rc, Fraction(0))

    def nnz(self) -> int:
        return len(self._entries)

    def is_u_matrix(self) -> bool:
        return any(_is_u(v) for v in self._entries.values())

    def row_dicts(self) -> List[Dict[int, object]]:
        rows: List[Dict[int, object]] = [dict() for _ in range(self.nrows)]
        for (r, c), v in self._entries.items():
            rows[r][c] = v
        return rows

    def to_dense(self) -> List[List[object]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, ((c, r, v) for (r, c), v in self._entries.items()))

    def scale(self, s) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, ((r, c, v * s) for (r, c), v in self._entries.items()))

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        orow = other.row_dicts()
        acc: Dict[Tuple[int, int], object] = {}
        for (r, k), v in self._entries.items():
            for c, w in orow[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMatrix(self.nrows, other.ncols, ((r, c, v) for (r, c), v in acc.items()))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in sum")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return SparseMatrix(self.nrows, self.ncols, ((r, c, v) for (r, c), v in acc.items()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, tuple(sorted(self._entries.items()))))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def apply(self, vec: Mapping[int, object]) -> Dict[int, object]:
        """Multiply by a sparse column vector given as ``{col: value}``."""
        out: Dict[int, object] = {}
        cols: Dict[int, List[Tuple[int, object]]] = {}
        for (r, c), v in self._entries.items():
            cols.setdefault(c, []).append((r, v))
        for c, x in vec.items():
            for r, v in cols.get(c, ()):
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def evaluate(self, u) -> "SparseMatrix":
        """Specialize every u-entry at the rational value ``u``."""
        return SparseMatrix(
            self.nrows,
            self.ncols,
            ((r, c, v.evaluate(u) if _is_u(v) else v) for (r, c), v in self._entries.items()),
        )


# ---------------------------------------------------------------------------
# ranks


def integer_row(row: Mapping[int, object]) -> Dict[int, int]:
    """Scale a rational sparse row to a primitive integer row (same span)."""
    den = 1
    for v in row.values():
        den = _lcm(den, Fraction(v).denominator)
    return {c: int(Fraction(v) * den) for c, v in row.items() if v}


def rank_rows(rows: Iterable[Mapping[int, object]], ncols: int) -> int:
    """Exact rank of a rational matrix given as sparse rows ``{col: value}``."""
    return _backend.rank_rows([integer_row(r) for r in rows if r], ncols)


def sample_points(count: int, seed: int = 0, height: int = 97) -> List[Fraction]:
    """Distinct nonzero random rationals of bounded height (deterministic per seed)."""
    rng = random.Random(seed)
    pts: List[Fraction] = []
    while len(pts) < count:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q and q not in pts:
            pts.append(q)
    return pts


def rank(m: SparseMatrix, u_samples: int = 3, seed: int = 0) -> int:
    """Exact rank over Q, or sampled rank over Q(u) for u-valued matrices."""
    if m.is_u_matrix():
        best = 0
        for u in sample_points(u_samples, seed):
            best = max(best, rank(m.evaluate(u)))
        return best
    return rank_rows(m.row_dicts(), m.ncols)


def cokernel_dim(m: SparseMatrix) -> int:
    return m.nrows - rank(m)


def projected_kernel_dim(rows: Sequence[Mapping[int, object]], ncols: int, drop: Iterable[int]) -> int:
    """dim of the image of ker(A) under the coordinate projection killing ``drop``.

    ``rows`` are the rows of A.  Uses only ranks:
    dim pi(ker A) = dim ker A - dim ker(A restricted to the dropped columns).
    """
    drop = sorted(set(drop))
    pos = {c: i for i, c in enumerate(drop)}
    sub = [{pos[c]: v for c, v in r.items() if c in pos} for r in rows]
    ker_all = ncols - rank_rows(rows, ncols)
    ker_drop = len(drop) - rank_rows(sub, len(drop))
    return ker_all - ker_drop


# ---------------------------------------------------------------------------
# kernels and solving (moderate sizes; pure Fraction arithmetic)


def rref(m: SparseMatrix) -> Tuple[List[Dict[int, Fraction]], List[int]]:
    """Reduced row echelon form: nonzero rows (leading entry 1) and pivot columns."""
    if m.is_u_matrix():
        raise TypeError("rref needs rational entries; specialize u first")
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for row in m.row_dicts():
        row = {c: Fraction(v) for c, v in row.items()}
        while True:
            hit = [c for c in row if c in pivots]
            if not hit:
                break
            c = min(hit)
            f = row[c]
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {k: v * inv for k, v in row.items()}
        for p, prow in pivots.items():
            if lead in prow:
                f = prow[lead]
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[lead] = row
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def kernel_basis(m: SparseMatrix) -> List[Dict[int, Fraction]]:
    """Exact basis of the right kernel, one sparse vector per free column."""
    rows, piv = rref(m)
    pivset = set(piv)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for c, row in zip(piv, rows):
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def solve(m: SparseMatrix, rhs: Mapping[int, object]) -> Optional[Dict[int, Fraction]]:
    """Some x with m x = rhs, or None if the system is inconsistent."""
    aug = SparseMatrix(
        m.nrows, m.ncols + 1, list(m._entries_iter()) + [(r, m.ncols, v) for r, v in rhs.items()]
    )
    rows, piv = rref(aug)
    if piv and piv[-1] == m.ncols:
        return None
    x: Dict[int, Fraction] = {}
    for c, row in zip(piv, rows):
        v = row.get(m.ncols)
        if v:
            x[c] = v
    return x


def _entries_iter(self):
    return ((r, c, v) for (r, c), v in self._entries.items())


SparseMatrix._entries_iter = _entries_iter


def in_span(vectors: Sequence[Mapping[int, object]], v: Mapping[int, object], ncols: int) -> bool:
    """True iff ``v`` lies in the span of ``vectors`` (all sparse over Q)."""
    base = rank_rows(vectors, ncols)
    return rank_rows(list(vectors) + [v], ncols) == base


# ---------------------------------------------------------------------------
# exact oracle over Q[u] (small matrices)


def _pmul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _ptrim(a: List[Fraction]) -> List[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _psub(a, b):
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pdivexact(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        _ptrim(a)
    if a:
        raise ArithmeticError("inexact polynomial division in Bareiss step")
    return _ptrim(q)


def rank_u_exact(m: SparseMatrix) -> int:
    """Exact rank over Q(u) by Bareiss elimination on Q[u] (oracle for small sizes)."""
    shift = 0
    for v in m._entries.values():
        if _is_u(v):
            shift = max(shift, max((-e for e in v.coeffs), default=0))
    dense = []
    for row in m.to_dense():
        prow = []
        for v in row:
            if _is_u(v):
                top = max(v.coeffs) + shift if v.coeffs else 0
                p = [Fraction(0)] * (top + 1)
                for e, c in v.coeffs.items():
                    p[e + shift] = c
                prow.append(_ptrim(p))
            else:
                c = Fraction(v)
                prow.append([c * 1] if c else [])
                if c and shift:
                    prow[-1] = [Fraction(0)] * shift + [c]
        dense.append(prow)
    nr, nc = m.nrows, m.ncols
    r = 0
    prev = [Fraction(1)]
    for c in range(nc):
        piv = next((i for i in range(r, nr) if dense[i][c]), None)
        if piv is None:
            continue
        dense[r], dense[piv] = dense[piv], dense[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                num = _psub(_pmul(dense[r][c], dense[i][j]), _pmul(dense[i][c], dense[r][j]))
                dense[i][j] = _pdivexact(num, prev) if num else []
            dense[i][c] = []
        prev = dense[r][c]
        r += 1
        if r == nr:
            break
    return r
