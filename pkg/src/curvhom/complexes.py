"""Bounded cochain complexes, cohomology, cones and filtered complexes.

Complexes are cohomologically graded: ``d[n]`` maps degree n to degree n+1.
Homologically graded objects (bar complexes) are stored with degree -n.
Every complex checks d∘d = 0 when it is built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import (
    SparseMatrix,
    kernel_basis,
    projected_kernel_dim,
    rank,
    rank_rows,
    rref,
)

Vector = Dict[int, Fraction]


class ComplexError(ValueError):
    """Raised when a would-be complex violates d∘d = 0 or shape rules."""


class ChainComplex:
    """Finite cochain complex of finite-dimensional spaces over Q (or Q(u))."""

    def __init__(
        self,
        dims: Mapping[int, int],
        diffs: Optional[Mapping[int, SparseMatrix]] = None,
        labels: Optional[Mapping[int, Sequence]] = None,
        check: bool = True,
    ):
        self.dims = {int(n): int(v) for n, v in dims.items() if v}
        if not self.dims:
            self.dims = {}
        self.diffs: Dict[int, SparseMatrix] = {}
        for n, m in (diffs or {}).items():
            src = self.dims.get(n, 0)
            tgt = self.dims.get(n + 1, 0)
            if m.shape != (tgt, src):
                raise ComplexError(f"d[{n}] has shape {m.shape}, expected {(tgt, src)}")
            if m.nnz():
                self.diffs[n] = m
        self.labels = {n: list(v) for n, v in (labels or {}).items()}
        if check:
            self.check_square_zero()

    @property
    def lo(self) -> int:
        return min(self.dims) if self.dims else 0

    @property
    def hi(self) -> int:
        return max(self.dims) if self.dims else 0

    def degrees(self) -> List[int]:
        return sorted(self.dims)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> SparseMatrix:
        m = self.diffs.get(n)
        if m is None:
            return SparseMatrix.zero(self.dim(n + 1), self.dim(n))
        return m

    def check_square_zero(self) -> None:
        for n in self.diffs:
            if n + 1 in self.diffs:
                prod = self.diffs[n + 1] @ self.diffs[n]
                if prod.nnz():
                    (r, c, v) = prod.entries[0]
                    raise ComplexError(f"d∘d ≠ 0 at degree {n}: entry ({r}, {c}) = {v}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * v for n, v in self.dims.items())

    def __repr__(self):
        return f"ChainComplex({dict(sorted(self.dims.items()))})"


def cohomology_dims(c: ChainComplex, u_samples: int = 3) -> Dict[int, int]:
    """dim ker d_n - dim im d_{n-1} for every degree carrying a nonzero space."""
    ranks = {n: rank(m, u_samples) for n, m in c.diffs.items()}
    out = {}
    for n in c.degrees():
        out[n] = c.dim(n) - ranks.get(n, 0) - ranks.get(n - 1, 0)
    return out


def image_cohomology_dims(
    big: ChainComplex, small: ChainComplex, keep: Mapping[int, Sequence[int]]
) -> Dict[int, int]:
    """dim of the image of H(big) -> H(small) under a coordinate projection.

    ``keep[n]`` lists, in order, the indices of ``big`` in degree n that form
    the basis of ``small`` in degree n.  The projection must be a chain map
    and surjective (true for truncation quotients).  Since the image of the
    big cycles contains all small boundaries, the answer is
    dim pi(Z_big) - dim B_small, computed from ranks only.
    """
    out = {}
    for n in small.degrees():
        kept = set(keep.get(n, ()))
        drop = [i for i in range(big.dim(n)) if i not in kept]
        rows = big.d(n).row_dicts()
        zp = projected_kernel_dim(rows, big.dim(n), drop)
        b = rank(small.d(n - 1))
        out[n] = zp - b
    return out


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    dims = {}
    for n in set(a.dims) | set(b.dims):
        dims[n] = a.dim(n) + b.dim(n)
    diffs = {}
    for n in set(a.diffs) | set(b.diffs):
        ma, mb = a.d(n), b.d(n)
        ents = list(ma.entries) + [(r + a.dim(n + 1), c + a.dim(n), v) for r, c, v in mb.entries]
        diffs[n] = SparseMatrix(dims.get(n + 1, 0), dims.get(n, 0), ents)
    return ChainComplex(dims, diffs)


def shift(c: ChainComplex, k: int = 1) -> ChainComplex:
    """c[k]: degree n holds c^{n+k}, differential multiplied by (-1)^k."""
    sign = -1 if k % 2 else 1
    return ChainComplex(
        {n - k: v for n, v in c.dims.items()},
        {n - k: m.scale(sign) for n, m in c.diffs.items()},
    )


def cone(f: Mapping[int, SparseMatrix], a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Mapping cone of a chain map f: a -> b.

    Cone^n = a^{n+1} ⊕ b^n with d(x, y) = (-d x, f x + d y).
    """
    degs = set(n - 1 for n in a.dims) | set(b.dims)
    dims = {n: a.dim(n + 1) + b.dim(n) for n in degs}
    diffs = {}
    for n in degs:
        sa, sb = a.dim(n + 1), b.dim(n)
        ta, tb = a.dim(n + 2), b.dim(n + 1)
        ents = []
        for r, c, v in a.d(n + 1).entries:
            ents.append((r, c, -v))
        fm = f.get(n + 1)
        if fm is not None:
            if fm.shape != (b.dim(n + 1), a.dim(n + 1)):
                raise ComplexError("chain map has wrong shape")
            for r, c, v in fm.entries:
                ents.append((ta + r, c, v))
        for r, c, v in b.d(n).entries:
            ents.append((ta + r, sa + c, v))
        diffs[n] = SparseMatrix(ta + tb, sa + sb, ents)
    return ChainComplex(dims, diffs)


def is_chain_map(f: Mapping[int, SparseMatrix], a: ChainComplex, b: ChainComplex) -> bool:
    for n in set(a.dims) | set(b.dims):
        fn = f.get(n, SparseMatrix.zero(b.dim(n), a.dim(n)))
        fn1 = f.get(n + 1, SparseMatrix.zero(b.dim(n + 1), a.dim(n + 1)))
        if (b.d(n) @ fn) != (fn1 @ a.d(n)):
            return False
    return True


# ---------------------------------------------------------------------------
# filtered complexes and spectral sequences




class _Subspace:
    """Subspace of Q^n kept in reduced echelon form, with a normal-form map."""

    def __init__(self, vectors: Iterable[Mapping[int, object]], n: int):
        self.n = n
        rows, piv = rref(SparseMatrix.from_rows([dict(v) for v in vectors if v], n))
        self.rows = rows
        self.piv = piv

    @property
    def dim(self) -> int:
        return len(self.rows)

    def normal_form(self, v: Mapping[int, object]) -> Vector:
        """Canonical representative of v modulo the subspace."""
        out = {k: Fraction(x) for k, x in v.items() if x}
        for c, row in zip(self.piv, self.rows):
            f = out.get(c)
            if f:
                for k, x in row.items():
                    nv = out.get(k, 0) - f * x
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.normal_form(v)


def _apply(m: SparseMatrix, v: Mapping[int, object]) -> Vector:
    return m.apply(v)


def _combine(coeffs: Mapping[int, object], basis: Sequence[Mapping[int, object]]) -> Vector:
    out: Vector = {}
    for i, c in coeffs.items():
        for k, x in basis[i].items():
            out[k] = out.get(k, 0) + c * x
    return {k: v for k, v in out.items() if v}


class FilteredComplex:
    """A complex with a decreasing filtration F^0 = C ⊇ F^1 ⊇ ... ⊇ F^m ⊇ 0.

    ``filtration[p][n]`` is a list of spanning vectors of F^p in degree n.
    F^0 must be the whole complex; closure under d and the inclusions are
    checked at construction.
    """

    def __init__(self, ambient: ChainComplex, filtration: Sequence[Mapping[int, Sequence[Mapping[int, object]]]]):
        self.ambient = ambient
        self.levels: List[Dict[int, _Subspace]] = []
        for p, level in enumerate(filtration):
            spaces = {}
            for n in ambient.degrees():
                spaces[n] = _Subspace(level.get(n, ()), ambient.dim(n))
            self.levels.append(spaces)
        if not self.levels:
            raise ComplexError("empty filtration")
        for n in ambient.degrees():
            if self.levels[0][n].dim != ambient.dim(n):
                raise ComplexError(f"F^0 is not the whole space in degree {n}")
        for p in range(1, len(self.levels)):
            for n in ambient.degrees():
                for row in self.levels[p][n].rows:
                    if not self.levels[p - 1][n].contains(row):
                        raise ComplexError(f"F^{p} not contained in F^{p - 1} in degree {n}")
        for p, spaces in enumerate(self.levels):
            for n in ambient.degrees():
                if n + 1 not in ambient.dims:
                    continue
                tgt = self.F(p, n + 1)
                for row in spaces[n].rows:
                    if not tgt.contains(_apply(ambient.d(n), row)):
                        raise ComplexError(f"F^{p} is not closed under d in degree {n}")

    @property
    def length(self) -> int:
        return len(self.levels)

    def F(self, p: int, n: int) -> _Subspace:
        if p <= 0:
            p = 0
        if p >= len(self.levels):
            return _Subspace((), self.ambient.dim(n))
        sp = self.levels[p].get(n)
        return sp if sp is not None else _Subspace((), self.ambient.dim(n))

    # Z_r^{p,n} = {x in F^p C^n : dx in F^{p+r}}
    def Z(self, r: int, p: int, n: int) -> List[Vector]:
        fp = self.F(p, n)
        if not fp.dim:
            return []
        tgt = self.F(p + r, n + 1)
        d = self.ambient.d(n)
        images = [tgt.normal_form(_apply(d, b)) for b in fp.rows]
        m = SparseMatrix.from_columns(images, self.ambient.dim(n + 1))
        ker = kernel_basis(m)
        return [_combine(k, fp.rows) for k in ker]

    def denominator(self, r: int, p: int, n: int) -> List[Vector]:
        """Spanning set of Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1}."""
        vecs = list(self.Z(r - 1, p + 1, n))
        if n - 1 in self.ambient.dims:
            d = self.ambient.d(n - 1)
            vecs += [_apply(d, z) for z in self.Z(r - 1, p - r + 1, n - 1)]
        return [v for v in vecs if v]


class SpectralPage:
    """One page: dimensions E_r^{p,q} and ranks of the outgoing d_r."""

    def __init__(self, r: int, entries: Dict[Tuple[int, int], int], d_ranks: Dict[Tuple[int, int], int]):
        self.r = r
        self.entries = entries
        self.d_ranks = d_ranks
        self.converged = False

    def dim(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def total(self, n: int) -> int:
        return sum(v for (p, q), v in self.entries.items() if p + q == n)

    def to_json(self) -> dict:
        return {
            "page": self.r,
            "entries": [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(self.entries.items()) if v],
            "differential_ranks": [
                {"p": p, "q": q, "rank": v} for (p, q), v in sorted(self.d_ranks.items()) if v
            ],
            "converged": self.converged,
        }

    def to_csv(self) -> str:
        lines = ["p,q,dim"]
        for (p, q), v in sorted(self.entries.items()):
            if v:
                lines.append(f"{p},{q},{v}")
        return "\n".join(lines) + "\n"


def _dim_span(vectors: Sequence[Mapping[int, object]], n: int) -> int:
    return rank_rows([v for v in vectors if v], n)


def spectral_sequence(fc: FilteredComplex, r_max: int = 4) -> List[SpectralPage]:
    """Pages E_0 .. E_{r_max} of the spectral sequence of a filtered complex.

    E_r^{p,q} (total degree n = p + q) is Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}).
    The rank of d_r out of (p, q) is computed on representatives; the page
    identity E_{r+1} = H(E_r, d_r) is checked for every page and a violation
    raises ComplexError.  A page is marked converged once it and every later
    page computed carry only zero differentials.
    """
    amb = fc.ambient
    degs = amb.degrees()
    m = fc.length
    pages: List[SpectralPage] = []
    for r in range(0, r_max + 1):
        entries: Dict[Tuple[int, int], int] = {}
        dr: Dict[Tuple[int, int], int] = {}
        for n in degs:
            N = amb.dim(n)
            for p in range(0, m):
                num = fc.Z(r, p, n)
                e = _dim_span(num, N) - _dim_span(fc.denominator(r, p, n), N)
                if e:
                    entries[(p, n - p)] = e
                if n + 1 in amb.dims and num:
                    M = amb.dim(n + 1)
                    tgt_den = fc.denominator(r, p + r, n + 1)
                    imgs = [_apply(amb.d(n), z) for z in num]
                    rk = _dim_span(imgs + tgt_den, M) - _dim_span(tgt_den, M)
                    if rk:
                        dr[(p, n - p)] = rk
        pages.append(SpectralPage(r, entries, dr))
    # page identity and convergence flags
    for i in range(len(pages) - 1):
        cur, nxt = pages[i], pages[i + 1]
        r = cur.r
        keys = set(cur.entries) | set(nxt.entries)
        for (p, q) in keys:
            out_rank = cur.d_ranks.get((p, q), 0)
            in_rank = cur.d_ranks.get((p - r, q + r - 1), 0)
            if cur.dim(p, q) - out_rank - in_rank != nxt.dim(p, q):
                raise ComplexError(f"page identity fails at E_{r + 1}^{{{p},{q}}}")
    for i in range(len(pages)):
        if all(not pg.d_ranks for pg in pages[i:]):
            for pg in pages[i:]:
                pg.converged = True
            break
    return pages


def brutal_filtration(c: ChainComplex) -> List[Dict[int, List[Vector]]]:
    """F^p = degrees >= lo + p (the 'stupid' filtration), as spanning sets."""
    lo = c.lo
    levels = []
    for p in range(0, c.hi - lo + 2):
        level = {}
        for n in c.degrees():
            if n - lo >= p:
                level[n] = [{i: Fraction(1)} for i in range(c.dim(n))]
        levels.append(level)
    return levels


def weight_filtration(c: ChainComplex, weights: Mapping[int, Sequence[int]]) -> List[Dict[int, List[Vector]]]:
    """Filtration by a weight on basis vectors: F^p spanned by basis vectors of weight >= p.

    This is a filtration by subcomplexes only if d never lowers weight, which
    the FilteredComplex constructor verifies.
    """
    top = max((max(w) for w in weights.values() if w), default=0)
    levels = []
    for p in range(0, top + 1):
        level = {}
        for n in c.degrees():
            level[n] = [{i: Fraction(1)} for i, w in enumerate(weights.get(n, [])) if w >= p]
        levels.append(level)
    return levels
