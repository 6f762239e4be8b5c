"""Matrix factorizations over truncated polynomial rings and their hom complexes.

An object is (E0, E1, d0 : E0 -> E1, d1 : E1 -> E0) with d1 d0 = f and
d0 d1 = f.  Maps are matrices of polynomials acting on column vectors, so
d0 has shape rank(E1) x rank(E0).

Hom cohomology is computed over R/m^{D+1}.  A truncated hom complex has
spurious classes supported near the truncation degree; we report the image
of the cohomology at D + 2 in the cohomology at D, which removes them for
isolated singularities, and flag the answer stable when it agrees with the
same computation one step up.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exprparse import to_element
from .linalg import SparseMatrix, projected_kernel_dim, rank_rows
from .poly import Generator, PolyElement, TruncatedPolyAlgebra

PolyMatrix = List[List[PolyElement]]


def _zero_matrix(alg, rows, cols) -> PolyMatrix:
    return [[alg.zero() for _ in range(cols)] for _ in range(rows)]


def _matmul(a: PolyMatrix, b: PolyMatrix, alg, inner: int) -> PolyMatrix:
    rows = len(a)
    cols = len(b[0]) if b else 0
    out = _zero_matrix(alg, rows, cols)
    for i in range(rows):
        for j in range(cols):
            acc = alg.zero()
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            out[i][j] = acc
    return out


class MatrixFactorization:
    """A matrix factorization of f over an even truncated polynomial ring."""

    def __init__(self, ring: TruncatedPolyAlgebra, f: PolyElement, ranks: Sequence[int],
                 d0: Sequence[Sequence[object]], d1: Sequence[Sequence[object]], check: bool = True):
        if ring.odd:
            raise ValueError("matrix factorizations need even generators only")
        if f.alg != ring:
            raise ValueError("potential does not live in the ring")
        self.ring = ring
        self.f = f
        self.r0, self.r1 = int(ranks[0]), int(ranks[1])
        self.d0 = self._coerce(d0, self.r1, self.r0, "d0")
        self.d1 = self._coerce(d1, self.r0, self.r1, "d1")
        if check:
            rep = self.validate()
            if not rep["valid"]:
                raise ValueError(f"not a matrix factorization: {rep['witness']}")

    def _coerce(self, m, rows, cols, name) -> PolyMatrix:
        if rows == 0 or cols == 0:
            return _zero_matrix(self.ring, rows, cols)
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ValueError(f"{name} must be {rows} x {cols}")
        out = []
        for r in m:
            row = []
            for x in r:
                if isinstance(x, PolyElement):
                    if x.alg != self.ring:
                        raise ValueError(f"{name} entry lives in another ring")
                    row.append(x)
                elif isinstance(x, str):
                    row.append(to_element(x, self.ring))
                else:
                    row.append(self.ring.const(x))
            out.append(row)
        return out

    def validate(self) -> dict:
        """Check d1 d0 = f id and d0 d1 = f id; locate the first failing entry."""
        alg = self.ring
        for name, prod, n in (("d1*d0", _matmul(self.d1, self.d0, alg, self.r1), self.r0),
                              ("d0*d1", _matmul(self.d0, self.d1, alg, self.r0), self.r1)):
            for i in range(n):
                for j in range(n):
                    want = self.f if i == j else alg.zero()
                    if prod[i][j] != want:
                        return {"valid": False, "witness": {"product": name, "entry": [i, j],
                                                             "got": str(prod[i][j]), "expected": str(want)}}
        return {"valid": True, "witness": None}

    def with_trunc(self, D: int) -> "MatrixFactorization":
        ring = self.ring.with_trunc(D)
        conv = lambda m: [[PolyElement(ring, x.terms) for x in r] for r in m]
        return MatrixFactorization(ring, PolyElement(ring, self.f.terms), (self.r0, self.r1),
                                   conv(self.d0), conv(self.d1), check=D <= self.ring.trunc)

    def __eq__(self, other):
        return (isinstance(other, MatrixFactorization) and self.ring == other.ring and self.f == other.f
                and (self.r0, self.r1) == (other.r0, other.r1) and self.d0 == other.d0 and self.d1 == other.d1)

    def __repr__(self):
        return f"MatrixFactorization(ranks=({self.r0}, {self.r1}), f={self.f})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "f": str(self.f),
            "ranks": [self.r0, self.r1],
            "d0": [[str(x) for x in r] for r in self.d0],
            "d1": [[str(x) for x in r] for r in self.d1],
        }

    @classmethod
    def from_json(cls, data: Mapping, trunc: Optional[int] = None) -> "MatrixFactorization":
        ring_spec = data["ring"]
        if isinstance(ring_spec, Mapping):
            ring = TruncatedPolyAlgebra.from_json(ring_spec)
        else:
            ring = TruncatedPolyAlgebra([Generator(n) for n in ring_spec], 8)
        if trunc is not None:
            ring = ring.with_trunc(trunc)
        f = to_element(data["f"], ring)
        return cls(ring, f, data["ranks"], data.get("d0", []), data.get("d1", []))


def mf_validate(m: MatrixFactorization) -> dict:
    return m.validate()


def mf_shift(m: MatrixFactorization) -> MatrixFactorization:
    """E[1] = (E1, E0, -d1, -d0): swap the two modules and negate both maps."""
    neg = lambda mat: [[-x for x in r] for r in mat]
    return MatrixFactorization(m.ring, m.f, (m.r1, m.r0), neg(m.d1), neg(m.d0), check=False)


def mf_zero(ring: TruncatedPolyAlgebra, f: PolyElement) -> MatrixFactorization:
    return MatrixFactorization(ring, f, (0, 0), [], [])


def mf_direct_sum(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    if a.ring != b.ring or a.f != b.f:
        raise ValueError("direct sum needs the same ring and potential")
    alg = a.ring

    def block(x, y, xr, xc, yr, yc):
        out = _zero_matrix(alg, xr + yr, xc + yc)
        for i in range(xr):
            for j in range(xc):
                out[i][j] = x[i][j]
        for i in range(yr):
            for j in range(yc):
                out[xr + i][xc + j] = y[i][j]
        return out

    d0 = block(a.d0, b.d0, a.r1, a.r0, b.r1, b.r0)
    d1 = block(a.d1, b.d1, a.r0, a.r1, b.r0, b.r1)
    return MatrixFactorization(alg, a.f, (a.r0 + b.r0, a.r1 + b.r1), d0, d1)


def _rename_into(p: PolyElement, ring: TruncatedPolyAlgebra) -> PolyElement:
    idx = [ring.index[n] for n in p.alg.names]
    terms = {}
    for m, c in p.terms.items():
        nm = [0] * ring.ngens
        for i, e in zip(idx, m):
            nm[i] += e
        terms[tuple(nm)] = c
    return PolyElement(ring, terms)


def mf_tensor(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    """Tensor product over the joint polynomial ring: a factorization of f_a + f_b.

    E0 = A0⊗B0 ⊕ A1⊗B1, E1 = A1⊗B0 ⊕ A0⊗B1, d = d_a ⊗ 1 + (-1)^{|a|} 1 ⊗ d_b.
    """
    names = list(a.ring.names) + [n for n in b.ring.names if n not in a.ring.index]
    ring = TruncatedPolyAlgebra([Generator(n) for n in names], max(a.ring.trunc, b.ring.trunc))
    f = _rename_into(a.f, ring) + _rename_into(b.f, ring)
    ra, rb = (a.r0, a.r1), (b.r0, b.r1)
    # component blocks of even / odd parts
    even = [(0, 0), (1, 1)]
    odd = [(1, 0), (0, 1)]

    def offsets(parts):
        out, pos = {}, 0
        for (i, j) in parts:
            out[(i, j)] = pos
            pos += ra[i] * rb[j]
        return out, pos

    off_e, n_e = offsets(even)
    off_o, n_o = offsets(odd)
    d0 = _zero_matrix(ring, n_o, n_e)
    d1 = _zero_matrix(ring, n_e, n_o)
    amap = {0: a.d0, 1: a.d1}   # from A_i to A_{1-i}
    bmap = {0: b.d0, 1: b.d1}

    def put(src_parts, src_off, tgt_off, mat):
        for (i, j) in src_parts:
            s0 = src_off[(i, j)]
            # d_a ⊗ 1
            ti, tj = 1 - i, j
            t0 = tgt_off[(ti, tj)]
            for p in range(ra[i]):
                for q in range(rb[j]):
                    for p2 in range(ra[ti]):
                        x = amap[i][p2][p]
                        if x:
                            mat[t0 + p2 * rb[tj] + q][s0 + p * rb[j] + q] += _rename_into(x, ring)
            # (-1)^i 1 ⊗ d_b
            ti, tj = i, 1 - j
            t0 = tgt_off[(ti, tj)]
            sign = -1 if i else 1
            for p in range(ra[i]):
                for q in range(rb[j]):
                    for q2 in range(rb[tj]):
                        y = bmap[j][q2][q]
                        if y:
                            mat[t0 + p * rb[tj] + q2][s0 + p * rb[j] + q] += _rename_into(y, ring) * sign

    put(even, off_e, off_o, d0)
    put(odd, off_o, off_e, d1)
    return MatrixFactorization(ring, f, (n_e, n_o), d0, d1)


def embed(m: MatrixFactorization, ring: TruncatedPolyAlgebra, f: Optional[PolyElement] = None) -> MatrixFactorization:
    """The same matrices viewed over a larger ring (generator names must match)."""
    conv = lambda mat: [[_rename_into(x, ring) for x in r] for r in mat]
    return MatrixFactorization(ring, f if f is not None else _rename_into(m.f, ring),
                               (m.r0, m.r1), conv(m.d0), conv(m.d1))


# ---------------------------------------------------------------------------
# hom complexes


class MFHomComplex:
    """The 2-periodic complex Hom(a, b) over R/m^{D+1}.

    Even part: Hom(A0, B0) ⊕ Hom(A1, B1); odd part: Hom(A0, B1) ⊕ Hom(A1, B0).
    With δ the differential of a and λ that of b:
      h0(φ) = λ∘φ - φ∘δ   (even -> odd)
      h1(ψ) = λ∘ψ + ψ∘δ   (odd -> even)
    """

    def __init__(self, a: MatrixFactorization, b: MatrixFactorization, D: Optional[int] = None):
        if a.ring.gens != b.ring.gens or a.f.terms != b.f.terms:
            raise ValueError("hom complex needs the same ring and potential")
        D = a.ring.trunc if D is None else D
        self.a = a.with_trunc(D) if D != a.ring.trunc else a
        self.b = b.with_trunc(D) if D != b.ring.trunc else b
        self.D = D
        self.ring = self.a.ring
        self.monos = self.ring.monomials()
        self.mindex = {m: i for i, m in enumerate(self.monos)}
        ra, rb = (a.r0, a.r1), (b.r0, b.r1)
        self.even_blocks = [(0, 0), (1, 1)]   # (source index i, target index j): Hom(A_i, B_j)
        self.odd_blocks = [(0, 1), (1, 0)]
        self.ra, self.rb = ra, rb
        self.even_basis = self._basis(self.even_blocks)
        self.odd_basis = self._basis(self.odd_blocks)
        self.even_index = {k: i for i, k in enumerate(self.even_basis)}
        self.odd_index = {k: i for i, k in enumerate(self.odd_basis)}
        self.h0 = self._assemble(self.even_basis, self.odd_index, sign=-1)
        self.h1 = self._assemble(self.odd_basis, self.even_index, sign=+1)

    def _basis(self, blocks):
        out = []
        for (i, j) in blocks:
            for r in range(self.rb[j]):
                for c in range(self.ra[i]):
                    for m in self.monos:
                        out.append((i, j, r, c, m))
        return out

    def _mul_mono(self, p: PolyElement, m) -> Dict[Tuple[int, ...], Fraction]:
        out = {}
        D = self.D
        for pm, c in p.terms.items():
            nm = tuple(x + y for x, y in zip(pm, m))
            if sum(nm) <= D:
                out[nm] = c
        return out

    def _image(self, key, sign) -> Dict[Tuple, Fraction]:
        """λ∘φ + sign·φ∘δ for φ the elementary matrix x^m E_{rc} in Hom(A_i, B_j)."""
        i, j, r, c, m = key
        lam = {0: self.b.d0, 1: self.b.d1}
        dlt = {0: self.a.d0, 1: self.a.d1}
        out: Dict[Tuple, Fraction] = {}
        # λ∘φ : A_i -> B_{1-j}; entry (r2, c) gets λ_j[r2][r] * x^m
        tj = 1 - j
        for r2 in range(self.rb[tj]):
            p = lam[j][r2][r]
            if p:
                for nm, v in self._mul_mono(p, m).items():
                    k = (i, tj, r2, c, nm)
                    out[k] = out.get(k, 0) + v
        # φ∘δ : A_{1-i} -> B_j; δ_{1-i} maps A_{1-i} -> A_i; entry (r, c2) gets x^m * δ[c][c2]
        si = 1 - i
        for c2 in range(self.ra[si]):
            p = dlt[si][c][c2]
            if p:
                for nm, v in self._mul_mono(p, m).items():
                    k = (si, j, r, c2, nm)
                    out[k] = out.get(k, 0) + sign * v
        return {k: v for k, v in out.items() if v}

    def _assemble(self, src, tgt_index, sign) -> SparseMatrix:
        ents = []
        for col, key in enumerate(src):
            for k, v in self._image(key, sign).items():
                ents.append((tgt_index[k], col, v))
        return SparseMatrix(len(tgt_index), len(src), ents)

    def check(self) -> bool:
        """h1∘h0 = 0 and h0∘h1 = 0 exactly."""
        return not (self.h1 @ self.h0).nnz() and not (self.h0 @ self.h1).nnz()

    def raw_cohomology(self) -> Tuple[int, int]:
        r0 = rank_rows(self.h0.row_dicts(), self.h0.ncols)
        r1 = rank_rows(self.h1.row_dicts(), self.h1.ncols)
        return len(self.even_basis) - r0 - r1, len(self.odd_basis) - r1 - r0


def _stable_image(big: MFHomComplex, small: MFHomComplex) -> Tuple[int, int]:
    out = []
    for basis_big, basis_small, h_big, h_small_in in (
        (big.even_basis, small.even_basis, big.h0, small.h1),
        (big.odd_basis, small.odd_basis, big.h1, small.h0),
    ):
        kept = set(basis_small)
        drop = [i for i, k in enumerate(basis_big) if k not in kept]
        zp = projected_kernel_dim(h_big.row_dicts(), len(basis_big), drop)
        b = rank_rows(h_small_in.row_dicts(), h_small_in.ncols)
        out.append(zp - b)
    return out[0], out[1]


def mf_hom_cohomology(a: MatrixFactorization, b: MatrixFactorization, D: Optional[int] = None) -> dict:
    """(even, odd) dims of H(Hom(a, b)) at truncation D with a D vs D+2 stability flag."""
    D = a.ring.trunc if D is None else D
    cs = {t: MFHomComplex(a, b, t) for t in (D, D + 2, D + 4)}
    for c in cs.values():
        if not c.check():
            raise ArithmeticError("hom complex differentials do not square to zero")
    at_d = _stable_image(cs[D + 2], cs[D])
    at_next = _stable_image(cs[D + 4], cs[D + 2])
    return {"even": at_d[0], "odd": at_d[1], "next": list(at_next),
            "stable": at_d == at_next, "trunc": D}


def koszul_mf(ring: TruncatedPolyAlgebra, f: PolyElement, a: str, b: str) -> MatrixFactorization:
    """The rank-one factorization (a, b) with a*b = f, entries given as expressions."""
    return MatrixFactorization(ring, f, (1, 1), [[a]], [[b]])
