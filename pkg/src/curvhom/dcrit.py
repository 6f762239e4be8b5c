"""Cyclic L-infinity data, their potentials, and Koszul models of derived critical loci.

Coordinates: U has basis e_0..e_{u-1} and x_i is the coordinate dual to e_i,
so Sym(U^vee) = Q[x].  A product l_k is stored on multisets I (sorted index
tuples of length k) with values in U^vee written in the dual basis.  The
pairing is the u x u matrix N with nu(phi, e_j) = sum_a phi_a N[a][j].

Multi-index convention used throughout: a symmetric tensor T on multisets is
turned into the polynomial sum_M T(M) x^M / M!  (M! = prod of factorials of
the exponents).  With this convention the potential, the adjoint map and
the function g all read the same way, and df = l^vee becomes a statement
about shifting multi-indices.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .complexes import ChainComplex, cohomology_dims, image_cohomology_dims
from .linalg import SparseMatrix
from .poly import Generator, PolyElement, TruncatedPolyAlgebra, _merge_sign, mono_key

Multiset = Tuple[int, ...]


class CyclicityError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _mono_of(ms: Multiset, n: int) -> Tuple[int, ...]:
    m = [0] * n
    for i in ms:
        m[i] += 1
    return tuple(m)


def _mfact(m: Sequence[int]) -> int:
    out = 1
    for e in m:
        out *= factorial(e)
    return out


def multisets(n: int, k: int) -> List[Multiset]:
    return list(itertools.combinations_with_replacement(range(n), k))


def _matinv(N: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(N)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(N)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ValueError("pairing is degenerate")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


class CyclicLInfinity:
    """U in degree 1, U^vee in degree 2, products l_k : Sym^k U -> U^vee."""

    def __init__(self, dim: int, pairing: Sequence[Sequence[object]],
                 products: Mapping[int, Mapping[Multiset, Sequence[object]]]):
        self.dim = dim
        self.pairing = [[Fraction(x) for x in row] for row in pairing]
        if len(self.pairing) != dim or any(len(r) != dim for r in self.pairing):
            raise ValueError("pairing must be dim x dim")
        _matinv(self.pairing)  # nondegeneracy
        self.products: Dict[int, Dict[Multiset, List[Fraction]]] = {}
        for k, table in products.items():
            k = int(k)
            if k < 2:
                raise ValueError("products start at k = 2")
            t = {}
            for I, v in table.items():
                I = tuple(sorted(I))
                if len(I) != k or any(not 0 <= i < dim for i in I):
                    raise ValueError(f"bad argument multiset {I} for l_{k}")
                vec = [Fraction(x) for x in v]
                if len(vec) != dim:
                    raise ValueError("product values must have length dim")
                if any(vec):
                    t[I] = vec
            self.products[k] = t

    @property
    def max_order(self) -> int:
        return max(self.products, default=1)

    def l(self, k: int, I: Multiset) -> List[Fraction]:
        return self.products.get(k, {}).get(tuple(sorted(I)), [Fraction(0)] * self.dim)

    def paired(self, k: int, I: Multiset, j: int) -> Fraction:
        """nu(l_k(e_I), e_j)."""
        v = self.l(k, I)
        return sum((v[a] * self.pairing[a][j] for a in range(self.dim)), Fraction(0))

    def cyclicity_witness(self) -> Optional[dict]:
        """First (k, multiset) where nu(l_k(...), .) fails to be fully symmetric."""
        for k in sorted(self.products):
            for J in multisets(self.dim, k + 1):
                vals = {}
                for pos in range(k + 1):
                    I = J[:pos] + J[pos + 1:]
                    vals[(I, J[pos])] = self.paired(k, I, J[pos])
                if len(set(vals.values())) > 1:
                    return {"k": k, "indices": list(J),
                            "values": {f"{list(I)}|{j}": str(v) for (I, j), v in vals.items()}}
        return None

    def is_cyclic(self) -> bool:
        return self.cyclicity_witness() is None

    def ring(self, trunc: int = 8) -> TruncatedPolyAlgebra:
        return TruncatedPolyAlgebra([Generator(f"x{i}") for i in range(self.dim)], trunc)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "pairing": [[str(x) for x in r] for r in self.pairing],
            "products": {str(k): [{"args": list(I), "value": [str(x) for x in v]}
                                  for I, v in sorted(t.items())]
                         for k, t in sorted(self.products.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CyclicLInfinity":
        prods = {}
        for k, rows in data.get("products", {}).items():
            prods[int(k)] = {tuple(r["args"]): [Fraction(x) for x in r["value"]] for r in rows}
        return cls(int(data["dim"]), [[Fraction(x) for x in r] for r in data["pairing"]], prods)


def potential_from_cyclic(data: CyclicLInfinity, trunc: int = 8, check: bool = True) -> PolyElement:
    """f = sum_k nu(l_k(u, ..., u), u) / (k+1)! with u = sum_i x_i e_i.

    The sum over ordered tuples is expanded literally, so the result does not
    presuppose cyclicity; with ``check`` a violation raises CyclicityError.
    """
    if check:
        w = data.cyclicity_witness()
        if w is not None:
            raise CyclicityError(f"cyclicity fails for l_{w['k']} at {w['indices']}", w)
    alg = data.ring(trunc)
    n = data.dim
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for k in data.products:
        for I in multisets(n, k):
            mI = _mono_of(I, n)
            mult = Fraction(factorial(k), _mfact(mI))   # ordered tuples giving the multiset I
            for j in range(n):
                c = data.paired(k, I, j)
                if not c:
                    continue
                m = tuple(a + (1 if i == j else 0) for i, a in enumerate(mI))
                terms[m] = terms.get(m, 0) + mult * c / factorial(k + 1)
    return PolyElement(alg, terms)


def adjoint_map(data: CyclicLInfinity, trunc: int = 8) -> List[PolyElement]:
    """l^vee = sum_k l_k^vee / k! as a list of polynomials, one per basis vector e_j.

    Component j is the function x -> sum_k nu(l_k(x, ..., x), e_j) / k!.
    """
    alg = data.ring(trunc)
    n = data.dim
    out = []
    for j in range(n):
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for k in data.products:
            for I in multisets(n, k):
                c = data.paired(k, I, j)
                if c:
                    m = _mono_of(I, n)
                    terms[m] = terms.get(m, 0) + c / _mfact(m)
        out.append(PolyElement(alg, terms))
    return out


def verify_lemma_AX(data: CyclicLInfinity, trunc: int = 8) -> dict:
    """Compare df with l^vee coefficient by coefficient.

    Both sides are computed from the raw products; no symmetrization is
    applied, so broken cyclicity shows up as a located discrepancy.
    """
    f = potential_from_cyclic(data, trunc, check=False)
    adj = adjoint_map(data, trunc)
    max_dev = Fraction(0)
    witness = None
    checked = 0
    for j in range(data.dim):
        lhs = f.partial(f"x{j}")
        rhs = adj[j]
        for m in sorted(set(lhs.terms) | set(rhs.terms), key=mono_key):
            checked += 1
            dev = abs(lhs.coefficient(m) - rhs.coefficient(m))
            if dev > max_dev:
                max_dev = dev
                if witness is None:
                    witness = {"component": j, "monomial": list(m),
                               "df": str(lhs.coefficient(m)), "adjoint": str(rhs.coefficient(m))}
    return {"holds": max_dev == 0, "max_deviation": str(max_dev), "witness": witness,
            "coefficients_checked": checked, "trunc": trunc}


def random_cyclic(dim: int, max_order: int = 4, seed: int = 0, height: int = 5,
                  pairing: str = "random") -> CyclicLInfinity:
    """Random cyclic instance: l_k(I) = S(I, .) N^{-1} for a symmetric tensor S."""
    rng = random.Random(seed)
    while True:
        if pairing == "identity":
            N = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        else:
            N = [[Fraction(rng.randint(-3, 3)) for _ in range(dim)] for _ in range(dim)]
        try:
            Ninv = _matinv(N)
            break
        except ValueError:
            continue
    prods = {}
    for k in range(2, max_order + 1):
        S = {J: Fraction(rng.randint(-height, height), rng.randint(1, 3)) for J in multisets(dim, k + 1)}
        table = {}
        for I in multisets(dim, k):
            row = [S[tuple(sorted(I + (j,)))] for j in range(dim)]
            table[I] = [sum((row[b] * Ninv[b][a] for b in range(dim)), Fraction(0)) for a in range(dim)]
        prods[k] = table
    return CyclicLInfinity(dim, N, prods)


def break_cyclicity(data: CyclicLInfinity, seed: int = 0) -> CyclicLInfinity:
    """Negative control: perturb one product coefficient so that cyclicity fails.

    In dimension one every product is cyclic, so there is nothing to break.
    """
    if data.dim < 2:
        raise ValueError("cyclicity cannot fail in dimension one")
    rng = random.Random(seed)
    while True:
        k = rng.choice(sorted(data.products) or [2])
        I = rng.choice(multisets(data.dim, k))
        prods = {kk: dict(t) for kk, t in data.products.items()}
        prods.setdefault(k, {})
        v = list(prods[k].get(I, [Fraction(0)] * data.dim))
        v[rng.randrange(data.dim)] += 1
        prods[k][I] = v
        out = CyclicLInfinity(data.dim, data.pairing, prods)
        if not out.is_cyclic():
            return out


# ---------------------------------------------------------------------------
# Koszul algebras


class KoszulDGA:
    """Lambda(xi_0..xi_{n-1}) ⊗ R_D with d(xi_i) = images[i], a derivation of degree +1.

    Basis elements are pairs (monomial, sorted subset of odd indices); the
    cohomological degree is minus the size of the subset.  d acts as the
    left derivation sum_i images[i] * d/d xi_i.
    """

    def __init__(self, ring: TruncatedPolyAlgebra, images: Sequence[PolyElement],
                 odd_names: Optional[Sequence[str]] = None):
        if ring.odd:
            raise ValueError("the coordinate ring must have even generators only")
        for p in images:
            if p.alg != ring:
                raise ValueError("differential images must live in the coordinate ring")
        self.ring = ring
        self.images = list(images)
        k = len(self.images)
        self.odd_names = list(odd_names) if odd_names else [f"xi{i}" for i in range(k)]
        monos = ring.monomials()
        self.basis: Dict[int, List[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = {}
        for s in range(k + 1):
            self.basis[-s] = [(m, S) for S in itertools.combinations(range(k), s) for m in monos]
        self.index = {n: {b: i for i, b in enumerate(bs)} for n, bs in self.basis.items()}
        self.complex = self._assemble()

    def _d_basis(self, m, S) -> Dict[Tuple, Fraction]:
        out: Dict[Tuple, Fraction] = {}
        D = self.ring.trunc
        for pos, s in enumerate(S):
            sign = -1 if pos % 2 else 1
            rest = S[:pos] + S[pos + 1:]
            for pm, c in self.images[s].terms.items():
                nm = tuple(a + b for a, b in zip(pm, m))
                if sum(nm) > D:
                    continue
                key = (nm, rest)
                out[key] = out.get(key, 0) + sign * c
        return {k: v for k, v in out.items() if v}

    def _assemble(self) -> ChainComplex:
        diffs = {}
        for n, bs in self.basis.items():
            if n == 0:
                continue
            tgt = self.index[n + 1]
            ents = []
            for j, (m, S) in enumerate(bs):
                for key, c in self._d_basis(m, S).items():
                    ents.append((tgt[key], j, c))
            diffs[n] = SparseMatrix(len(self.basis[n + 1]), len(bs), ents)
        dims = {n: len(b) for n, b in self.basis.items()}
        return ChainComplex(dims, diffs, labels=self.basis)

    # algebra structure on sparse elements {(mono, subset): coef}
    def multiply(self, a: Mapping, b: Mapping) -> Dict[Tuple, Fraction]:
        out: Dict[Tuple, Fraction] = {}
        D = self.ring.trunc
        for (m1, S1), c1 in a.items():
            for (m2, S2), c2 in b.items():
                sign, S = _merge_sign(S1, S2)
                if not sign:
                    continue
                m = tuple(x + y for x, y in zip(m1, m2))
                if sum(m) > D:
                    continue
                out[(m, S)] = out.get((m, S), 0) + sign * c1 * c2
        return {k: v for k, v in out.items() if v}

    def d(self, a: Mapping) -> Dict[Tuple, Fraction]:
        out: Dict[Tuple, Fraction] = {}
        for (m, S), c in a.items():
            for key, v in self._d_basis(m, S).items():
                out[key] = out.get(key, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def differential_table(self) -> Dict[str, PolyElement]:
        return dict(zip(self.odd_names, self.images))


def koszul_dga(f: PolyElement, odd_prefix: str = "xi") -> KoszulDGA:
    """dCrit(f): d(xi_i) = df/dx_i on the ring of f."""
    ring = f.alg
    return KoszulDGA(ring, [f.partial(n) for n in ring.names], [f"{odd_prefix}_{n}" for n in ring.names])


def dcrit_dga(f: PolyElement) -> KoszulDGA:
    return koszul_dga(f)


def _keep_map(big: KoszulDGA, small: KoszulDGA) -> Dict[int, List[int]]:
    keep = {}
    for n, bs in small.basis.items():
        keep[n] = [big.index[n][b] for b in bs]
    return keep


def stable_cohomology(build: Callable[[int], KoszulDGA], D: int) -> Dict[int, int]:
    """Image of H(K_{D+2}) -> H(K_D): the part of the truncated cohomology seen from above."""
    small, big = build(D), build(D + 2)
    return image_cohomology_dims(big.complex, small.complex, _keep_map(big, small))


def koszul_cohomology(build: Callable[[int], KoszulDGA], D: int = 8) -> dict:
    """Stable-image cohomology at D with a flag comparing it against D + 2."""
    a = stable_cohomology(build, D)
    b = stable_cohomology(build, D + 2)
    return {"dims": a, "dims_next": b, "stable": a == b, "trunc": D}


def dcrit_cohomology(f: PolyElement, D: Optional[int] = None) -> dict:
    D = f.alg.trunc if D is None else D
    return koszul_cohomology(lambda t: koszul_dga(PolyElement(f.alg.with_trunc(t), f.terms)), D)


# ---------------------------------------------------------------------------
# the plus model


class PlusModelData:
    """Normal data attached to a cyclic instance.

    ``p1[k][(I, a)]`` is the value in W_2 of the product Sym^{k-1} U ⊗ W_1 -> W_2,
    ``p2[k][(I, b)]`` the value in W_1^vee of Sym^{k-1} U ⊗ W_2^vee -> W_1^vee and
    ``p3[k][(J, b, a)]`` the value in U^vee of Sym^{k-2} U ⊗ W_2^vee ⊗ W_1 -> U^vee.
    All three must be restrictions of a single function
    g = sum G_ab(x) w_a v_b, with w the coordinates on W_1 and v those on W_2^vee.
    """

    def __init__(self, base: CyclicLInfinity, w1: int, w2: int,
                 p1: Mapping = None, p2: Mapping = None, p3: Mapping = None, check: bool = True):
        self.base = base
        self.w1 = w1
        self.w2 = w2
        self.p1 = {int(k): {(tuple(sorted(I)), a): [Fraction(x) for x in v] for (I, a), v in t.items()}
                   for k, t in (p1 or {}).items()}
        self.p2 = {int(k): {(tuple(sorted(I)), b): [Fraction(x) for x in v] for (I, b), v in t.items()}
                   for k, t in (p2 or {}).items()}
        self.p3 = {int(k): {(tuple(sorted(J)), b, a): [Fraction(x) for x in v] for (J, b, a), v in t.items()}
                   for k, t in (p3 or {}).items()}
        if check:
            w = self.consistency_witness()
            if w is not None:
                raise ValueError(f"normal products are not partials of one function g: {w}")

    def _get(self, table, k, key, length):
        return table.get(k, {}).get(key, [Fraction(0)] * length)

    def consistency_witness(self) -> Optional[dict]:
        n = self.base.dim
        ks = set(self.p1) | set(self.p2) | set(self.p3)
        for k in sorted(ks):
            if k < 2:
                return {"reason": "order below 2", "k": k}
            for I in multisets(n, k - 1):
                for a in range(self.w1):
                    for b in range(self.w2):
                        x = self._get(self.p1, k, (I, a), self.w2)[b]
                        y = self._get(self.p2, k, (I, b), self.w1)[a]
                        if x != y:
                            return {"k": k, "args": list(I), "a": a, "b": b, "p1": str(x), "p2": str(y)}
            if k >= 2:
                for J in multisets(n, k - 2):
                    for a in range(self.w1):
                        for b in range(self.w2):
                            v = self._get(self.p3, k, (J, b, a), n)
                            for i in range(n):
                                x = self._get(self.p1, k, (tuple(sorted(J + (i,))), a), self.w2)[b]
                                if v[i] != x:
                                    return {"k": k, "args": list(J), "a": a, "b": b, "i": i,
                                            "p3": str(v[i]), "p1": str(x)}
        return None

    def ring(self, trunc: int) -> TruncatedPolyAlgebra:
        n = self.base.dim
        names = [f"x{i}" for i in range(n)] + [f"v{b}" for b in range(self.w2)] + [f"w{a}" for a in range(self.w1)]
        return TruncatedPolyAlgebra([Generator(s) for s in names], trunc)

    def g(self, trunc: int = 8) -> PolyElement:
        """g = sum_k sum_{I,a,b} P1_k(I, a)[b] x^I / I! * w_a * v_b."""
        alg = self.ring(trunc)
        n = self.base.dim
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for k, table in self.p1.items():
            for (I, a), vec in table.items():
                mI = _mono_of(I, n)
                for b, c in enumerate(vec):
                    if not c:
                        continue
                    m = list(mI) + [0] * (self.w2 + self.w1)
                    m[n + b] += 1
                    m[n + self.w2 + a] += 1
                    terms[tuple(m)] = terms.get(tuple(m), 0) + c / _mfact(mI)
        return PolyElement(alg, terms)

    def to_json(self) -> dict:
        def dump(t, keyf):
            return {str(k): [dict(keyf(key), value=[str(x) for x in v]) for key, v in sorted(tab.items())]
                    for k, tab in sorted(t.items())}
        return {
            "base": self.base.to_json(), "w1": self.w1, "w2": self.w2,
            "p1": dump(self.p1, lambda key: {"args": list(key[0]), "a": key[1]}),
            "p2": dump(self.p2, lambda key: {"args": list(key[0]), "b": key[1]}),
            "p3": dump(self.p3, lambda key: {"args": list(key[0]), "b": key[1], "a": key[2]}),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PlusModelData":
        base = CyclicLInfinity.from_json(data["base"])

        def load(t, keyf):
            return {int(k): {keyf(r): r["value"] for r in rows} for k, rows in (t or {}).items()}
        return cls(base, int(data.get("w1", 0)), int(data.get("w2", 0)),
                   load(data.get("p1"), lambda r: (tuple(r["args"]), r["a"])),
                   load(data.get("p2"), lambda r: (tuple(r["args"]), r["b"])),
                   load(data.get("p3"), lambda r: (tuple(r["args"]), r["b"], r["a"])))


def plus_model_from_g(base: CyclicLInfinity, w1: int, w2: int,
                      G: Mapping[Tuple[Tuple[int, ...], int, int], object]) -> PlusModelData:
    """Build the three consistent families from coefficients G[(M, a, b)] (M a multiset)."""
    p1: Dict[int, Dict] = {}
    p2: Dict[int, Dict] = {}
    p3: Dict[int, Dict] = {}
    n = base.dim
    for (M, a, b), c in G.items():
        M = tuple(sorted(M))
        k = len(M) + 1
        p1.setdefault(k, {}).setdefault((M, a), [Fraction(0)] * w2)[b] += Fraction(c)
        p2.setdefault(k, {}).setdefault((M, b), [Fraction(0)] * w1)[a] += Fraction(c)
        if k >= 2 and M:
            for pos in range(len(M)):
                if pos and M[pos] == M[pos - 1]:
                    continue
                J = M[:pos] + M[pos + 1:]
                p3.setdefault(k, {}).setdefault((J, b, a), [Fraction(0)] * n)[M[pos]] += Fraction(c)
    return PlusModelData(base, w1, w2, p1, p2, p3)


def random_plus_model(dim: int, w1: int, w2: int, max_order: int = 3, seed: int = 0) -> PlusModelData:
    rng = random.Random(seed)
    base = random_cyclic(dim, max_order, seed=rng.randrange(10 ** 6))
    G = {}
    for k in range(2, max_order + 1):
        for M in multisets(dim, k - 1):
            for a in range(w1):
                for b in range(w2):
                    c = rng.randint(-3, 3)
                    if c:
                        G[(M, a, b)] = c
    return plus_model_from_g(base, w1, w2, G)


def build_plus_model(data: PlusModelData, trunc: int = 8) -> KoszulDGA:
    """Koszul model of A_+ assembled from the product tensors.

    Odd generators: xi_i (U[1]), eta_b (W_2^vee[1]), zeta_a (W_1[1]), paired with
    the even coordinates x_i, v_b, w_a.  Differentials:
      d xi_i   = (l^vee)_i + sum P3_k(J, b, a)[i] x^J/J! v_b w_a
      d eta_b  = sum P1_k(I, a)[b] x^I/I! w_a
      d zeta_a = sum P2_k(I, b)[a] x^I/I! v_b
    """
    alg = data.ring(trunc)
    n, w1, w2 = data.base.dim, data.w1, data.w2
    def vmono(I, extra):
        m = list(_mono_of(I, n)) + [0] * (w1 + w2)
        for pos in extra:
            m[pos] += 1
        return tuple(m)

    adj = adjoint_map(data.base, trunc)
    xi = []
    for i in range(n):
        terms = {tuple(list(m) + [0] * (w1 + w2)): c for m, c in adj[i].terms.items()}
        for k, table in data.p3.items():
            for (J, b, a), vec in table.items():
                if vec[i]:
                    m = vmono(J, [n + b, n + w2 + a])
                    terms[m] = terms.get(m, 0) + vec[i] / _mfact(_mono_of(J, n))
        xi.append(PolyElement(alg, terms))
    eta = []
    for b in range(w2):
        terms = {}
        for k, table in data.p1.items():
            for (I, a), vec in table.items():
                if vec[b]:
                    m = vmono(I, [n + w2 + a])
                    terms[m] = terms.get(m, 0) + vec[b] / _mfact(_mono_of(I, n))
        eta.append(PolyElement(alg, terms))
    zeta = []
    for a in range(w1):
        terms = {}
        for k, table in data.p2.items():
            for (I, b), vec in table.items():
                if vec[a]:
                    m = vmono(I, [n + b])
                    terms[m] = terms.get(m, 0) + vec[a] / _mfact(_mono_of(I, n))
        zeta.append(PolyElement(alg, terms))
    names = [f"xi_x{i}" for i in range(n)] + [f"eta_v{b}" for b in range(w2)] + [f"zeta_w{a}" for a in range(w1)]
    return KoszulDGA(alg, xi + eta + zeta, names)


def total_potential(data: PlusModelData, trunc: int = 8) -> PolyElement:
    """W = f + g on U ⊕ W_2^vee ⊕ W_1."""
    alg = data.ring(trunc)
    n = data.base.dim
    f = potential_from_cyclic(data.base, trunc)
    pad = data.w1 + data.w2
    f_big = PolyElement(alg, {tuple(list(m) + [0] * pad): c for m, c in f.terms.items()})
    return f_big + data.g(trunc)


def verify_lemma_fg(data: PlusModelData, trunc: int = 6) -> dict:
    """Cohomology of the A_+ model against dCrit(W), W = f + g, at D and D + 2.

    Also reports whether the two differentials agree generator by generator.
    """
    rows = []
    ok = True
    same_diff = True
    for D in (trunc, trunc + 2):
        plus = build_plus_model(data, D)
        dcrit = koszul_dga(total_potential(data, D))
        same_diff = same_diff and all(a == b for a, b in zip(plus.images, dcrit.images))
        hp = cohomology_dims(plus.complex)
        hd = cohomology_dims(dcrit.complex)
        rows.append({"trunc": D, "plus": hp, "dcrit": hd, "equal": hp == hd})
        ok = ok and hp == hd
    return {"holds": ok, "differentials_agree": same_diff, "tables": rows}
