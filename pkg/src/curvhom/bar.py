"""Normalized bar complexes and Tor over finite-dimensional augmented algebras.

The algebra comes with a basis whose first element is the unit and whose
other elements span the augmentation ideal.  Modules are finite-dimensional
with one action matrix per algebra basis element.  When the algebra and the
modules are multigraded (monomial quotients of polynomial rings) the bar
complex splits by multidegree, which keeps every piece small.

For a truncated polynomial ring Q[x, y]/m^{D+1} the multidegree pieces with
total degree <= D coincide with those of the untruncated polynomial ring, so
only those are reported: anything above D would measure the truncation rather
than the algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .complexes import ChainComplex, cohomology_dims
from .linalg import SparseMatrix, rank, rank_rows, solve
from .poly import mono_key

Weight = Tuple[int, ...]


class FiniteAlgebra:
    """Finite-dimensional augmented algebra with structure constants.

    ``mult[(i, j)]`` is a sparse vector {k: c}; basis element 0 is the unit and
    the augmentation kills every other basis element.
    """

    def __init__(self, labels: Sequence, mult: Mapping[Tuple[int, int], Mapping[int, object]],
                 weights: Optional[Sequence[Weight]] = None, commutative: Optional[bool] = None):
        self.labels = list(labels)
        self.n = len(self.labels)
        if self.n == 0:
            raise ValueError("algebra needs at least the unit")
        self.mult = {k: {c: Fraction(v) for c, v in vec.items() if v} for k, vec in mult.items()}
        self.weights = [tuple(w) for w in weights] if weights is not None else None
        for i in range(self.n):
            if self.mul_basis(0, i) != {i: 1} or self.mul_basis(i, 0) != {i: 1}:
                raise ValueError("basis element 0 must be a two-sided unit")
        for i in range(1, self.n):
            for j in range(1, self.n):
                if self.mul_basis(i, j).get(0):
                    raise ValueError("augmentation ideal is not closed under products")
        for i, j, k in itertools.product(range(self.n), repeat=3):
            if self.mul(self.mul_basis(i, j), {k: 1}) != self.mul({i: 1}, self.mul_basis(j, k)):
                raise ValueError(f"multiplication not associative on ({i}, {j}, {k})")
        if commutative is None:
            commutative = all(self.mul_basis(i, j) == self.mul_basis(j, i)
                              for i in range(self.n) for j in range(self.n))
        self.commutative = commutative

    def mul_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == 0:
            return {j: Fraction(1)}
        if j == 0:
            return {i: Fraction(1)}
        return dict(self.mult.get((i, j), {}))

    def mul(self, a: Mapping[int, object], b: Mapping[int, object]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, z in self.mul_basis(i, j).items():
                    out[k] = out.get(k, 0) + x * y * z
        return {k: v for k, v in out.items() if v}

    @property
    def dim(self) -> int:
        return self.n


class FiniteModule:
    """Finite-dimensional module given by action matrices (one per algebra basis element).

    ``side`` is "left" (a·m) or "right" (m·a).  ``act[i]`` is a SparseMatrix
    acting on column vectors of module coordinates.
    """

    def __init__(self, alg: FiniteAlgebra, labels: Sequence, act: Mapping[int, SparseMatrix],
                 side: str = "left", weights: Optional[Sequence[Weight]] = None):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.alg = alg
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.side = side
        self.act = {}
        for i in range(alg.n):
            m = act.get(i)
            if i == 0:
                m = SparseMatrix.identity(self.dim) if m is None else m
            if m is None:
                m = SparseMatrix.zero(self.dim, self.dim)
            if m.shape != (self.dim, self.dim):
                raise ValueError("action matrix has wrong shape")
            self.act[i] = m
        self.weights = [tuple(w) for w in weights] if weights is not None else None
        self._check()

    def action(self, i: int, v: Mapping[int, object]) -> Dict[int, Fraction]:
        return self.act[i].apply(v)

    def _check(self):
        if self.act[0] != SparseMatrix.identity(self.dim):
            raise ValueError("unit does not act as the identity")
        for i in range(self.alg.n):
            for j in range(self.alg.n):
                prod = self.alg.mul_basis(i, j)
                lhs = SparseMatrix.zero(self.dim, self.dim)
                for k, c in prod.items():
                    lhs = lhs + self.act[k].scale(c)
                if self.side == "left":
                    rhs = self.act[i] @ self.act[j]
                else:
                    rhs = self.act[j] @ self.act[i]
                if lhs != rhs:
                    raise ValueError(f"module action not associative on basis pair ({i}, {j})")


class AugmentedAlgebraModulePair:
    """An augmented algebra A with a right module M and a left module N."""

    def __init__(self, alg: FiniteAlgebra, M: FiniteModule, N: FiniteModule,
                 degree_cap: Optional[int] = None):
        if M.alg is not alg or N.alg is not alg:
            raise ValueError("modules must be over the given algebra")
        if M.side != "right" and not alg.commutative:
            raise ValueError("M must be a right module")
        if N.side != "left" and not alg.commutative:
            raise ValueError("N must be a left module")
        self.alg = alg
        self.M = M
        self.N = N
        self.degree_cap = degree_cap
        self.graded = alg.weights is not None and M.weights is not None and N.weights is not None

    # bar complex -----------------------------------------------------------

    def _chains(self, n: int, weight: Optional[Weight]) -> List[Tuple[int, ...]]:
        A, M, N = self.alg, self.M, self.N
        out = []
        if weight is None:
            for m in range(M.dim):
                for word in itertools.product(range(1, A.n), repeat=n):
                    for x in range(N.dim):
                        out.append((m,) + word + (x,))
            return out
        # graded: prune by partial weights
        zero = tuple(0 for _ in weight)

        def fits(w):
            return all(a <= b for a, b in zip(w, weight))

        def add(a, b):
            return tuple(x + y for x, y in zip(a, b))

        def rec(prefix, w, k):
            if k == n:
                for x in range(N.dim):
                    if add(w, N.weights[x]) == weight:
                        out.append(prefix + (x,))
                return
            for a in range(1, A.n):
                w2 = add(w, A.weights[a])
                if fits(w2):
                    rec(prefix + (a,), w2, k + 1)

        for m in range(M.dim):
            wm = M.weights[m]
            if fits(wm):
                rec((m,), wm, 0)
        del zero
        return out

    def _bar_d(self, chain: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        A, M, N = self.alg, self.M, self.N
        n = len(chain) - 2
        m, word, x = chain[0], chain[1:-1], chain[-1]
        out: Dict[Tuple[int, ...], Fraction] = {}

        def put(key, c):
            out[key] = out.get(key, 0) + c

        if n == 0:
            return {}
        for m2, c in M.action(word[0], {m: 1}).items():
            put((m2,) + word[1:] + (x,), c)
        for i in range(n - 1):
            sign = -1 if (i + 1) % 2 else 1
            for k, c in A.mul_basis(word[i], word[i + 1]).items():
                if k == 0:
                    continue
                put((m,) + word[:i] + (k,) + word[i + 2:] + (x,), sign * c)
        sign = -1 if n % 2 else 1
        for x2, c in N.action(word[-1], {x: 1}).items():
            put((m,) + word[:-1] + (x2,), sign * c)
        return {k: v for k, v in out.items() if v}

    def weights_to_check(self) -> List[Optional[Weight]]:
        if not self.graded:
            return [None]
        cap = self.degree_cap
        if cap is None:
            raise ValueError("graded pairs need a degree cap")
        k = len(self.alg.weights[0])
        out = []
        for total in range(cap + 1):
            for w in _compositions(total, k):
                out.append(w)
        return out

    def bar_complex(self, window: int, weight: Optional[Weight] = None) -> ChainComplex:
        """Normalized bar complex truncated at tensor length ``window``.

        Stored cohomologically: bar degree n sits in degree -n.
        """
        bases = {n: self._chains(n, weight) for n in range(window + 1)}
        index = {n: {c: i for i, c in enumerate(b)} for n, b in bases.items()}
        diffs = {}
        for n in range(1, window + 1):
            ents = []
            for j, ch in enumerate(bases[n]):
                for key, c in self._bar_d(ch).items():
                    ents.append((index[n - 1][key], j, c))
            diffs[-n] = SparseMatrix(len(bases[n - 1]), len(bases[n]), ents)
        dims = {-n: len(b) for n, b in bases.items()}
        return ChainComplex(dims, diffs, labels={-n: b for n, b in bases.items()})

    def tensor_dim(self) -> int:
        """dim M ⊗_A N from the presentation M ⊗ N / (m a ⊗ x - m ⊗ a x)."""
        A, M, N = self.alg, self.M, self.N
        idx = {(m, x): m * N.dim + x for m in range(M.dim) for x in range(N.dim)}
        rels = []
        for a in range(1, A.n):
            for m in range(M.dim):
                for x in range(N.dim):
                    v: Dict[int, Fraction] = {}
                    for m2, c in M.action(a, {m: 1}).items():
                        v[idx[(m2, x)]] = v.get(idx[(m2, x)], 0) + c
                    for x2, c in N.action(a, {x: 1}).items():
                        v[idx[(m, x2)]] = v.get(idx[(m, x2)], 0) - c
                    v = {k: c for k, c in v.items() if c}
                    if v:
                        rels.append(v)
        if self.graded and self.degree_cap is not None:
            keep = [k for (m, x), k in idx.items()
                    if sum(M.weights[m]) + sum(N.weights[x]) <= self.degree_cap]
            # relations are homogeneous; restrict to the reported degrees
            keep_set = set(keep)
            rels = [r for r in rels if set(r) <= keep_set]
            return len(keep) - rank_rows(rels, M.dim * N.dim)
        return M.dim * N.dim - rank_rows(rels, M.dim * N.dim)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def bar_tor_dims(p: AugmentedAlgebraModulePair, window: int = 6) -> Dict[str, object]:
    """Tor_n dimensions for n <= window from the normalized bar complex.

    A degree is certified when the value computed from the length-(n+1) and
    length-(n+2) truncations agree, which needs window >= n + 2; other
    degrees are returned but flagged uncertified.
    """
    if window < 0:
        raise ValueError("window must be non-negative")
    totals = {n: 0 for n in range(window + 1)}
    totals_short = {n: 0 for n in range(window + 1)}
    for w in p.weights_to_check():
        c = p.bar_complex(window, w)
        if not c.dims:
            continue
        h = cohomology_dims(c)
        for n in range(window + 1):
            totals[n] += h.get(-n, 0)
        if window >= 1:
            c2 = p.bar_complex(window - 1, w)
            h2 = cohomology_dims(c2)
            for n in range(window):
                totals_short[n] += h2.get(-n, 0)
    certified = {}
    for n in range(window + 1):
        certified[n] = n + 2 <= window and totals[n] == totals_short[n]
    return {"dims": totals, "certified": certified, "window": window}


# ---------------------------------------------------------------------------
# constructions


def monomial_algebra(names: Sequence[str], trunc: int, relations: Iterable[Sequence[int]] = ()) -> Tuple[FiniteAlgebra, List[Tuple[int, ...]]]:
    """Q[names]/(relations + m^{trunc+1}) with its monomial basis (unit first)."""
    k = len(names)
    rels = [tuple(r) for r in relations]

    def alive(m):
        if sum(m) > trunc:
            return False
        return not any(all(a >= b for a, b in zip(m, r)) for r in rels)

    monos = []
    for total in range(trunc + 1):
        for m in _compositions(total, k):
            if alive(m):
                monos.append(m)
    monos.sort(key=mono_key)
    index = {m: i for i, m in enumerate(monos)}
    mult = {}
    for i, a in enumerate(monos):
        for j, b in enumerate(monos):
            c = tuple(x + y for x, y in zip(a, b))
            if c in index:
                mult[(i, j)] = {index[c]: 1}
    alg = FiniteAlgebra(monos, mult, weights=monos, commutative=True)
    alg.names = list(names)
    return alg, monos


def quotient_module(alg: FiniteAlgebra, ideal: Iterable[Sequence[int]], side: str = "left") -> FiniteModule:
    """The cyclic module A/J for a monomial ideal J (monomial algebras only)."""
    monos = alg.labels
    gens = [tuple(g) for g in ideal]

    def in_ideal(m):
        return any(all(a >= b for a, b in zip(m, g)) for g in gens)

    basis = [m for m in monos if not in_ideal(m)]
    index = {m: i for i, m in enumerate(basis)}
    act = {}
    for a, am in enumerate(monos):
        ents = []
        for j, m in enumerate(basis):
            c = tuple(x + y for x, y in zip(am, m))
            if c in index:
                ents.append((index[c], j, 1))
        act[a] = SparseMatrix(len(basis), len(basis), ents)
    return FiniteModule(alg, basis, act, side=side, weights=basis)


def residue_module(alg: FiniteAlgebra, side: str = "left") -> FiniteModule:
    """The augmentation module Q = A / (augmentation ideal)."""
    k = len(alg.weights[0]) if alg.weights else 0
    weights = [tuple([0] * k)] if alg.weights else None
    return FiniteModule(alg, ["1"], {}, side=side, weights=weights)


# ---------------------------------------------------------------------------
# anti-symmetrization


def antisymmetrize(p: AugmentedAlgebraModulePair, m: int, elements: Sequence[Mapping[int, object]],
                   x: int = 0) -> Dict[Tuple[int, ...], Fraction]:
    """Chain sum_σ sgn(σ) (m, a_σ1, ..., a_σn, x) expanded multilinearly in the basis."""
    n = len(elements)
    out: Dict[Tuple[int, ...], Fraction] = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        sign = -1 if inv % 2 else 1
        factors = [elements[k] for k in perm]
        for combo in itertools.product(*[list(f.items()) for f in factors]):
            coef = Fraction(sign)
            word = []
            for (b, c) in combo:
                if b == 0:
                    coef = Fraction(0)
                    break
                coef *= Fraction(c)
                word.append(b)
            if coef:
                key = (m,) + tuple(word) + (x,)
                out[key] = out.get(key, 0) + coef
    return {k: v for k, v in out.items() if v}


def antisymmetrization(p: AugmentedAlgebraModulePair, n: int,
                       generators: Optional[Sequence[int]] = None) -> Tuple[SparseMatrix, List, List]:
    """The map ε_n : M ⊗ Λ^n(span of generators) -> B_n as a matrix.

    ``generators`` are algebra basis indices (default: the degree-one
    monomials).  Returns (matrix, domain labels, target chain labels).
    Requires a commutative algebra; n = 0 gives the identity on M.
    """
    A = p.alg
    if not A.commutative:
        raise ValueError("anti-symmetrization needs a commutative algebra")
    if generators is None:
        if A.weights is None:
            raise ValueError("pass generators explicitly for ungraded algebras")
        generators = [i for i, w in enumerate(A.weights) if sum(w) == 1]
    domain = [(m, S) for m in range(p.M.dim) for S in itertools.combinations(generators, n)]
    cols = []
    for (m, S) in domain:
        cols.append(antisymmetrize(p, m, [{g: 1} for g in S]))
    targets = sorted({k for c in cols for k in c})
    tindex = {k: i for i, k in enumerate(targets)}
    mat = SparseMatrix(len(targets), len(domain),
                       ((tindex[k], j, v) for j, c in enumerate(cols) for k, v in c.items()))
    return mat, domain, targets


def bar_boundary(p: AugmentedAlgebraModulePair, chain: Mapping[Tuple[int, ...], object]) -> Dict[Tuple[int, ...], Fraction]:
    """Apply the bar differential to a chain given as {basis tuple: coefficient}."""
    out: Dict[Tuple[int, ...], Fraction] = {}
    for key, c in chain.items():
        for k2, v in p._bar_d(tuple(key)).items():
            out[k2] = out.get(k2, 0) + Fraction(c) * v
    return {k: v for k, v in out.items() if v}


def bounding_chain(p: AugmentedAlgebraModulePair, chain: Mapping[Tuple[int, ...], object]) -> Optional[Dict[Tuple[int, ...], Fraction]]:
    """A chain y with d y = chain, or None if chain is not a boundary."""
    if not chain:
        return {}
    n = len(next(iter(chain))) - 2
    A = p.alg
    sources = p._chains(n + 1, None) if not p.graded else None
    if sources is None:
        weights = set()
        for key in chain:
            w = tuple(sum(x) for x in zip(p.M.weights[key[0]], *[A.weights[a] for a in key[1:-1]], p.N.weights[key[-1]]))
            weights.add(w)
        sources = [s for w in weights for s in p._chains(n + 1, w)]
    tgt_keys = sorted(set(chain) | {k for s in sources for k in p._bar_d(s)})
    tindex = {k: i for i, k in enumerate(tgt_keys)}
    ents = [(tindex[k], j, v) for j, s in enumerate(sources) for k, v in p._bar_d(s).items()]
    mat = SparseMatrix(len(tgt_keys), len(sources), ents)
    sol = solve(mat, {tindex[k]: Fraction(v) for k, v in chain.items()})
    if sol is None:
        return None
    return {sources[j]: v for j, v in sol.items()}


def bar_spectral_demo(p: AugmentedAlgebraModulePair, window: int = 3, r_max: int = 4) -> Dict[str, object]:
    """Spectral sequence of the bar-degree filtration on the truncated bar complex.

    Returns the pages together with the convergence check
    sum_{p+q=n} dim E_inf^{p,q} = dim H^n(total) for every n.
    """
    from .complexes import FilteredComplex, brutal_filtration, spectral_sequence

    c = p.bar_complex(window, None)
    fc = FilteredComplex(c, brutal_filtration(c))
    pages = spectral_sequence(fc, r_max=r_max)
    h = cohomology_dims(c)
    last = pages[-1]
    converges = all(last.total(n) == h.get(n, 0) for n in c.degrees())
    e1 = pages[1] if len(pages) > 1 else pages[-1]
    # rows are counted from the lowest bar degree, so "q = 0" is the bottom row
    e1_rows = sorted({q - c.lo for (pp, q), v in e1.entries.items() if v})
    degenerate_at = next((pg.r for pg in pages if pg.converged), None)
    return {
        "pages": pages,
        "total_cohomology": h,
        "converges": converges,
        "e1_rows": e1_rows,
        "degenerate_at": degenerate_at,
    }
