"""Ext of O_Z on projective space for a (5, 1) complete intersection Z.

Everything reduces to graded polynomial linear algebra on the hyperplane
H = P^{n-1}, whose homogeneous coordinate ring has n variables:

* H^0(O_H(p)) is the degree p part of the polynomial ring;
* H^{n-1}(O_H(p)) is spanned by Laurent monomials x^a with every a_i <= -1
  and |a| = p (the Cech top cohomology), on which a polynomial acts by
  multiplication followed by discarding monomials with a nonnegative
  exponent.

The sequence 0 -> O_H(p-5) -> O_H(p) -> O_Z(p) -> 0 then gives H^0(O_Z(p))
as a cokernel and H^{n-2}(O_Z(p)) as a kernel of explicit q-multiplication
matrices.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .linalg import SparseMatrix, rank
from .poly import Generator, PolyElement, TruncatedPolyAlgebra, _compositions

log = logging.getLogger(__name__)

QUINTIC_DEGREE = 5


def line_bundle_cohomology(n: int, p: int) -> Dict[int, int]:
    """h^q(P^n, O(p)) by the binomial formulas (zero entries omitted)."""
    if n < 1:
        raise ValueError("ambient dimension must be at least 1")
    out = {}
    if p >= 0:
        out[0] = comb(p + n, n)
    if p <= -n - 1:
        out[n] = comb(-p - 1, n)
    return out


def _euler(n: int, p: int) -> int:
    return sum((-1) ** q * v for q, v in line_bundle_cohomology(n, p).items())


class DegenerateQuintic(ArithmeticError):
    pass


class ProjectiveSetup:
    """P^n = P(V) with a hyperplane h and a quintic q restricted to H = {h = 0}.

    ``q`` lives on the reduced coordinate space Q_h = V^vee / C h: the
    variable with the first nonzero coefficient of h is eliminated.
    """

    def __init__(self, n: int = 4, seed: int = 0, height: int = 5, max_tries: int = 20):
        if n < 2:
            raise ValueError("need n >= 2 so that Z is nonempty of dimension n - 2")
        self.n = n
        self.requested_seed = seed
        self.height = height
        for attempt in range(max_tries):
            self.seed = seed + attempt
            self._build()
            if self.is_generic():
                break
            log.warning("degenerate quintic for seed %d, reseeding", self.seed)
        else:
            raise DegenerateQuintic(f"no generic quintic after {max_tries} seeds")
        self.reseeds = self.seed - seed

    def _build(self) -> None:
        rng = random.Random(self.seed)
        n = self.n
        V = TruncatedPolyAlgebra([Generator(f"x{i}") for i in range(n + 1)], QUINTIC_DEGREE)
        hcoef = [rng.randint(-self.height, self.height) for _ in range(n + 1)]
        if not any(hcoef):
            hcoef[0] = 1
        self.h = PolyElement(V, {tuple(int(i == j) for j in range(n + 1)): c for i, c in enumerate(hcoef) if c})
        pivot = next(i for i, c in enumerate(hcoef) if c)
        self.pivot = pivot
        names = [f"x{i}" for i in range(n + 1) if i != pivot]
        self.ring = TruncatedPolyAlgebra([Generator(s) for s in names], QUINTIC_DEGREE)
        # x_pivot = -(sum of the other terms) / c_pivot on H
        sub = self.ring.zero()
        for i, c in enumerate(hcoef):
            if i != pivot and c:
                sub = sub + self.ring.gen(f"x{i}") * Fraction(-c, hcoef[pivot])
        Q = PolyElement(V, {m: Fraction(rng.randint(-self.height, self.height))
                            for m in V.monomials(exact=QUINTIC_DEGREE)})
        self.quintic = Q
        self.q = Q.substitute({f"x{pivot}": sub}, self.ring)

    # multiplication matrices ------------------------------------------------

    def sections_basis(self, p: int) -> List[Tuple[int, ...]]:
        return list(_compositions(p, self.n)) if p >= 0 else []

    def top_basis(self, p: int) -> List[Tuple[int, ...]]:
        """Exponent vectors a with a_i <= -1 and |a| = p."""
        k = -p - self.n
        if k < 0:
            return []
        return [tuple(-1 - e for e in c) for c in _compositions(k, self.n)]

    def q_on_sections(self, p: int) -> SparseMatrix:
        """q·: H^0(O_H(p - 5)) -> H^0(O_H(p))."""
        src = self.sections_basis(p - QUINTIC_DEGREE)
        tgt = self.sections_basis(p)
        ti = {m: i for i, m in enumerate(tgt)}
        ents = []
        for j, m in enumerate(src):
            for qm, c in self.q.terms.items():
                ents.append((ti[tuple(a + b for a, b in zip(m, qm))], j, c))
        return SparseMatrix(len(tgt), len(src), ents)

    def q_on_top(self, p: int) -> SparseMatrix:
        """q·: H^{n-1}(O_H(p - 5)) -> H^{n-1}(O_H(p)) on inverse monomials."""
        src = self.top_basis(p - QUINTIC_DEGREE)
        tgt = self.top_basis(p)
        ti = {m: i for i, m in enumerate(tgt)}
        ents = []
        for j, m in enumerate(src):
            for qm, c in self.q.terms.items():
                nm = tuple(a + b for a, b in zip(m, qm))
                if nm in ti:
                    ents.append((ti[nm], j, c))
        return SparseMatrix(len(tgt), len(src), ents)

    def is_generic(self, twists=(0, 1, 5, 6)) -> bool:
        """Maximal rank of both q-multiplication maps at each twist."""
        if not self.q.terms:
            return False
        for p in twists:
            for m in (self.q_on_sections(p), self.q_on_top(p)):
                if rank(m) != min(m.nrows, m.ncols):
                    return False
        return True


def ci_twist_cohomology(setup: ProjectiveSetup, p: int) -> Dict[int, int]:
    """h^q(O_Z(p)) for q = 0 and q = n - 2, zero entries omitted.

    The intermediate groups are not assumed zero: the Euler characteristic
    chi(O_H(p)) - chi(O_H(p - 5)) must be carried entirely by H^0 and
    H^{n-2}, otherwise an error is raised.
    """
    n = setup.n
    A = setup.q_on_sections(p)
    h0 = A.nrows - rank(A)
    B = setup.q_on_top(p)
    top = B.ncols - rank(B)
    chi = _euler(n - 1, p) - _euler(n - 1, p - QUINTIC_DEGREE)
    out: Dict[int, int] = {}
    if h0:
        out[0] = h0
    if top:
        out[n - 2] = out.get(n - 2, 0) + top
    found = sum((-1) ** q * v for q, v in out.items())
    if found != chi:
        raise ArithmeticError(f"Euler characteristic mismatch at p = {p}: {found} vs {chi}")
    return out


class ExtTable:
    def __init__(self, e2: Dict[Tuple[int, int], int], ext: List[int], checks: dict, setup: ProjectiveSetup):
        self.e2 = e2
        self.ext = ext
        self.checks = checks
        self.setup = setup

    def to_json(self) -> dict:
        return {
            "E2": [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(self.e2.items())],
            "ext": self.ext,
            "checks": self.checks,
            "seed": self.setup.seed,
            "reseeds": self.setup.reseeds,
        }

    def grid(self) -> str:
        ps = sorted({p for p, _ in self.e2})
        qs = sorted({q for _, q in self.e2}, reverse=True)
        lines = ["q\\p " + " ".join(f"{p:>5}" for p in ps)]
        for q in qs:
            lines.append(f"{q:>3} " + " ".join(f"{self.e2.get((p, q), 0):>5}" for p in ps))
        lines.append("Ext: " + ", ".join(str(v) for v in self.ext))
        return "\n".join(lines)


# positions of O(-k) summands in the Koszul resolution 0 -> O(-6) -> O(-5) + O(-1) -> O
KOSZUL_TWISTS = {0: [0], 1: [QUINTIC_DEGREE, 1], 2: [QUINTIC_DEGREE + 1]}


def _d1_rank_on_sections(setup: ProjectiveSetup, p: int) -> int:
    """Rank of d_1 on the H^0 row from column p to p + 1.

    The Koszul maps multiply by q (O(-5) summand) and h (O(-1) summand);
    on H, h vanishes identically, and on sections of O_Z a multiple of q is
    zero modulo the image of q.  We compute the induced map honestly.
    """
    src_twists = KOSZUL_TWISTS[p]
    tgt_twists = KOSZUL_TWISTS.get(p + 1)
    if not tgt_twists:
        return 0
    total = 0
    for a in src_twists:
        for b in tgt_twists:
            k = b - a
            if k == QUINTIC_DEGREE:
                mult = setup.q
            else:
                continue  # h-multiplication is zero on the hyperplane ring
            src = setup.sections_basis(a)
            tgt = setup.sections_basis(b)
            ti = {m: i for i, m in enumerate(tgt)}
            imq = setup.q_on_sections(b)
            ents = []
            for j, m in enumerate(src):
                for qm, c in mult.terms.items():
                    ents.append((ti[tuple(x + y for x, y in zip(m, qm))], j, c))
            image = SparseMatrix(len(tgt), len(src), ents)
            # rank of the induced map into the cokernel of q-multiplication
            both = SparseMatrix(len(tgt), imq.ncols + image.ncols,
                                [(r, c, v) for r, c, v in imq.entries] +
                                [(r, c + imq.ncols, v) for r, c, v in image.entries])
            total += rank(both) - rank(imq)
    return total


def ext_table(setup: ProjectiveSetup) -> ExtTable:
    n = setup.n
    twists = sorted({t for ts in KOSZUL_TWISTS.values() for t in ts})
    coh = {t: ci_twist_cohomology(setup, t) for t in twists}
    e2: Dict[Tuple[int, int], int] = {}
    for p, ts in KOSZUL_TWISTS.items():
        for q in range(n - 1):
            v = sum(coh[t].get(q, 0) for t in ts)
            if v:
                e2[(p, q)] = v
    d1 = {p: _d1_rank_on_sections(setup, p) for p in KOSZUL_TWISTS}
    if any(d1.values()):
        bad = next(p for p, v in d1.items() if v)
        raise ArithmeticError(f"unexpected nonzero d_1 from ({bad}, 0)")
    # higher differentials d_r: (p, q) -> (p + r, q - r + 1), r >= 2
    pmax = max(KOSZUL_TWISTS)
    qmax = n - 2
    collisions = []
    for (p, q) in e2:
        for r in range(2, pmax + 1):
            tgt = (p + r, q - r + 1)
            if tgt in e2:
                collisions.append([p, q, r])
    if collisions:
        raise ArithmeticError(f"differential between nonzero entries at {collisions[0]}")
    top_degree = max(p + q for p, q in e2)
    ext = [sum(v for (p, q), v in e2.items() if p + q == i) for i in range(top_degree + 1)]
    checks = {
        "d1_zero": True,
        "higher_differentials_vanish_positionally": True,
        "euler_conservation": True,
        "trace_ext0_is_one": ext[0] == 1,
        "ext0_equals_top": ext[0] == ext[-1],
        "serre_pattern": e2.get((0, 0)) == e2.get((1, qmax)) and
                         e2.get((0, qmax)) == coh[1].get(0),
    }
    return ExtTable(e2, ext, checks, setup)


def model_slots(n: int = 4) -> set:
    """The five slots of the lemma for the P^4 example."""
    return {(0, 0), (1, 0), (2, 0), (0, n - 2), (1, n - 2)}
