"""Twisted de Rham complexes, the HKR comparison, and Gauss–Manin flatness.

Forms are sparse dicts {(monomial, sorted index tuple): coefficient}.  The
twisted differential is T_u = -dW∧ + u·d.  Giving x_i weight one, dW∧
raises the total degree (coefficient degree plus form degree) by deg W
while d preserves it, so forms of total degree > D span a subcomplex and
the forms of total degree <= D form a genuine quotient complex.

That quotient has spurious cohomology near the truncation degree.  The
reported dimensions count honest cycles of total degree <= D modulo the
honest boundaries that land there, using sources up to D + L (lookahead L,
default 2 deg W).  Ranks over Q(u) come from sampling u.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exprparse import to_element, variables
from .hochschild import CurvedAlgebra, HochschildWindow, curved_one_object
from .linalg import SparseMatrix, UWindowScalar, WindowOverflow, rank_rows, sample_points
from .poly import Generator, PolyElement, TruncatedPolyAlgebra, _compositions, _insert_sign, _merge_sign

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]
Form = Dict[Key, Fraction]


def _clean(f: Mapping) -> Form:
    return {k: v for k, v in f.items() if v}


def _add_into(out: dict, key, val):
    out[key] = out.get(key, 0) + val


def d_partial(form: Mapping[Key, object], idx: Sequence[int]) -> Form:
    """Exterior derivative in the variables ``idx`` only: sum_i dx_i ∧ ∂_i."""
    out: Form = {}
    for (m, S), c in form.items():
        for i in idx:
            e = m[i]
            if not e:
                continue
            s, S2 = _insert_sign(i, S)
            if not s:
                continue
            nm = m[:i] + (e - 1,) + m[i + 1:]
            _add_into(out, (nm, S2), s * e * c)
    return _clean(out)


def wedge(a: Mapping[Key, object], b: Mapping[Key, object]) -> Form:
    out: Form = {}
    for (m1, S1), c1 in a.items():
        for (m2, S2), c2 in b.items():
            s, S = _merge_sign(S1, S2)
            if not s:
                continue
            m = tuple(x + y for x, y in zip(m1, m2))
            _add_into(out, (m, S), s * c1 * c2)
    return _clean(out)


def function_form(p: PolyElement) -> Form:
    return {(m, ()): c for m, c in p.terms.items()}


def total_degree(key: Key) -> int:
    return sum(key[0]) + len(key[1])


class TwistedDeRham:
    """(Omega^•[u], -dW∧ + u·d) on even variables, truncated at total degree D."""

    def __init__(self, W: PolyElement, D: int = 8, lookahead: Optional[int] = None):
        if W.alg.odd:
            raise ValueError("twisted de Rham needs even variables")
        self.W = W
        self.names = W.alg.names
        self.n = W.alg.ngens
        self.D = D
        degW = W.degree() if W.terms else 0
        self.lookahead = lookahead if lookahead is not None else max(2 * degW, 2)
        self.dW = d_partial(function_form(W), range(self.n))
        self.check_square_zero()

    # bases ------------------------------------------------------------------

    def basis(self, k: int, top: int) -> List[Key]:
        out = []
        for S in itertools.combinations(range(self.n), k):
            for c in range(0, top - k + 1):
                for m in _compositions(c, self.n):
                    out.append((m, S))
        return out

    # operators --------------------------------------------------------------

    def dW_wedge(self, form: Mapping[Key, object]) -> Form:
        return wedge(self.dW, form)

    def d(self, form: Mapping[Key, object]) -> Form:
        return d_partial(form, range(self.n))

    def T(self, form: Mapping[Key, object], u) -> Form:
        out = {k: -v for k, v in self.dW_wedge(form).items()}
        for k, v in self.d(form).items():
            _add_into(out, k, u * v)
        return _clean(out)

    def check_square_zero(self) -> None:
        """Both cross terms cancel: dW∧dW = 0 and d(dW∧ω) + dW∧dω = 0."""
        for k in range(self.n + 1):
            for key in self.basis(k, min(self.D, 4)):
                e = {key: Fraction(1)}
                if self.dW_wedge(self.dW_wedge(e)):
                    raise ArithmeticError("dW∧dW ≠ 0")
                cross = self.d(self.dW_wedge(e))
                for kk, v in self.dW_wedge(self.d(e)).items():
                    _add_into(cross, kk, v)
                if _clean(cross):
                    raise ArithmeticError("d(dW∧-) + dW∧d ≠ 0")
                if self.d(self.d(e)):
                    raise ArithmeticError("d∘d ≠ 0")

    def matrix(self, k: int, src_top: int, u, tgt: Optional[Sequence[Key]] = None) -> Tuple[SparseMatrix, List[Key]]:
        """Matrix of T_u on k-forms of total degree <= src_top; target keys collected if not given."""
        src = self.basis(k, src_top)
        images = [self.T({key: Fraction(1)}, u) for key in src]
        if tgt is None:
            tgt = sorted({kk for im in images for kk in im}, key=lambda kk: (total_degree(kk), kk))
        ti = {kk: i for i, kk in enumerate(tgt)}
        ents = [(ti[kk], j, v) for j, im in enumerate(images) for kk, v in im.items() if kk in ti]
        return SparseMatrix(len(tgt), len(src), ents), tgt

    # cohomology -------------------------------------------------------------

    def dims_at(self, D: int, u) -> Dict[int, Tuple[int, int]]:
        """(cycle dim, boundary dim) per form degree at a fixed value of u."""
        out = {}
        for k in range(self.n + 1):
            src = self.basis(k, D)
            images = [self.T({key: Fraction(1)}, u) for key in src]
            tgt_keys = {}
            rows: Dict[int, Dict[int, Fraction]] = {}
            for j, im in enumerate(images):
                for kk, v in im.items():
                    r = tgt_keys.setdefault(kk, len(tgt_keys))
                    rows.setdefault(r, {})[j] = v
            z = len(src) - rank_rows(list(rows.values()), len(src))
            b = 0
            if k > 0:
                src2 = self.basis(k - 1, D + self.lookahead)
                inside: Dict[Key, int] = {}
                outside: Dict[Key, int] = {}
                rin: Dict[int, Dict[int, Fraction]] = {}
                rout: Dict[int, Dict[int, Fraction]] = {}
                for j, key in enumerate(src2):
                    for kk, v in self.T({key: Fraction(1)}, u).items():
                        if total_degree(kk) <= D:
                            r = inside.setdefault(kk, len(inside))
                            rin.setdefault(r, {})[j] = v
                        else:
                            r = outside.setdefault(kk, len(outside))
                            rout.setdefault(r, {})[j] = v
                q = list(rout.values())
                b = rank_rows(q + list(rin.values()), len(src2)) - rank_rows(q, len(src2))
            out[k] = (z, b)
        return out

    def cohomology(self, D: Optional[int] = None, u_samples: int = 3, seed: int = 0) -> Dict[int, int]:
        """dim H^k over Q(u): generic cycle and boundary dimensions from u samples."""
        D = self.D if D is None else D
        z_min: Dict[int, int] = {}
        b_max: Dict[int, int] = {}
        for u in sample_points(u_samples, seed):
            for k, (z, b) in self.dims_at(D, u).items():
                # generic rank is the maximum, so cycles are the minimum
                z_min[k] = min(z_min.get(k, z), z)
                b_max[k] = max(b_max.get(k, b), b)
        return {k: z_min[k] - b_max[k] for k in sorted(z_min)}

    def quotient_complex_euler(self, D: Optional[int] = None, u=Fraction(3, 7)) -> dict:
        """Euler characteristics of the quotient complex Omega_{<=D}: chain level and cohomology."""
        D = self.D if D is None else D
        dims = {k: len(self.basis(k, D)) for k in range(self.n + 1)}
        ranks = {}
        for k in range(self.n):
            m, _ = self.matrix(k, D, u, tgt=self.basis(k + 1, D))
            ranks[k] = rank_rows(m.row_dicts(), m.ncols)
        h = {k: dims[k] - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in dims}
        chi_chain = sum((-1) ** k * v for k, v in dims.items())
        chi_h = sum((-1) ** k * v for k, v in h.items())
        return {"chain": chi_chain, "cohomology": chi_h, "dims": dims, "quotient_cohomology": h}


def twisted_cohomology(td: TwistedDeRham, u_samples: int = 3) -> dict:
    """Dimensions per form degree at D and D + 2 with a stabilization flag."""
    a = td.cohomology(td.D, u_samples)
    b = td.cohomology(td.D + 2, u_samples)
    even = sum(v for k, v in a.items() if k % 2 == 0)
    odd = sum(v for k, v in a.items() if k % 2 == 1)
    return {"dims": a, "dims_next": b, "stable": a == b, "even": even, "odd": odd,
            "total": even + odd, "trunc": td.D}


def milnor_number(W: PolyElement, D: int = 12) -> Optional[int]:
    """dim Q[x]/(∂W) when it is finite and visible below degree D (None otherwise)."""
    alg = W.alg.with_trunc(D + 4)
    Wb = PolyElement(alg, W.terms)
    parts = [Wb.partial(n) for n in alg.names]
    dims = []
    for top in (D, D + 2):
        monos = alg.monomials(max_deg=top)
        idx = {m: i for i, m in enumerate(monos)}
        rows = []
        for p in parts:
            for m in alg.monomials(max_deg=top):
                r = {}
                ok = True
                for pm, c in p.terms.items():
                    nm = tuple(a + b for a, b in zip(pm, m))
                    if nm not in idx:
                        ok = False
                        break
                    r[idx[nm]] = c
                if ok and r:
                    rows.append(r)
        dims.append(len(monos) - rank_rows(rows, len(monos)))
    return dims[0] if dims[0] == dims[1] else None


# ---------------------------------------------------------------------------
# HKR


def _chain_to_form(A: CurvedAlgebra, alg: TruncatedPolyAlgebra, c, monos) -> Form:
    """ε(a_0, ..., a_n) = (1/n!) a_0 da_1 ∧ ... ∧ da_n for monomial basis elements."""
    n = len(c) - 1
    form: Form = {(monos[c[0]], ()): Fraction(1)}
    for a in c[1:]:
        da = d_partial({(monos[a], ()): Fraction(1)}, range(alg.ngens))
        form = wedge(form, da)
        if not form:
            return {}
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return {k: v / fact for k, v in form.items()}


def hkr_map(w: HochschildWindow, td: TwistedDeRham, max_len: Optional[int] = None):
    """Matrix of ε from chains of length <= max_len to forms, with row and column labels."""
    A = w.A
    alg = A.poly
    monos = alg.monomials()
    max_len = w.n_bar if max_len is None else max_len
    src = [c for k in range(max_len + 1) for c in w.chains(k)]
    images = [_chain_to_form(A, alg, c, monos) for c in src]
    tgt = sorted({k for im in images for k in im})
    ti = {k: i for i, k in enumerate(tgt)}
    m = SparseMatrix(len(tgt), len(src), [(ti[k], j, v) for j, im in enumerate(images) for k, v in im.items()])
    return m, src, tgt


def hkr_check(W: PolyElement, D: int = 6, max_len: int = 4) -> dict:
    """ε∘b = dW∧ε and ε∘B = d∘ε on interior words, exactly.

    So ε intertwines b + uB with dW∧ + u·d, which is -T_{-u}; the two
    twisted complexes have the same cohomology over Q(u).  The Hochschild
    side uses the curved algebra (R_D, h = -W); a word is
    interior when its total degree plus deg W stays <= D, so no product or
    curvature insertion is cut off by the truncation.
    """
    A = curved_one_object(W, D)
    alg = A.poly
    monos = alg.monomials()
    w = HochschildWindow(A, max_len + 1)
    td = TwistedDeRham(PolyElement(alg, W.terms), D)
    degW = W.degree()
    checked = 0
    failures = []
    budget = D - degW
    for n in range(max_len + 1):
        for c in _words_within(monos, n, budget):
            checked += 1
            eps = _chain_to_form(A, alg, c, monos)
            lhs_b: Form = {}
            for cc, v in w.b(c).items():
                for k, x in _chain_to_form(A, alg, cc, monos).items():
                    _add_into(lhs_b, k, v * x)
            rhs_b = td.dW_wedge(eps)
            lhs_B: Form = {}
            for cc, v in w.B(c).items():
                for k, x in _chain_to_form(A, alg, cc, monos).items():
                    _add_into(lhs_B, k, v * x)
            rhs_B = td.d(eps)
            for name, lhs, rhs in (("b", lhs_b, rhs_b), ("B", lhs_B, rhs_B)):
                diff = dict(_clean(lhs))
                for k, v in rhs.items():
                    _add_into(diff, k, -v)
                if _clean(diff) and len(failures) < 5:
                    failures.append({"operator": name, "chain": [str(A.labels[a]) for a in c]})
    return {"holds": not failures, "words_checked": checked, "failures": failures,
            "trunc": D, "max_length": max_len}


def _words_within(monos, n: int, budget: int):
    """Normalized words (a_0, ..., a_n) of total polynomial degree <= budget."""
    deg = [sum(m) for m in monos]
    order = sorted(range(len(monos)), key=lambda i: deg[i])

    def rec(prefix, left, k):
        if k == 0:
            yield tuple(prefix)
            return
        for i in order:
            if deg[i] > left:
                break
            if i == 0:
                continue
            prefix.append(i)
            yield from rec(prefix, left - deg[i], k - 1)
            prefix.pop()

    for a0 in order:
        if deg[a0] > budget:
            break
        yield from rec([a0], budget - deg[a0], n)


# ---------------------------------------------------------------------------
# families and the Gauss–Manin connection


class PotentialFamily:
    """W(x, t) polynomial in the fibre variables and one parameter t."""

    def __init__(self, W: PolyElement, param: str = "t", grid: Sequence[object] = (0,)):
        if param not in W.alg.index:
            alg = TruncatedPolyAlgebra(list(W.alg.gens) + [Generator(param)], W.alg.trunc)
            W = PolyElement(alg, {m + (0,): c for m, c in W.terms.items()})
        self.W = W
        self.param = param
        self.t_index = W.alg.index[param]
        self.x_index = [i for i in range(W.alg.ngens) if i != self.t_index]
        self.x_names = [W.alg.names[i] for i in self.x_index]
        self.grid = [Fraction(g) for g in grid]
        if not self.grid:
            raise ValueError("grid must be nonempty")

    @classmethod
    def parse(cls, text: str, param: str = "t", grid: Sequence[object] = (0,), trunc: int = 16) -> "PotentialFamily":
        names = [v for v in variables(text) if v != param] + [param]
        alg = TruncatedPolyAlgebra([Generator(n) for n in names], trunc)
        return cls(to_element(text, alg), param, grid)

    def at(self, t) -> PolyElement:
        """Specialize W(t) to a potential in the fibre variables."""
        alg = TruncatedPolyAlgebra([Generator(n) for n in self.x_names], self.W.alg.trunc)
        terms: Dict[Tuple[int, ...], Fraction] = {}
        t = Fraction(t)
        for m, c in self.W.terms.items():
            nm = tuple(m[i] for i in self.x_index)
            terms[nm] = terms.get(nm, 0) + c * t ** m[self.t_index]
        return PolyElement(alg, terms)

    @staticmethod
    def model(s0: str, s1: str, names: Sequence[str], param: str = "t", grid=(0, 1)) -> "PotentialFamily":
        """The interpolating family s = s0 t + (1 - t) s1."""
        return PotentialFamily.parse(f"({s0})*{param} + (1 - {param})*({s1})", param, grid)


class LaurentForm(dict):
    """{(u exponent, key): coefficient} with exponents confined to [-window, window]."""

    def __init__(self, window: int, data=None):
        super().__init__()
        self.window = window
        for k, v in (data or {}).items():
            self.add(k, v)

    def add(self, k, v):
        if not v:
            return
        if abs(k[0]) > self.window:
            raise WindowOverflow(f"u-exponent {k[0]} outside window ±{self.window}")
        nv = self.get(k, 0) + v
        if nv:
            self[k] = nv
        else:
            self.pop(k, None)


class GaussManin:
    """Operators on forms in (x, t) with Laurent coefficients in u.

    A  = -d_xW∧ + u·d_x       (the relative twisted differential)
    ∇  = d_t - u^{-1}·(d_tW)∧ (the Gauss–Manin operator)
    """

    def __init__(self, fam: PotentialFamily, u_window: int = 3):
        if u_window < 1:
            raise WindowOverflow("the u^{-1} shift needs a u-window of at least 1")
        self.fam = fam
        self.window = u_window
        W = function_form(fam.W)
        self._dxW = d_partial(W, fam.x_index)
        self._dtW = d_partial(W, [fam.t_index])

    def _lift(self, op, f: LaurentForm, shift: int, scale=1) -> LaurentForm:
        out = LaurentForm(self.window)
        for (j, key), c in f.items():
            for k2, v in op({key: c}).items():
                out.add((j + shift, k2), scale * v)
        return out

    def _sum(self, *parts) -> LaurentForm:
        out = LaurentForm(self.window)
        for p in parts:
            for k, v in p.items():
                out.add(k, v)
        return out

    # the four building blocks
    def dx(self, f):
        return self._lift(lambda g: d_partial(g, self.fam.x_index), f, 0)

    def dt(self, f):
        return self._lift(lambda g: d_partial(g, [self.fam.t_index]), f, 0)

    def dxW(self, f):
        return self._lift(lambda g: wedge(self._dxW, g), f, 0)

    def dtW(self, f):
        return self._lift(lambda g: wedge(self._dtW, g), f, 0)

    def shift_u(self, f, k, scale=1):
        return self._lift(lambda g: dict(g), f, k, scale)

    def A(self, f):
        return self._sum(self.shift_u(self.dxW(f), 0, -1), self.shift_u(self.dx(f), 1))

    def nabla(self, f):
        return self._sum(self.dt(f), self.shift_u(self.dtW(f), -1, -1))

    def basis(self, D: int, j_range: Sequence[int]) -> List[Tuple[int, Key]]:
        n = self.fam.W.alg.ngens
        out = []
        for k in range(n + 1):
            for S in itertools.combinations(range(n), k):
                for c in range(D + 1):
                    for m in _compositions(c, n):
                        for j in j_range:
                            out.append((j, (m, S)))
        return out


def gm_operator(fam: PotentialFamily, D: int = 3, u_window: int = 3) -> dict:
    """∇ on forms with coefficient degree <= D as a matrix with u-Laurent entries."""
    gm = GaussManin(fam, u_window)
    src = [key for (_, key) in gm.basis(D, [0])]
    cols = []
    for key in src:
        img = gm.nabla(LaurentForm(u_window, {(0, key): Fraction(1)}))
        col: Dict[Key, Dict[int, Fraction]] = {}
        for (j, k2), v in img.items():
            col.setdefault(k2, {})[j] = v
        cols.append(col)
    tgt = sorted({k for col in cols for k in col}, key=lambda kk: (len(kk[1]), total_degree(kk), kk))
    ti = {k: i for i, k in enumerate(tgt)}
    ents = []
    for j, col in enumerate(cols):
        for k2, coeffs in col.items():
            ents.append((ti[k2], j, UWindowScalar(coeffs, u_window)))
    return {"matrix": SparseMatrix(len(tgt), len(src), ents), "source": src, "target": tgt, "operator": gm}


def gm_flatness_check(fam: PotentialFamily, D: int = 3, u_window: int = 3) -> dict:
    """[A, ∇] = 0 and ∇² = 0 on every basis form, with the four bracket terms reported.

    Writing the graded commutator of two odd operators as [P, Q] = PQ + QP,
    [A, ∇] = -u^{-1}[dW_x, dW_t] - ([d_x, dW_t] + [dW_x, d_t]) + u[d_x, d_t].
    """
    gm = GaussManin(fam, u_window)
    j_range = range(-u_window + 2, u_window - 1)
    basis = gm.basis(D, j_range)
    brackets = {"[dW,dtW]": 0, "[dDR,dtW]": 0, "[dW,dt]": 0, "[dDR,dt]": 0}
    residue = 0
    nabla_sq = 0
    mixed_sum = 0
    witness = None

    def bracket(P, Q, f):
        return gm._sum(P(Q(f)), Q(P(f)))

    for (j, key) in basis:
        f = LaurentForm(u_window, {(j, key): Fraction(1)})
        comm = gm._sum(gm.A(gm.nabla(f)), gm.nabla(gm.A(f)))
        sq = gm.nabla(gm.nabla(f))
        b1 = bracket(gm.dxW, gm.dtW, f)
        b2 = bracket(gm.dx, gm.dtW, f)
        b3 = bracket(gm.dxW, gm.dt, f)
        b4 = bracket(gm.dx, gm.dt, f)
        brackets["[dW,dtW]"] += len(b1)
        brackets["[dDR,dtW]"] += len(b2)
        brackets["[dW,dt]"] += len(b3)
        brackets["[dDR,dt]"] += len(b4)
        mixed_sum += len(gm._sum(b2, b3))
        residue += len(comm)
        nabla_sq += len(sq)
        if (comm or sq) and witness is None:
            witness = {"u": j, "form": [list(key[0]), list(key[1])]}
    return {
        "flat": residue == 0 and nabla_sq == 0,
        "commutator_residue": residue,
        "nabla_squared_residue": nabla_sq,
        "bracket_terms_nonzero": brackets,
        "middle_terms_cancel": mixed_sum == 0,
        "forms_checked": len(basis),
        "witness": witness,
    }


def random_cubic_family(nvars: int, seed: int = 0) -> PotentialFamily:
    rng = random.Random(seed)
    names = ["x", "y"][:nvars]
    alg = TruncatedPolyAlgebra([Generator(n) for n in names + ["t"]], 16)
    terms = {}
    for deg in range(1, 4):
        for m in _compositions(deg, nvars):
            for te in range(0, 2):
                c = rng.randint(-3, 3)
                if c:
                    terms[m + (te,)] = Fraction(c)
    terms[(3,) + (0,) * (nvars - 1) + (0,)] = Fraction(1)
    return PotentialFamily(PolyElement(alg, terms), "t", [0, 1])


def family_scan(fam: PotentialFamily, u_samples: int = 3, D: int = 8) -> dict:
    """Total twisted de Rham dimension per grid point with a constancy verdict.

    Any unstable point disqualifies the verdict: it is reported as
    "unstable" rather than constant or jumping.
    """
    rows = []
    for t in fam.grid:
        W = fam.at(t)
        td = TwistedDeRham(PolyElement(W.alg.with_trunc(max(D + 8, W.alg.trunc)), W.terms), D)
        r = twisted_cohomology(td, u_samples)
        rows.append({"t": str(t), "dim_even": r["even"], "dim_odd": r["odd"], "total": r["total"],
                     "stable": r["stable"]})
    totals = {r["total"] for r in rows}
    if not all(r["stable"] for r in rows):
        verdict = "unstable"
    elif len(totals) == 1:
        verdict = "constant"
    else:
        verdict = "jump"
    return {"rows": rows, "verdict": verdict, "constant": verdict == "constant"}


def scan_csv(scan: dict) -> str:
    lines = ["t,dim_even,dim_odd,stable"]
    for r in scan["rows"]:
        lines.append(f"{r['t']},{r['dim_even']},{r['dim_odd']},{str(r['stable']).lower()}")
    return "\n".join(lines) + "\n"
