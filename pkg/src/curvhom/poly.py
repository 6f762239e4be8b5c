"""Truncated graded-commutative polynomial algebras and Kähler forms.

Generators carry a cohomological degree and a parity.  Odd generators
anticommute and square to zero; every monomial of total word degree above the
truncation ``D`` is identically zero.  Monomials are exponent tuples in the
order the generators were declared, and the canonical basis order is
degree-lexicographic (total degree first, then the earlier generator wins).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .linalg import as_rational

Mono = Tuple[int, ...]


class Generator(NamedTuple):
    name: str
    degree: int = 0
    parity: int = 0


def sym_basis_dim(n: int, k: int) -> int:
    """Dimension of Sym^k of an n-dimensional space, C(k+n-1, n-1)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return comb(k + n - 1, n - 1)


def mono_key(m: Mono) -> Tuple:
    return (sum(m), tuple(-e for e in m))


class TruncatedPolyAlgebra:
    """Free graded-commutative algebra on named generators, truncated at degree D."""

    def __init__(self, generators: Sequence, trunc: int = 8):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = Generator(g)
            elif not isinstance(g, Generator):
                g = Generator(*g)
            if g.parity not in (0, 1):
                raise ValueError(f"parity of {g.name} must be 0 or 1")
            gens.append(g)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        if trunc < 0:
            raise ValueError("truncation must be non-negative")
        self.gens: Tuple[Generator, ...] = tuple(gens)
        self.trunc = trunc
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.odd = tuple(i for i, g in enumerate(gens) if g.parity)

    # identity
    def _key(self):
        return (self.gens, self.trunc)

    def __eq__(self, other):
        return isinstance(other, TruncatedPolyAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"TruncatedPolyAlgebra({[g.name for g in self.gens]}, D={self.trunc})"

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.gens]

    def with_trunc(self, D: int) -> "TruncatedPolyAlgebra":
        return TruncatedPolyAlgebra(self.gens, D)

    # monomials
    def mono_degree(self, m: Mono) -> int:
        return sum(e * g.degree for e, g in zip(m, self.gens))

    def mono_parity(self, m: Mono) -> int:
        return sum(m[i] for i in self.odd) % 2

    def monomials(self, max_deg: Optional[int] = None, exact: Optional[int] = None) -> List[Mono]:
        """Canonically ordered monomial basis (optionally of one word degree)."""
        top = self.trunc if max_deg is None else min(max_deg, self.trunc)
        degs = [exact] if exact is not None else range(top + 1)
        out: List[Mono] = []
        n = self.ngens
        for d in degs:
            if d < 0 or d > self.trunc:
                continue
            for m in _compositions(d, n):
                if all(m[i] <= 1 for i in self.odd):
                    out.append(m)
        out.sort(key=mono_key)
        return out

    def mono_mul(self, a: Mono, b: Mono) -> Tuple[int, Optional[Mono]]:
        """Product of two monomials: (sign, monomial) or (0, None) if it vanishes."""
        sign = 1
        for i in self.odd:
            if a[i] and b[i]:
                return 0, None
        if self.odd:
            # moving each odd factor of b past the odd factors of a standing later
            inv = 0
            for j in self.odd:
                if b[j]:
                    for i in self.odd:
                        if i > j and a[i]:
                            inv += 1
            if inv % 2:
                sign = -1
        m = tuple(x + y for x, y in zip(a, b))
        if sum(m) > self.trunc:
            return 0, None
        return sign, m

    # elements
    def element(self, terms: Optional[Mapping] = None) -> "PolyElement":
        return PolyElement(self, terms or {})

    def zero(self) -> "PolyElement":
        return PolyElement(self, {})

    def one(self) -> "PolyElement":
        return self.const(1)

    def const(self, c) -> "PolyElement":
        return PolyElement(self, {(0,) * self.ngens: c})

    def gen(self, name: str) -> "PolyElement":
        if name not in self.index:
            raise KeyError(f"unknown generator {name!r}")
        m = [0] * self.ngens
        m[self.index[name]] = 1
        return PolyElement(self, {tuple(m): 1})

    def gens_elements(self) -> List["PolyElement"]:
        return [self.gen(g.name) for g in self.gens]

    def monomial(self, m: Mono, coef=1) -> "PolyElement":
        return PolyElement(self, {tuple(m): coef})

    # serialization
    def to_json(self) -> dict:
        return {
            "gens": [{"name": g.name, "degree": g.degree, "parity": "odd" if g.parity else "even"} for g in self.gens],
            "trunc": self.trunc,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedPolyAlgebra":
        gens = []
        for g in data["gens"]:
            par = g.get("parity", "even")
            par = 1 if par in ("odd", 1) else 0
            gens.append(Generator(g["name"], int(g.get("degree", 0)), par))
        return cls(gens, int(data.get("trunc", 8)))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class PolyElement:
    """An element of a :class:`TruncatedPolyAlgebra` (immutable)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: TruncatedPolyAlgebra, terms: Mapping):
        self.alg = alg
        clean: Dict[Mono, Fraction] = {}
        n = alg.ngens
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError("monomial length does not match generator count")
            if any(e < 0 for e in m):
                raise ValueError("negative exponent")
            if any(m[i] > 1 for i in alg.odd):
                continue
            if sum(m) > alg.trunc:
                continue
            c = as_rational(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    # basic protocol
    def _check(self, other: "PolyElement"):
        if not isinstance(other, PolyElement):
            raise TypeError("expected a PolyElement")
        if other.alg != self.alg:
            raise ValueError("algebra mismatch")

    def _lift(self, other) -> "PolyElement":
        if isinstance(other, PolyElement):
            self._check(other)
            return other
        return self.alg.const(as_rational(other))

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return PolyElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return PolyElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyElement):
            c = as_rational(other)
            return PolyElement(self.alg, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        out: Dict[Mono, Fraction] = {}
        mul = self.alg.mono_mul
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s, m = mul(a, b)
                if s:
                    out[m] = out.get(m, 0) + s * ca * cb
        return PolyElement(self.alg, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PolyElement):
            return self.alg == other.alg and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.alg.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.alg, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"PolyElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=mono_key):
            c = self.terms[m]
            facs = []
            for e, g in zip(m, self.alg.gens):
                if e == 1:
                    facs.append(g.name)
                elif e > 1:
                    facs.append(f"{g.name}^{e}")
            body = "*".join(facs)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # structure
    def coefficient(self, m: Mono) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def parity(self) -> int:
        """Parity of a homogeneous element (raises if mixed)."""
        ps = {self.alg.mono_parity(m) for m in self.terms}
        if len(ps) > 1:
            raise ValueError("element has mixed parity")
        return ps.pop() if ps else 0

    def degree(self) -> int:
        """Cohomological degree of a homogeneous element (raises if mixed)."""
        ds = {self.alg.mono_degree(m) for m in self.terms}
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop() if ds else 0

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> int:
        """Lowest word degree present (``-1`` for zero)."""
        return min((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "PolyElement":
        return PolyElement(self.alg, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, D: int) -> "PolyElement":
        alg = self.alg.with_trunc(D)
        return PolyElement(alg, self.terms)

    def in_algebra(self, alg: TruncatedPolyAlgebra) -> "PolyElement":
        """Reinterpret in an algebra with the same generators (other truncation)."""
        if alg.gens != self.alg.gens:
            raise ValueError("generator lists differ")
        return PolyElement(alg, self.terms)

    def partial(self, name: str) -> "PolyElement":
        """Graded left derivative with respect to the generator ``name``."""
        if name not in self.alg.index:
            raise KeyError(f"unknown generator {name!r}")
        i = self.alg.index[name]
        odd = i in self.alg.odd
        out: Dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if not e:
                continue
            sign = 1
            if odd:
                before = sum(m[j] for j in self.alg.odd if j < i)
                sign = -1 if before % 2 else 1
            nm = m[:i] + (e - 1,) + m[i + 1:]
            out[nm] = out.get(nm, 0) + sign * e * c
        return PolyElement(self.alg, out)

    def substitute(self, values: Mapping[str, object], target: Optional[TruncatedPolyAlgebra] = None) -> "PolyElement":
        """Substitute generators by scalars or elements of ``target``.

        Generators not mentioned are mapped to the generator of the same name
        in ``target`` (which defaults to the current algebra).
        """
        target = target or self.alg
        images = []
        for g in self.alg.gens:
            if g.name in values:
                v = values[g.name]
                images.append(v if isinstance(v, PolyElement) else target.const(v))
            else:
                images.append(target.gen(g.name))
        out = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for img, e in zip(images, m):
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def to_json(self) -> dict:
        d = self.alg.to_json()
        d["terms"] = [
            {"mono": list(m), "coef": str(self.terms[m])} for m in sorted(self.terms, key=mono_key)
        ]
        return d

    @classmethod
    def from_json(cls, data: Mapping) -> "PolyElement":
        alg = TruncatedPolyAlgebra.from_json(data)
        return cls(alg, {tuple(t["mono"]): Fraction(t["coef"]) for t in data.get("terms", [])})


def multiply(a: PolyElement, b: PolyElement) -> PolyElement:
    return a * b


def partial_derivative(a: PolyElement, gen: str) -> PolyElement:
    return a.partial(gen)


# ---------------------------------------------------------------------------
# Kähler forms


FormKey = Tuple[Mono, Tuple[int, ...]]


def _insert_sign(i: int, subset: Tuple[int, ...]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Sign of dx_i ∧ dx_S written in sorted order (0 if i already in S)."""
    if i in subset:
        return 0, None
    before = sum(1 for s in subset if s < i)
    return (-1 if before % 2 else 1), tuple(sorted(subset + (i,)))


def _merge_sign(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    if set(a) & set(b):
        return 0, None
    inv = sum(1 for x in a for y in b if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


class KaehlerForm:
    """Differential form sum f_S dx_S on the even generators of an algebra.

    Keys are (monomial, sorted index tuple).  Coefficients are truncated at
    the algebra's degree D like any polynomial.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: TruncatedPolyAlgebra, terms: Mapping[FormKey, object]):
        if alg.odd:
            raise ValueError("Kähler forms are only modeled on even generators")
        self.alg = alg
        clean: Dict[FormKey, Fraction] = {}
        n = alg.ngens
        for (m, S), c in terms.items():
            m = tuple(m)
            S = tuple(S)
            if len(m) != n or sum(m) > alg.trunc:
                continue
            if len(set(S)) != len(S):
                continue
            if any(not 0 <= s < n for s in S):
                raise ValueError("form index out of range")
            sign = 1
            if list(S) != sorted(S):
                perm = sorted(range(len(S)), key=lambda k: S[k])
                inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
                sign = -1 if inv % 2 else 1
                S = tuple(sorted(S))
            c = as_rational(c) * sign
            if c:
                clean[(m, S)] = clean.get((m, S), 0) + c
                if not clean[(m, S)]:
                    del clean[(m, S)]
        self.terms = clean

    @classmethod
    def from_function(cls, f: PolyElement) -> "KaehlerForm":
        return cls(f.alg, {(m, ()): c for m, c in f.terms.items()})

    @classmethod
    def dx(cls, alg: TruncatedPolyAlgebra, name: str) -> "KaehlerForm":
        return cls(alg, {((0,) * alg.ngens, (alg.index[name],)): 1})

    def degrees(self) -> set:
        return {len(S) for (_, S) in self.terms}

    @property
    def form_degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return ds.pop() if ds else 0

    def __add__(self, other: "KaehlerForm"):
        if other.alg != self.alg:
            raise ValueError("algebra mismatch")
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return KaehlerForm(self.alg, t)

    def __neg__(self):
        return KaehlerForm(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KaehlerForm":
        c = as_rational(c)
        return KaehlerForm(self.alg, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, KaehlerForm) and self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        parts = []
        for (m, S), c in sorted(self.terms.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], mono_key(kv[0][0]))):
            f = str(PolyElement(self.alg, {m: c}))
            dx = "∧".join("d" + self.alg.gens[i].name for i in S)
            parts.append(f"({f})" + (" " + dx if dx else ""))
        return " + ".join(parts) if parts else "0"

    def wedge(self, other: "KaehlerForm") -> "KaehlerForm":
        if other.alg != self.alg:
            raise ValueError("algebra mismatch")
        out: Dict[FormKey, Fraction] = {}
        for (m1, S1), c1 in self.terms.items():
            for (m2, S2), c2 in other.terms.items():
                s, S = _merge_sign(S1, S2)
                if not s:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                if sum(m) > self.alg.trunc:
                    continue
                out[(m, S)] = out.get((m, S), 0) + s * c1 * c2
        return KaehlerForm(self.alg, out)

    def mul_function(self, f: PolyElement) -> "KaehlerForm":
        return KaehlerForm.from_function(f).wedge(self)

    def d(self) -> "KaehlerForm":
        return de_rham_d(self)


def de_rham_d(w: KaehlerForm) -> KaehlerForm:
    """Exterior derivative d(f dx_S) = sum_i (∂_i f) dx_i ∧ dx_S."""
    out: Dict[FormKey, Fraction] = {}
    alg = w.alg
    for (m, S), c in w.terms.items():
        for i, e in enumerate(m):
            if not e:
                continue
            s, S2 = _insert_sign(i, S)
            if not s:
                continue
            nm = m[:i] + (e - 1,) + m[i + 1:]
            out[(nm, S2)] = out.get((nm, S2), 0) + s * e * c
    return KaehlerForm(alg, out)


def form_basis(alg: TruncatedPolyAlgebra, k: int, max_deg: Optional[int] = None) -> List[FormKey]:
    """Basis (monomial, subset) of k-forms with coefficient degree <= max_deg."""
    mons = alg.monomials(max_deg=max_deg)
    subsets = list(itertools.combinations(range(alg.ngens), k))
    return [(m, S) for S in subsets for m in mons]


def factorial_weight(m: Mono) -> int:
    out = 1
    for e in m:
        out *= factorial(e)
    return out
