"""Exact polynomial arithmetic over Q in rings with block monomial orderings.

A ring is a list of variable names split into blocks.  Each block is ordered
either globally (degree reverse lexicographic, ``1 < x``) or locally
(negative degree reverse lexicographic, ``1 > x``); blocks are compared in
the order given, so a ring with a global block followed by a local one is an
elimination ring for the global variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

LOCAL = "local"
GLOBAL = "global"

Exp = tuple  # exponent vector, one natural per ring variable


class RingError(ValueError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class RingCtx:
    """Variables plus a block ordering.

    ``blocks`` is a sequence of ``(names, kind)`` pairs, kind being ``"local"``
    or ``"global"``.  Rings compare equal when names and blocks agree.
    """

    def __init__(self, names: Sequence[str], blocks: Sequence[tuple[Sequence[str], str]]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names in {names}")
        index = {v: i for i, v in enumerate(names)}
        seen: set[str] = set()
        norm = []
        for bnames, kind in blocks:
            bnames = tuple(bnames)
            if not bnames:
                raise RingError("empty block")
            if kind not in (LOCAL, GLOBAL):
                raise RingError(f"unknown ordering kind {kind!r}")
            for v in bnames:
                if v not in index:
                    raise RingError(f"block variable {v!r} is not a ring variable")
                if v in seen:
                    raise RingError(f"variable {v!r} appears in two blocks")
                seen.add(v)
            norm.append((bnames, kind))
        if seen != set(names):
            missing = [v for v in names if v not in seen]
            raise RingError(f"variables {missing} belong to no block")
        self.vars = names
        self.index = index
        self.blocks = tuple(norm)
        self._bidx = tuple((tuple(index[v] for v in b), k == LOCAL) for b, k in norm)
        self._keys: dict[Exp, tuple] = {}
        self.zero_exp = (0,) * len(names)

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, RingCtx) and self.vars == other.vars and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.vars, self.blocks))

    def __repr__(self):
        parts = ", ".join(f"({','.join(b)}):{k}" for b, k in self.blocks)
        return f"RingCtx[{parts}]"

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_local(self) -> bool:
        return all(k == LOCAL for _, k in self.blocks)

    def is_global(self) -> bool:
        return all(k == GLOBAL for _, k in self.blocks)

    # -- ordering ---------------------------------------------------------
    def key(self, exp: Exp) -> tuple:
        """Sort key: ``a > b`` in the ring ordering iff ``key(a) > key(b)``."""
        k = self._keys.get(exp)
        if k is None:
            out = []
            for idxs, local in self._bidx:
                d = 0
                for i in idxs:
                    d += exp[i]
                out.append(-d if local else d)
                for i in reversed(idxs):
                    out.append(-exp[i])
            k = tuple(out)
            if len(self._keys) < 500_000:
                self._keys[exp] = k
        return k

    def compare(self, a: Exp, b: Exp) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    # -- constructors -----------------------------------------------------
    def var(self, name: str) -> "Poly":
        if name not in self.index:
            raise RingError(f"unknown variable {name!r}")
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly._raw(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(v) for v in self.vars]

    def const(self, c) -> "Poly":
        c = _as_fraction(c)
        return Poly._raw(self, {self.zero_exp: c} if c else {})

    def zero(self) -> "Poly":
        return Poly._raw(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def monomial(self, exp: Sequence[int], coeff=1) -> "Poly":
        return Poly(self, {tuple(exp): coeff})

    def poly(self, text: str) -> "Poly":
        """Parse ``text`` (``+ - * ^ /``, parentheses, rationals) into this ring."""
        from .parse import parse_poly

        return parse_poly(text, self)

    def __call__(self, text: str) -> "Poly":
        return self.poly(text)

    def maximal_ideal(self):
        from .stdbasis import IdealHandle

        return IdealHandle(self, self.gens())

    def sub_ring(self, keep: Sequence[str]) -> "RingCtx":
        """Ring on ``keep`` with the induced blocks (empty blocks dropped)."""
        keep_set = set(keep)
        names = [v for v in self.vars if v in keep_set]
        blocks = []
        for b, k in self.blocks:
            bb = [v for v in b if v in keep_set]
            if bb:
                blocks.append((bb, k))
        return RingCtx(names, blocks)


def ring_make(var_names: Sequence[str], blocks: Sequence[tuple[Sequence[str], str]] | None = None) -> RingCtx:
    """Build a ring; with ``blocks=None`` a single local block is used."""
    if blocks is None:
        blocks = [(tuple(var_names), LOCAL)]
    return RingCtx(var_names, blocks)


def local_ring(names: Sequence[str] | str) -> RingCtx:
    if isinstance(names, str):
        names = [s for s in names.replace(",", " ").split() if s]
    return RingCtx(names, [(names, LOCAL)])


def global_ring(names: Sequence[str] | str) -> RingCtx:
    if isinstance(names, str):
        names = [s for s in names.replace(",", " ").split() if s]
    return RingCtx(names, [(names, GLOBAL)])


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingCtx, terms: Mapping[Sequence[int], object] | None = None):
        self.ring = ring
        clean: dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != ring.nvars or any(x < 0 for x in e):
                raise RingError(f"bad exponent vector {e} for {ring}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingCtx, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        """Terms in strictly decreasing ring order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lm(self) -> Exp:
        if not self.terms:
            raise RingError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def lc(self) -> Fraction:
        return self.terms[self.lm()]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_exp, Fraction(0))

    def support_vars(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.ring.vars[i])
        return used

    def is_constant(self) -> bool:
        return all(e == self.ring.zero_exp for e in self.terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return self.ring.zero()
            return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return Poly._raw(self.ring, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- transformations --------------------------------------------------
    def diff(self, var: str) -> "Poly":
        return differentiate(self, var)

    def to_ring(self, ring: RingCtx) -> "Poly":
        """Re-express in ``ring`` by variable name; used variables must exist there."""
        if ring == self.ring:
            return self
        pos = []
        for i, v in enumerate(self.ring.vars):
            pos.append(ring.index.get(v))
        t = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise RingError(f"variable {self.ring.vars[i]!r} not in target ring")
                    ne[j] = x
            t[tuple(ne)] = c
        return Poly._raw(ring, t)

    def subs(self, values: Mapping[str, "Poly | int | Fraction"], ring: RingCtx | None = None) -> "Poly":
        """Substitute polynomials (over ``ring``) for some variables."""
        ring = ring or self.ring
        vals = []
        for v in self.ring.vars:
            if v in values:
                val = values[v]
                if not isinstance(val, Poly):
                    val = ring.const(val)
                elif val.ring != ring:
                    val = val.to_ring(ring)
                vals.append(val)
            else:
                vals.append(ring.var(v) if v in ring.index else None)
        return _evaluate(self, vals, ring)

    def primitive(self) -> "Poly":
        """Scale to coprime integer coefficients with leading coefficient positive."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = gcd(*nums)
        s = 1 if self.lc() > 0 else -1
        return Poly._raw(self.ring, {e: Fraction(int(c * den) // g * s) for e, c in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.lc())

    # -- printing ---------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _fmt_monomial(ring: RingCtx, e: Exp) -> str:
    parts = []
    for v, x in zip(ring.vars, e):
        if x == 1:
            parts.append(v)
        elif x:
            parts.append(f"{v}^{x}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _fmt_monomial(p.ring, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _evaluate(p: Poly, vals: list, ring: RingCtx) -> Poly:
    """Evaluate ``p`` with variable i replaced by ``vals[i]`` (a Poly over ``ring``)."""
    powers: list[dict[int, Poly]] = [{} for _ in vals]

    def power(i: int, n: int) -> Poly:
        cache = powers[i]
        if n not in cache:
            cache[n] = vals[i] ** n
        return cache[n]

    acc: dict[Exp, Fraction] = {}
    for e, c in p.terms.items():
        term = None
        for i, x in enumerate(e):
            if not x:
                continue
            if vals[i] is None:
                raise RingError(f"no value for variable {p.ring.vars[i]!r}")
            f = power(i, x)
            term = f if term is None else term * f
        if term is None:
            term = ring.one()
        for te, tc in term.terms.items():
            s = acc.get(te, 0) + c * tc
            if s:
                acc[te] = s
            else:
                acc.pop(te, None)
    return Poly._raw(ring, acc)


# ---------------------------------------------------------------------------
# operations


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if a.ring != b.ring:
        raise RingError(f"ring mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _lex_lm(p: Poly) -> Exp:
    return max(p.terms)


def exact_divide(a: Poly, b: Poly) -> Poly | None:
    """Return ``q`` with ``a == q * b`` in the polynomial ring, or None."""
    if a.ring != b.ring:
        raise RingError("ring mismatch")
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = a.ring
    lb = _lex_lm(b)
    cb = b.terms[lb]
    rem = dict(a.terms)
    quot: dict[Exp, Fraction] = {}
    while rem:
        la = max(rem)
        if any(x < y for x, y in zip(la, lb)):
            return None
        m = tuple(x - y for x, y in zip(la, lb))
        c = rem[la] / cb
        quot[m] = c
        for e, v in b.terms.items():
            ee = _add_exp(e, m)
            s = rem.get(ee, 0) - c * v
            if s:
                rem[ee] = s
            else:
                rem.pop(ee, None)
    return Poly._raw(ring, quot)


def differentiate(p: Poly, var: str) -> Poly:
    ring = p.ring
    if var not in ring.index:
        raise RingError(f"unknown variable {var!r}")
    i = ring.index[var]
    t = {}
    for e, c in p.terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            t[tuple(ne)] = c * e[i]
    return Poly._raw(ring, t)


@dataclass(frozen=True)
class VecPoly:
    """Element of a free module of rank ``len(components)``."""

    components: tuple

    def __init__(self, components: Iterable[Poly]):
        comps = tuple(components)
        if not comps:
            raise RingError("empty vector")
        r = comps[0].ring
        if any(c.ring != r for c in comps):
            raise RingError("vector components live in different rings")
        object.__setattr__(self, "components", comps)

    @property
    def ring(self) -> RingCtx:
        return self.components[0].ring

    @property
    def rank(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __add__(self, other: "VecPoly") -> "VecPoly":
        return VecPoly(a + b for a, b in zip(self, other))

    def __sub__(self, other: "VecPoly") -> "VecPoly":
        return VecPoly(a - b for a, b in zip(self, other))

    def __mul__(self, s) -> "VecPoly":
        return VecPoly(c * s for c in self)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    @staticmethod
    def unit(ring: RingCtx, rank: int, i: int, coeff: Poly | None = None) -> "VecPoly":
        comps = [ring.zero()] * rank
        comps[i] = coeff if coeff is not None else ring.one()
        return VecPoly(comps)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self) + "]"


@dataclass(frozen=True)
class MapGerm:
    """A germ ``f: (X, 0) -> (C^p, 0)``; ``icis_equations`` cut out X (may be empty)."""

    source: RingCtx
    target: RingCtx
    components: tuple
    icis_equations: tuple = field(default=())

    def __post_init__(self):
        comps = tuple(self.components)
        eqs = tuple(self.icis_equations)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "icis_equations", eqs)
        if len(comps) != self.target.nvars:
            raise RingError(f"{len(comps)} components for {self.target.nvars} target variables")
        for p in comps + eqs:
            if p.ring != self.source:
                raise RingError("map data must live in the source ring")
            if p.constant_term():
                raise RingError(f"{p} does not vanish at the origin")

    @property
    def n_source(self) -> int:
        return self.source.nvars

    def pullback(self, p: Poly) -> Poly:
        return substitute(p, self)


def substitute(p: Poly, phi: MapGerm) -> Poly:
    """Pull ``p`` back along ``phi`` (target variable j -> component j)."""
    if p.ring != phi.target:
        raise RingError("polynomial does not live in the map's target ring")
    return _evaluate(p, list(phi.components), phi.source)


def jacobian_matrix(components: Sequence[Poly], var_names: Sequence[str]) -> list[list[Poly]]:
    if components:
        r = components[0].ring
        if any(c.ring != r for c in components):
            raise RingError("ring mismatch")
    return [[differentiate(c, v) for v in var_names] for c in components]


def determinant(m: Sequence[Sequence[Poly]]) -> Poly:
    """Cofactor expansion along the first row (matrices here are tiny)."""
    n = len(m)
    if n == 0:
        raise RingError("empty matrix")
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0].ring.zero()


def minors(m: Sequence[Sequence[Poly]], size: int) -> list[Poly]:
    """All ``size`` x ``size`` minors, row subsets outer, column subsets inner,
    both in lexicographic order; each minor is the plain determinant of the
    selected submatrix."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if size < 1 or size > min(rows, cols):
        raise RingError(f"minor size {size} out of range for a {rows}x{cols} matrix")
    out = []
    for rs in combinations(range(rows), size):
        for cs in combinations(range(cols), size):
            out.append(determinant([[m[r][c] for c in cs] for r in rs]))
    return out


def _frac_det(a: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in a]
    n = len(a)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            if a[r][i]:
                f = a[r][i] / a[i][i]
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return det


@dataclass(frozen=True)
class LinearChange:
    """Invertible integer matrix acting on a tuple of variables or polynomials."""

    matrix: tuple
    names: tuple
    seed: int

    def apply_to_tuple(self, items: Sequence[Poly]) -> list[Poly]:
        """Return ``A @ items``."""
        out = []
        for row in self.matrix:
            acc = items[0].ring.zero()
            for a, p in zip(row, items):
                if a:
                    acc = acc + p * a
            out.append(acc)
        return out

    def apply_to_poly(self, p: Poly) -> Poly:
        """Substitute ``names[i] -> sum_j A[i][j] * names[j]``."""
        ring = p.ring
        gens = [ring.var(v) for v in self.names]
        new = dict(zip(self.names, self.apply_to_tuple(gens)))
        return p.subs(new)


def random_linear_change(ring: RingCtx | None, names: Sequence[str], seed: int, bound: int = 5) -> LinearChange:
    """Seeded random invertible integer matrix with entries in ``[-bound, bound]``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if ring is not None:
        for v in names:
            if v not in ring.index:
                raise RingError(f"unknown variable {v!r}")
    rng = random.Random(seed)
    n = len(names)
    while True:
        mat = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if n == 0 or _frac_det([[Fraction(x) for x in row] for row in mat]):
            return LinearChange(tuple(tuple(r) for r in mat), tuple(names), seed)


@dataclass(frozen=True)
class Weights:
    weights: tuple  # positive integers, one per variable
    degrees: tuple  # weighted degree of each input polynomial

    @property
    def degree(self) -> int:
        return self.degrees[0]


def weighted_homogeneous_weights(p: Poly | Sequence[Poly], target_weights: Sequence[Sequence[int]] | None = None) -> Weights | None:
    """Find positive integer weights making every polynomial weighted homogeneous.

    With a list of polynomials the weights are shared and each polynomial gets
    its own degree.  Among all solutions the one minimising the sum of the
    variable weights (with every weight >= 1) is chosen, scaled to the smallest
    integer vector.  Returns None when no positive solution exists.
    """
    polys = [p] if isinstance(p, Poly) else list(p)
    polys = [q for q in polys if not q.is_zero()]
    if not polys:
        raise RingError("zero polynomial has no weights")
    ring = polys[0].ring
    n = ring.nvars
    m = len(polys)
    # unknowns: w_0..w_{n-1}, d_0..d_{m-1}
    rows = []
    for j, q in enumerate(polys):
        for e in q.terms:
            row = [Fraction(x) for x in e] + [Fraction(0)] * m
            row[n + j] = Fraction(-1)
            rows.append(row)
    sol = _positive_solution(rows, n + m, n)
    if sol is None:
        return None
    den = lcm(*(x.denominator for x in sol))
    ints = [int(x * den) for x in sol]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    w = tuple(ints[:n])
    d = tuple(ints[n:])
    # exact recheck
    for q, deg in zip(polys, d):
        for e in q.terms:
            if sum(a * b for a, b in zip(w, e)) != deg:
                return None
    return Weights(w, d)


def _positive_solution(rows: list[list[Fraction]], nunk: int, nweights: int) -> list[Fraction] | None:
    """Exact LP: minimise sum of the first ``nweights`` unknowns subject to
    ``rows @ x == 0`` and every unknown >= 1."""
    from sympy import Eq, Rational, symbols
    from sympy.solvers.simplex import InfeasibleLPError, lpmin

    xs = symbols(f"w0:{nunk}")
    cons = []
    seen = set()
    for row in rows:
        t = tuple(row)
        if t in seen:
            continue
        seen.add(t)
        expr = sum(Rational(c.numerator, c.denominator) * x for c, x in zip(row, xs) if c)
        if expr != 0:
            cons.append(Eq(expr, 0))
    cons += [x >= 1 for x in xs]
    obj = sum(xs[:nweights])
    try:
        _, sol = lpmin(obj, cons)
    except InfeasibleLPError:
        return None
    return [Fraction(int(sol[x].p), int(sol[x].q)) for x in xs]
