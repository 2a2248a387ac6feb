"""Standard bases for ideals and submodules of free modules.

The engine works with fraction-free integer elements.  A monomial ``x^a e_i``
is stored as its *ordering key*: ``(-i, <block keys of a>, |a|)``.  The key
is a linear function of ``(i, a)``, so multiplying by a monomial is a
component-wise sum of keys and comparing monomials is tuple comparison
(position over term, smaller positions first).

Reduction is Mora's weak normal form with the ecart strategy, which
terminates for local, global and mixed block orderings alike.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm
from operator import add, sub
from typing import Iterable, Sequence

from .ring import GLOBAL, MapGerm, Poly, RingCtx, RingError, VecPoly

INFINITE = math.inf


class StdBasisError(ValueError):
    pass


# ---------------------------------------------------------------------------
# engine


class _Engine:
    """Key layout helpers for one ring."""

    def __init__(self, ring: RingCtx):
        self.ring = ring
        slots = [0] * ring.nvars
        s = 1
        for idxs, _local in ring._bidx:
            s += 1  # the block's degree slot
            for i in reversed(idxs):
                slots[i] = s
                s += 1
        self.slots = tuple(slots)
        self.width = s + 1
        self._unkey: dict[tuple, tuple] = {}

    def key(self, pos: int, exp: tuple) -> tuple:
        return (-pos,) + self.ring.key(exp) + (sum(exp),)

    def unkey(self, k: tuple) -> tuple:
        r = self._unkey.get(k)
        if r is None:
            r = (-k[0], tuple(-k[s] for s in self.slots))
            if len(self._unkey) < 500_000:
                self._unkey[k] = r
        return r

    def mono_key(self, exp: tuple) -> tuple:
        return self.key(0, exp)


_ENGINES: dict[RingCtx, _Engine] = {}
_ENGINES_LOCK = threading.Lock()


def _engine(ring: RingCtx) -> _Engine:
    eng = _ENGINES.get(ring)
    if eng is None:
        with _ENGINES_LOCK:
            eng = _ENGINES.get(ring)
            if eng is None:
                eng = _ENGINES[ring] = _Engine(ring)
    return eng


def _normalize(d: dict) -> dict:
    """Divide out the content and make the leading coefficient positive."""
    if not d:
        return d
    g = gcd(*d.values())
    if d[max(d)] < 0:
        g = -g
    if g != 1:
        d = {k: c // g for k, c in d.items()}
    return d


class _Elt:
    __slots__ = ("terms", "lm", "pos", "exp", "lc", "ecart", "sugar", "tdeg")

    def __init__(self, eng: _Engine, terms: dict, sugar: int | None = None):
        self.terms = terms
        self.lm = max(terms)
        self.pos, self.exp = eng.unkey(self.lm)
        self.lc = terms[self.lm]
        top = max(k[-1] for k in terms)
        self.ecart = top - self.lm[-1]
        # degree of the homogenization and the power of t on its leading term
        self.sugar = top if sugar is None else max(sugar, top)
        self.tdeg = self.sugar - self.lm[-1]


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _combine(h: dict, hlm: tuple, g: _Elt) -> dict:
    """Cancel the leading term of ``h`` against ``g`` (fraction free)."""
    t = tuple(map(sub, hlm, g.lm))
    a = h[hlm]
    b = g.lc
    d = gcd(a, b)
    a //= d
    b //= d
    r = {k: b * c for k, c in h.items()} if b != 1 else dict(h)
    for k, c in g.terms.items():
        k2 = tuple(map(add, k, t))
        v = r.get(k2, 0) - a * c
        if v:
            r[k2] = v
        elif k2 in r:
            del r[k2]
    return _normalize(r)


def _spoly(eng: _Engine, f: _Elt, g: _Elt) -> dict:
    m = tuple(map(max, f.exp, g.exp))
    mk = eng.key(f.pos, m)
    tf = tuple(map(sub, mk, f.lm))
    tg = tuple(map(sub, mk, g.lm))
    a, b = f.lc, g.lc
    d = gcd(a, b)
    a //= d
    b //= d
    r: dict = {}
    for k, c in f.terms.items():
        r[tuple(map(add, k, tf))] = b * c
    for k, c in g.terms.items():
        k2 = tuple(map(add, k, tg))
        v = r.get(k2, 0) - a * c
        if v:
            r[k2] = v
        elif k2 in r:
            del r[k2]
    return _normalize(r)


def _truncate(h: dict, hc: dict) -> dict:
    return {k: c for k, c in h.items() if k[-1] < hc.get(-k[0], k[-1] + 1)}


def _homog_nf(eng: _Engine, h: dict, sugar: int, S: list[_Elt], hc: dict | None, homog: bool):
    """Reduce ``h`` inside its homogenization of degree ``sugar``.

    With ``homog`` a reducer must also divide the power of the homogenizing
    variable, so every step stays in one graded piece and no unit multiples
    are ever needed.  Without it this is plain Buchberger reduction.
    Returns the reduced dict and its (possibly raised) sugar.
    """
    if hc:
        h = _truncate(h, hc)
    while h:
        hlm = max(h)
        hpos, hexp = eng.unkey(hlm)
        room = sugar - hlm[-1]
        best = None
        for g in S:
            if g.pos != hpos or not _divides(g.exp, hexp):
                continue
            if homog and g.tdeg > room:
                continue
            if best is None or (g.tdeg, len(g.terms)) < (best.tdeg, len(best.terms)):
                best = g
        if best is None:
            return h, sugar
        if not homog:
            sugar = max(sugar, hlm[-1] - best.lm[-1] + best.sugar)
        h = _combine(h, hlm, best)
        if hc:
            h = _truncate(h, hc)
    return h, sugar


def _mora_nf(eng: _Engine, h: dict, T: list[_Elt], hc: dict | None = None) -> dict:
    """Weak normal form of ``h`` with respect to ``T`` (Mora, ecart strategy).

    ``hc`` maps a position to a degree ``D`` such that every monomial of degree
    ``>= D`` in that position already lies in the module; such terms are dropped.
    """
    own = False
    if hc:
        h = _truncate(h, hc)
    while h:
        hlm = max(h)
        hpos, hexp = eng.unkey(hlm)
        best = None
        for g in T:
            if g.pos == hpos and _divides(g.exp, hexp):
                if best is None or g.ecart < best.ecart:
                    best = g
                    if g.ecart == 0:
                        break
        if best is None:
            return h
        if best.ecart:
            hec = max(k[-1] for k in h) - hlm[-1]
            if best.ecart > hec:
                if not own:
                    T = list(T)
                    own = True
                T.append(_Elt(eng, h))
        h = _combine(h, hlm, best)
        if hc:
            h = _truncate(h, hc)
    return h


def _std(eng: _Engine, gens: Sequence[dict], known: Sequence[_Elt] = (), rank: int = 1) -> list[_Elt]:
    """Standard basis of ``known + gens``, not yet minimalized.

    ``known`` must be an unminimalized result of an earlier call.  For orderings
    with a local block this is Buchberger's algorithm on the homogenization
    (Lazard's method): dehomogenizing a homogeneous basis gives a standard
    basis, and reductions never multiply by units, which keeps exact
    coefficients small.  The product criterion is only sound for ideals, so it
    is used for rank 1 only.
    """
    S: list[_Elt] = list(known)
    pending: set[tuple[int, int]] = set()
    heap: list = []
    homog = not eng.ring.is_global()
    # highest-corner truncation, sound for fully local (degree) orderings only
    hc: dict | None = {} if eng.ring.is_local() else None

    def update_hc():
        if hc is None or hc:
            return
        if rank == 1:
            bound = _corner_degree(eng.ring.nvars, [e.exp for e in S])
            if bound is not None:
                hc[0] = bound
            return
        # With position over term, reducing one position spills into the later
        # ones, so only a bound valid for the whole quotient is safe: once every
        # position has a corner, its length l satisfies m^l O^r in M.
        total = 0
        for p in range(rank):
            c = _staircase_count(eng.ring.nvars, [e.exp for e in S if e.pos == p])
            if c == INFINITE:
                return
            total += c
        for p in range(rank):
            hc[p] = total

    def push_pairs(j: int):
        f = S[j]
        for i in range(j):
            g = S[i]
            if g.pos != f.pos:
                continue
            # product criterion: coprime leading monomials, t included
            if (rank == 1 and all(x == 0 or y == 0 for x, y in zip(f.exp, g.exp))
                    and min(f.tdeg, g.tdeg) == 0):
                continue
            m = tuple(map(max, f.exp, g.exp))
            sugar = sum(m) + max(f.tdeg, g.tdeg)
            heapq.heappush(heap, (sugar, sum(m), eng.key(f.pos, m), i, j))
            pending.add((i, j))

    def add(h: dict, sugar: int):
        S.append(_Elt(eng, h, sugar))
        push_pairs(len(S) - 1)
        update_hc()

    update_hc()
    for raw in gens:
        if not raw:
            continue
        h = _normalize(dict(raw))
        h, sugar = _homog_nf(eng, h, max(k[-1] for k in h), S, hc, homog)
        if h:
            add(h, sugar)

    while heap:
        sugar, _, mk, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        _, m = eng.unkey(mk)
        pos = S[i].pos
        top = max(S[i].tdeg, S[j].tdeg)
        skip = False
        for k, g in enumerate(S):
            if k == i or k == j or g.pos != pos:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if _divides(g.exp, m) and (not homog or g.tdeg <= top):
                skip = True
                break
        if skip:
            continue
        sp = _spoly(eng, S[i], S[j])
        if not sp:
            continue
        h, sugar = _homog_nf(eng, sp, sugar, S, hc, homog)
        if h:
            add(h, sugar)
    return S


def _corner_degree(n: int, leads: list[tuple]) -> int | None:
    """Smallest ``D`` with every monomial of degree ``>= D`` divisible by a lead, or None."""
    if any(not any(e) for e in leads):
        return 0
    for i in range(n):
        if not any(e[i] and not any(x for j, x in enumerate(e) if j != i) for e in leads):
            return None
    stairs = _staircase_list(n, leads)
    return max(sum(m) for m in stairs) + 1 if stairs else 0


def _minimalize(S: list[_Elt]) -> list[_Elt]:
    out = []
    for i, f in enumerate(S):
        redundant = False
        for j, g in enumerate(S):
            if i == j or g.pos != f.pos or not _divides(g.exp, f.exp):
                continue
            if g.exp != f.exp or j < i:
                redundant = True
                break
        if not redundant:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# conversion between public values and engine dicts


def _vec_to_dict(eng: _Engine, v: Sequence[Poly]) -> dict:
    den = 1
    for comp in v:
        for c in comp.terms.values():
            den = lcm(den, c.denominator)
    d: dict = {}
    for i, comp in enumerate(v):
        for e, c in comp.terms.items():
            d[eng.key(i, e)] = int(c * den)
    return d


def _dict_to_vec(eng: _Engine, d: dict, rank: int) -> list[Poly]:
    ring = eng.ring
    comps: list[dict] = [{} for _ in range(rank)]
    for k, c in d.items():
        pos, e = eng.unkey(k)
        comps[pos][e] = Fraction(c)
    return [Poly._raw(ring, t) for t in comps]


# ---------------------------------------------------------------------------
# handles


class _Handle:
    rank: int
    ring: RingCtx

    def __init__(self):
        self._lock = threading.Lock()
        self._std: list[_Elt] | None = None
        self._full: list[_Elt] | None = None

    def _dicts(self) -> list[dict]:
        raise NotImplementedError

    def _std_elts(self) -> list[_Elt]:
        if self._std is None:
            with self._lock:
                if self._std is None:
                    self._full = _std(_engine(self.ring), self._dicts(), rank=self.rank)
                    self._std = _minimalize(self._full)
        return self._std

    def _full_elts(self) -> list[_Elt]:
        """Unminimalized basis, suitable as ``known`` for extending the computation."""
        elts = self._std_elts()
        if self._full is None:
            with self._lock:
                if self._full is None:
                    self._full = _std(_engine(self.ring), [e.terms for e in elts], rank=self.rank)
        return self._full

    def _reducers(self) -> list[_Elt]:
        # The unminimalized basis offers reducers of smaller ecart, so Mora
        # reduction inserts fewer intermediate results into its reducer set.
        elts = self._std_elts()
        return self._full if self._full is not None else elts

    def is_standard(self) -> bool:
        return self._std is not None

    def leading_exponents(self) -> list[tuple[int, tuple]]:
        """``(position, exponent)`` of every leading monomial of the standard basis."""
        return [(e.pos, e.exp) for e in self._std_elts()]


class IdealHandle(_Handle):
    """Ideal given by generators; its standard basis is computed once on demand."""

    rank = 1

    def __init__(self, ring: RingCtx, gens: Iterable[Poly] = ()):
        super().__init__()
        gens = [g for g in gens]
        for g in gens:
            if not isinstance(g, Poly) or g.ring != ring:
                raise RingError("ideal generators must be polynomials of the ideal's ring")
        self.ring = ring
        self.gens = tuple(gens)

    def _dicts(self):
        eng = _engine(self.ring)
        return [_vec_to_dict(eng, [g]) for g in self.gens if g]

    def std(self) -> "IdealHandle":
        elts = self._std_elts()
        eng = _engine(self.ring)
        out = IdealHandle(self.ring, [_dict_to_vec(eng, e.terms, 1)[0] for e in elts])
        out._std = elts
        out._full = self._full
        return out

    def __repr__(self):
        return f"IdealHandle({', '.join(str(g) for g in self.gens)})"

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_ops(self, other, "sum")

    def __mul__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_ops(self, other, "product")

    def contains(self, p: Poly) -> bool:
        return is_member(p, self)

    def as_module(self) -> "SubmoduleHandle":
        return SubmoduleHandle(self.ring, 1, [VecPoly([g]) for g in self.gens])


class SubmoduleHandle(_Handle):
    """Submodule of the free module of rank ``rank``."""

    def __init__(self, ring: RingCtx, rank: int, gens: Iterable[VecPoly | Sequence[Poly]] = ()):
        super().__init__()
        if rank < 1:
            raise RingError("rank must be positive")
        vs = []
        for g in gens:
            v = g if isinstance(g, VecPoly) else VecPoly(g)
            if v.rank != rank:
                raise RingError(f"generator of length {v.rank} in a rank {rank} module")
            if v.ring != ring:
                raise RingError("generator lives in another ring")
            vs.append(v)
        self.ring = ring
        self.rank = rank
        self.gens = tuple(vs)

    def _dicts(self):
        eng = _engine(self.ring)
        return [_vec_to_dict(eng, g.components) for g in self.gens if not g.is_zero()]

    def std(self) -> "SubmoduleHandle":
        elts = self._std_elts()
        eng = _engine(self.ring)
        out = SubmoduleHandle(self.ring, self.rank, [VecPoly(_dict_to_vec(eng, e.terms, self.rank)) for e in elts])
        out._std = elts
        out._full = self._full
        return out

    def __repr__(self):
        return f"SubmoduleHandle(rank={self.rank}, {len(self.gens)} gens)"


def _with_std(handle: _Handle, elts: list[_Elt]) -> _Handle:
    handle._std = elts
    return handle


# ---------------------------------------------------------------------------
# public operations


def _as_dict_for(p, H: _Handle) -> dict:
    eng = _engine(H.ring)
    if isinstance(p, Poly):
        if H.rank != 1:
            raise RingError("polynomial tested against a module of rank > 1")
        if p.ring != H.ring:
            raise RingError("ring mismatch")
        return _vec_to_dict(eng, [p])
    v = p if isinstance(p, VecPoly) else VecPoly(p)
    if v.ring != H.ring:
        raise RingError("ring mismatch")
    if v.rank != H.rank:
        raise RingError("rank mismatch")
    return _vec_to_dict(eng, v.components)


def mora_normal_form(p: Poly | VecPoly, G: IdealHandle | SubmoduleHandle, use_std: bool = False):
    """Weak normal form of ``p`` against the generators of ``G``.

    The result ``r`` satisfies ``u*p = r + (element of <G>)`` for a unit ``u``;
    it is returned with coprime integer coefficients.  Pass a handle produced
    by :func:`std_basis` (or ``use_std=True``) to get ``r == 0`` exactly for
    members.
    """
    eng = _engine(G.ring)
    d = _as_dict_for(p, G)
    if use_std or G.is_standard():
        T = G._reducers()
    else:
        T = [_Elt(eng, x) for x in (_normalize(y) for y in G._dicts())]
    r = _mora_nf(eng, _normalize(d), T)
    comps = _dict_to_vec(eng, r, G.rank)
    return comps[0] if isinstance(p, Poly) else VecPoly(comps)


def std_basis(H):
    return H.std()


def is_member(p, H) -> bool:
    eng = _engine(H.ring)
    d = _as_dict_for(p, H)
    if not d:
        return True
    return not _mora_nf(eng, _normalize(d), H._reducers())


def ideal_ops(A: IdealHandle, B: IdealHandle, op: str) -> IdealHandle:
    if A.ring != B.ring:
        raise RingError("ring mismatch")
    if op == "sum":
        return IdealHandle(A.ring, list(A.gens) + list(B.gens))
    if op == "product":
        return IdealHandle(A.ring, [a * b for a in A.gens for b in B.gens])
    if op == "intersect":
        return _intersect(A, B)
    raise ValueError(f"unknown ideal operation {op!r}")


def _fresh_name(base: str, taken) -> str:
    name = base
    i = 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def _intersect(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    ring = A.ring
    t = _fresh_name("t", ring.index)
    big = RingCtx((t,) + ring.vars, [((t,), GLOBAL)] + list(ring.blocks))
    tv = big.var(t)
    gens = [tv * a.to_ring(big) for a in A.gens] + [(1 - tv) * b.to_ring(big) for b in B.gens]
    return eliminate(IdealHandle(big, gens), [t])


def quotient_by_element(J: IdealHandle, g: Poly) -> IdealHandle:
    """``(J : g)``, read off from the relations among ``g`` and the generators of ``J``."""
    if g.is_zero():
        raise StdBasisError("quotient by the zero element")
    if g.ring != J.ring:
        raise RingError("ring mismatch")
    K = _relation_module(J.ring, [g], list(J.gens))
    return IdealHandle(J.ring, [v[0] for v in K.gens])


def _relation_module(ring: RingCtx, ps: Sequence[Poly | VecPoly], js: Sequence[Poly | VecPoly]) -> SubmoduleHandle:
    """``{a in O^s : sum a_i p_i in <js>}`` with a standard basis attached."""
    s = len(ps)
    eng = _engine(ring)

    def comps(x):
        return list(x.components) if isinstance(x, VecPoly) else [x]

    r = len(comps(ps[0])) if ps else 1
    rank = r + s
    gens = []
    zero = ring.zero()
    for i, p in enumerate(ps):
        v = comps(p) + [zero] * s
        v[r + i] = ring.one()
        gens.append(_vec_to_dict(eng, v))
    for j in js:
        v = comps(j) + [zero] * s
        gens.append(_vec_to_dict(eng, v))
    elts = _minimalize(_std(eng, gens, rank=rank))
    keep = []
    for e in elts:
        if e.pos >= r:
            shifted = {}
            for k, c in e.terms.items():
                shifted[(k[0] + r,) + k[1:]] = c
            keep.append(shifted)
    out = SubmoduleHandle(ring, s, [VecPoly(_dict_to_vec(eng, d, s)) for d in keep])
    out._std = [_Elt(eng, d) for d in keep]
    return out


def syzygy(gens: Sequence[Poly] | Sequence[VecPoly]) -> SubmoduleHandle:
    """Relations ``(a_1..a_s)`` with ``sum a_i gens_i = 0``."""
    if not gens:
        raise StdBasisError("syzygies of an empty list")
    ring = gens[0].ring
    return _relation_module(ring, list(gens), [])


def _check_elimination_block(ring: RingCtx, drop: Sequence[str]):
    first, kind = ring.blocks[0]
    if set(first) != set(drop) or kind != GLOBAL:
        raise StdBasisError(
            f"variables {list(drop)} must form the leading, globally ordered block (got {ring!r})"
        )


def eliminate(H: IdealHandle, drop_vars: Sequence[str]) -> IdealHandle:
    """``H`` intersected with the subring of the remaining variables."""
    ring = H.ring
    _check_elimination_block(ring, drop_vars)
    drop_idx = [ring.index[v] for v in drop_vars]
    keep = [v for v in ring.vars if v not in set(drop_vars)]
    if not keep:
        raise StdBasisError("nothing left after elimination")
    sub = ring.sub_ring(keep)
    eng = _engine(ring)
    seng = _engine(sub)
    kept = []
    for e in H._std_elts():
        if any(e.exp[i] for i in drop_idx):
            continue
        p = _dict_to_vec(eng, e.terms, 1)[0].to_ring(sub)
        kept.append(p)
    out = IdealHandle(sub, kept)
    out._std = [_Elt(seng, _vec_to_dict(seng, [p])) for p in kept]
    return out


def _substitute_linear(gens: list[Poly], candidates: Sequence[str]) -> tuple[list[Poly], list[str]]:
    """Remove variables that occur in some generator only as ``c*x`` (with ``x``
    absent from the rest of that generator), substituting ``x = -rest/c``."""
    remaining = list(candidates)
    gens = [g for g in gens if g]
    changed = True
    while changed:
        changed = False
        for v in list(remaining):
            for gi, g in enumerate(gens):
                ring = g.ring
                idx = ring.index[v]
                hits = [(e, c) for e, c in g.terms.items() if e[idx]]
                if len(hits) != 1:
                    continue
                e, c = hits[0]
                if e[idx] != 1 or sum(e) != 1:
                    continue
                rest = g - Poly._raw(ring, {e: c})
                value = rest * (-1 / c)
                gens = [h.subs({v: value}) for j, h in enumerate(gens) if j != gi]
                gens = [h for h in gens if h]
                remaining.remove(v)
                changed = True
                break
            if changed:
                break
    return gens, remaining


def map_preimage(phi: MapGerm, I: IdealHandle | Sequence[Poly] | None = None) -> IdealHandle:
    """``(phi*)^-1(I + (icis equations))`` as an ideal of the target ring."""
    src, tgt = phi.source, phi.target
    gens_I = [] if I is None else list(I.gens if isinstance(I, IdealHandle) else I)
    for g in gens_I:
        if g.ring != src:
            raise RingError("ideal must live in the map's source ring")
    clash = set(src.vars) & set(tgt.vars)
    if clash:
        raise RingError(f"source and target share variable names {sorted(clash)}")
    big = RingCtx(src.vars + tgt.vars, [(src.vars, GLOBAL)] + list(tgt.blocks))
    graph = [big.var(y) - c.to_ring(big) for y, c in zip(tgt.vars, phi.components)]
    gens = graph + [h.to_ring(big) for h in phi.icis_equations] + [g.to_ring(big) for g in gens_I]
    gens, left = _substitute_linear(gens, src.vars)
    if left:
        # Localization is flat, so eliminating over polynomial rings and then
        # localizing gives the same ideal as a mixed ordering, without the
        # coefficient growth that Mora reduction suffers in the mixed case.
        ring = RingCtx(tuple(left) + tgt.vars, [(tuple(left), GLOBAL), (tgt.vars, GLOBAL)])
        res = eliminate(IdealHandle(ring, [g.to_ring(ring) for g in gens]), left)
        return IdealHandle(tgt, [g.to_ring(tgt) for g in res.gens])
    return IdealHandle(tgt, [g.to_ring(tgt) for g in gens])


def _require_local(ring: RingCtx):
    if not ring.is_local():
        raise StdBasisError("dimension counts need a fully local ring")


def _staircase_count(n: int, leads: list[tuple]) -> float:
    """Number of monomials in ``n`` variables divisible by none of ``leads``."""
    if any(all(x == 0 for x in e) for e in leads):
        return 0
    if n == 0:
        return 1
    bounds = []
    for i in range(n):
        b = [e[i] for e in leads if e[i] and all(x == 0 for j, x in enumerate(e) if j != i)]
        if not b:
            return INFINITE
        bounds.append(min(b))
    leads = [e for e in leads]

    def rec(i: int, prefix: list[int], active: list[tuple]) -> int:
        if i == n - 1:
            cap = min(e[i] for e in active)
            return cap
        total = 0
        for a in range(bounds[i]):
            prefix.append(a)
            nxt = [e for e in active if e[i] <= a]
            if any(all(x == 0 for x in e[i + 1:]) for e in nxt):
                prefix.pop()
                break
            total += rec(i + 1, prefix, nxt)
            prefix.pop()
        return total

    return rec(0, [], leads)


def _staircase_list(n: int, leads: list[tuple]) -> list[tuple]:
    if _staircase_count(n, leads) == INFINITE:
        raise StdBasisError("infinite staircase")
    if any(not any(e) for e in leads):
        return []
    out = []
    bounds = [min(e[i] for e in leads if e[i] and all(x == 0 for j, x in enumerate(e) if j != i)) for i in range(n)]

    def rec(i, prefix):
        if i == n:
            mono = tuple(prefix)
            if not any(all(x <= y for x, y in zip(e, mono)) for e in leads):
                out.append(mono)
            return
        for a in range(bounds[i]):
            rec(i + 1, prefix + [a])

    rec(0, [])
    return out


def vs_dimension(H: IdealHandle | SubmoduleHandle) -> float:
    """``dim_C`` of the quotient of the ring (or free module) by ``H``; ``math.inf`` if infinite."""
    _require_local(H.ring)
    return _quotient_dim(H)


def _quotient_dim(H: IdealHandle | SubmoduleHandle) -> float:
    """Staircase count for any ordering (for global orderings: the affine quotient)."""
    n = H.ring.nvars
    by_pos: dict[int, list[tuple]] = {i: [] for i in range(H.rank)}
    for pos, e in H.leading_exponents():
        by_pos[pos].append(e)
    total = 0
    for pos in range(H.rank):
        c = _staircase_count(n, by_pos[pos])
        if c == INFINITE:
            return INFINITE
        total += c
    return total


def standard_monomials(H: IdealHandle | SubmoduleHandle) -> list[tuple[int, tuple]]:
    """``(position, exponent)`` pairs outside the leading module (finite quotients only)."""
    _require_local(H.ring)
    n = H.ring.nvars
    by_pos: dict[int, list[tuple]] = {i: [] for i in range(H.rank)}
    for pos, e in H.leading_exponents():
        by_pos[pos].append(e)
    out = []
    for pos in range(H.rank):
        for m in _staircase_list(n, by_pos[pos]):
            out.append((pos, m))
    key = H.ring.key
    out.sort(key=lambda pm: (pm[0], sum(pm[1]), tuple(-x for x in key(pm[1]))))
    return out


def krull_dim_leading(H: IdealHandle | SubmoduleHandle) -> int:
    """Krull dimension of the quotient read off from the leading monomials (-1 for the unit ideal)."""
    n = H.ring.nvars
    by_pos: dict[int, list[tuple]] = {i: [] for i in range(H.rank)}
    for pos, e in H.leading_exponents():
        by_pos[pos].append(e)
    best = -1
    for pos in range(H.rank):
        leads = by_pos[pos]
        if any(all(x == 0 for x in e) for e in leads):
            continue
        supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
        for size in range(n, best, -1):
            if size <= best:
                break
            if any(all(not s <= set(S) for s in supports) for S in combinations(range(n), size)):
                best = max(best, size)
                break
    return best


def subquotient_dim(P: IdealHandle | SubmoduleHandle, J: IdealHandle | SubmoduleHandle, check: bool = True) -> float:
    """``dim_C P/J`` for ``J`` contained in ``P``."""
    if P.ring != J.ring or P.rank != J.rank:
        raise RingError("ring or rank mismatch")
    _require_local(P.ring)
    if check:
        for j in J.gens:
            if not is_member(j, P):
                raise StdBasisError(f"{j} is not in P; subquotient undefined")
    pg = [g for g in P.gens if not (g.is_zero() if isinstance(g, Poly) else g.is_zero())]
    if not pg:
        return 0
    K = presentation_kernel(P, J)
    return vs_dimension(K)


def presentation_kernel(P, J) -> SubmoduleHandle:
    """``K`` with ``P/J = O^s/K``, ``s`` the number of generators of ``P``."""
    pg = [g for g in P.gens if not g.is_zero()]
    return _relation_module(P.ring, pg, list(J.gens))


# ---------------------------------------------------------------------------
# Hilbert-Samuel function


@dataclass(frozen=True)
class HilbertSamuelData:
    values: tuple  # (t, length of M / q^(t+1) M)
    fitted: tuple  # coefficients c_0..c_d (Fractions) of the polynomial in t
    dimension: int
    multiplicity: int
    stabilization: int

    def polynomial_str(self, var: str = "t") -> str:
        parts = []
        for i, c in reversed(list(enumerate(self.fitted))):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts) if parts else "0"


def _power_gens(q: IdealHandle, t: int) -> list[Poly]:
    gens = [g for g in q.gens if g]
    if all(len(g) == 1 for g in gens):
        # monomial ideal: products of exponents, deduplicated
        seen = set()
        out = []
        for combo in combinations_with_replacement(range(len(gens)), t):
            e = tuple(map(sum, zip(*(next(iter(gens[i].terms)) for i in combo)))) if combo else q.ring.zero_exp
            if e not in seen:
                seen.add(e)
                out.append(Poly._raw(q.ring, {e: Fraction(1)}))
        return out
    out = []
    for combo in combinations_with_replacement(gens, t):
        p = q.ring.one()
        for g in combo:
            p = p * g
        out.append(p)
    return out


def _finite_differences(vals: list[int], d: int) -> list[int]:
    for _ in range(d):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals


def hilbert_samuel(module: IdealHandle | SubmoduleHandle, q: IdealHandle, t_max: int = 12, window: int = 3) -> HilbertSamuelData:
    """Samuel function ``t -> length(M / q^(t+1) M)`` of ``M = O^r / module``.

    The polynomial degree ``d`` is the smallest order whose finite differences
    are constant over the last ``window`` values; the multiplicity is that
    constant ``d``-th difference.
    """
    ring = module.ring
    _require_local(ring)
    if q.ring != ring:
        raise RingError("ring mismatch")
    r = module.rank
    eng = _engine(ring)
    base = module._full_elts()
    values = []
    for t in range(t_max + 1):
        extra = []
        for m in _power_gens(q, t + 1):
            d = _vec_to_dict(eng, [m])
            for pos in range(r):
                extra.append({(k[0] - pos,) + k[1:]: c for k, c in d.items()})
        elts = _std(eng, extra, known=base, rank=r)
        h = SubmoduleHandle(ring, r) if r > 1 else IdealHandle(ring)
        h._std = _minimalize(elts)
        val = vs_dimension(h)
        if val == INFINITE:
            raise StdBasisError(f"length of M/q^{t + 1}M is infinite: q is not primary to the support of M")
        values.append(int(val))
    n = len(values)
    for d in range(0, n):
        diffs = _finite_differences(values, d)
        if len(diffs) < window:
            break
        tail = diffs[-window:]
        if len(set(tail)) == 1:
            e = tail[0]
            if e < 0:
                continue
            # stabilization index: first t from which the d-th differences stay constant
            s = len(diffs) - 1
            while s > 0 and diffs[s - 1] == e:
                s -= 1
            fitted = _fit_polynomial(values, s, d)
            return HilbertSamuelData(tuple(enumerate(values)), fitted, d, e, s)
    raise StdBasisError(f"Samuel function did not stabilize up to t={t_max}; increase tMax")


def _fit_polynomial(values: list[int], start: int, d: int) -> tuple:
    """Power-basis coefficients of the degree ``d`` polynomial through
    ``(t, values[t])`` for ``t = start..start+d``."""
    pts = [(Fraction(t), Fraction(values[t])) for t in range(start, start + d + 1)]
    coeffs = [Fraction(0)] * (d + 1)
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            # multiply basis by (t - xj)
            nb = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nb[k + 1] += c
                nb[k] -= c * xj
            basis = nb
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return tuple(coeffs)
