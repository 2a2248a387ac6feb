"""Classical invariants of isolated complete intersection singularities and of
map-germs: validation, Milnor and Tjurina numbers, K_e-codimension."""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Sequence

from .errors import GenericityFailure, NotApplicable
from .ring import MapGerm, Poly, RingCtx, RingError, VecPoly, jacobian_matrix, minors, random_linear_change
from .stdbasis import IdealHandle, SubmoduleHandle, krull_dim_leading, standard_monomials, vs_dimension


@dataclass(frozen=True)
class IcisGerm:
    ring: RingCtx
    equations: tuple
    is_complete_intersection: bool
    has_isolated_singularity: bool
    krull_dimension: int

    @property
    def k(self) -> int:
        return len(self.equations)

    @property
    def dimension(self) -> int:
        """``n = #vars - #equations`` (meaningful for complete intersections)."""
        return self.ring.nvars - len(self.equations)

    @property
    def is_icis(self) -> bool:
        return self.is_complete_intersection and self.has_isolated_singularity

    def require_icis(self):
        if not self.is_complete_intersection:
            raise NotApplicable(
                f"not a complete intersection: dimension {self.krull_dimension} with "
                f"{self.k} equations in {self.ring.nvars} variables"
            )
        if not self.has_isolated_singularity:
            raise NotApplicable("singular locus is not isolated")
        return self


@dataclass(frozen=True)
class MilnorResult:
    mu: int
    method: str  # "hypersurface" or "le-greuel"
    chain: tuple = ()  # per-step dicts: m, dim of O/(I(g^(m-1)) + R(g^(m)))
    seed: int | None = None
    matrix: tuple | None = None
    attempts: int = 1


def _check_origin(polys: Sequence[Poly]):
    for p in polys:
        if p.constant_term():
            raise RingError(f"{p} does not vanish at the origin")


def validate_icis(equations: Sequence[Poly], ring: RingCtx | None = None) -> IcisGerm:
    """Complete-intersection and isolated-singularity tests.

    The singular locus is cut out by the equations and the ``c``-minors of the
    jacobian, ``c`` being the codimension of the germ.
    """
    eqs = tuple(equations)
    if ring is None:
        if not eqs:
            raise RingError("need a ring when no equations are given")
        ring = eqs[0].ring
    for e in eqs:
        if e.ring != ring:
            raise RingError("equations live in different rings")
    _check_origin(eqs)
    if not ring.is_local():
        raise RingError("ICIS validation needs a fully local ring")
    N = ring.nvars
    I = IdealHandle(ring, eqs)
    dim = krull_dim_leading(I) if eqs else N
    ci = dim == N - len(eqs)
    c = N - dim
    if c <= 0 or dim < 0:
        isolated = True  # ambient space or empty germ
    else:
        jac = jacobian_matrix(list(eqs), ring.vars)
        sing = IdealHandle(ring, list(eqs) + minors(jac, c))
        isolated = vs_dimension(sing) != inf
    return IcisGerm(ring, eqs, ci, isolated, dim)


def jacobian_ideal(g: Poly, var_names: Sequence[str] | None = None) -> IdealHandle:
    names = g.ring.vars if var_names is None else var_names
    return IdealHandle(g.ring, [g.diff(v) for v in names])


def milnor_hypersurface(g: Poly) -> MilnorResult:
    if g.constant_term():
        raise RingError(f"{g} does not vanish at the origin")
    d = vs_dimension(jacobian_ideal(g))
    if d == inf:
        raise NotApplicable("non-isolated singularity: dim O/J(g) is infinite")
    return MilnorResult(int(d), "hypersurface", ({"m": 1, "dim": int(d)},))


def _le_greuel_terms(ring: RingCtx, gs: list[Poly]):
    """``dim O/(I(g^(m-1)) + R(g^(m)))`` for ``m = 1..k``; None when a truncation fails."""
    N = ring.nvars
    dims = []
    for m in range(1, len(gs) + 1):
        head = gs[:m]
        if krull_dim_leading(IdealHandle(ring, head)) != N - m:
            return None, f"g^({m}) does not cut out a complete intersection of dimension {N - m}"
        R = minors(jacobian_matrix(head, ring.vars), m)
        d = vs_dimension(IdealHandle(ring, gs[: m - 1] + R))
        if d == inf:
            return None, f"dim O/(I(g^({m - 1})) + R(g^({m}))) is infinite"
        dims.append(int(d))
    return dims, None


def milnor_icis(X: IcisGerm, seed: int = 0, bound: int = 5, retries: int = 10) -> MilnorResult:
    """Milnor number via the alternating Le-Greuel sum after a random linear
    change of the equations; the change is resampled until every truncation
    passes the checks."""
    X.require_icis()
    ring = X.ring
    gs = list(X.equations)
    k = len(gs)
    if k == 0:
        return MilnorResult(0, "le-greuel", (), seed)
    names = [f"g{i + 1}" for i in range(k)]
    failures = []
    for attempt in range(max(1, retries)):
        sub_seed = seed * 1_000_003 + attempt
        change = random_linear_change(None, names, sub_seed, bound)
        mixed = change.apply_to_tuple(gs)
        dims, why = _le_greuel_terms(ring, mixed)
        if dims is None:
            failures.append({"attempt": attempt, "seed": sub_seed, "matrix": change.matrix, "reason": why})
            continue
        mu = sum((-1) ** (k - m) * d for m, d in enumerate(dims, start=1))
        chain = tuple({"m": m, "dim": d} for m, d in enumerate(dims, start=1))
        return MilnorResult(mu, "le-greuel", chain, sub_seed, change.matrix, attempt + 1)
    raise GenericityFailure(f"no generic linear change found in {retries} attempts", failures)


def tjurina_hypersurface(g: Poly) -> int:
    d = vs_dimension(IdealHandle(g.ring, [g] + [g.diff(v) for v in g.ring.vars]))
    if d == inf:
        raise NotApplicable("non-isolated singularity: Tjurina number is infinite")
    return int(d)


def _k_tangent(ring: RingCtx, comps: Sequence[Poly], relations: Sequence[Poly]) -> SubmoduleHandle:
    """Jacobian columns plus ``r * e_j`` for every relation ``r`` and position ``j``."""
    p = len(comps)
    gens = []
    jac = jacobian_matrix(list(comps), ring.vars)
    for j in range(ring.nvars):
        gens.append(VecPoly([jac[i][j] for i in range(p)]))
    for r in relations:
        for j in range(p):
            gens.append(VecPoly.unit(ring, p, j, r))
    return SubmoduleHandle(ring, p, gens)


def tjurina_icis(X: IcisGerm) -> int:
    """``dim T^1`` of the ICIS: ``O^k`` modulo jacobian columns and ``g_i e_j``."""
    if not X.equations:
        return 0
    T = _k_tangent(X.ring, X.equations, X.equations)
    d = vs_dimension(T)
    if d == inf:
        raise NotApplicable("T^1 is infinite dimensional: not an isolated complete intersection")
    return int(d)


def codim_Ke(f: MapGerm) -> tuple[int, list[VecPoly]]:
    """K_e-codimension and a monomial basis of the normal space."""
    if f.icis_equations:
        raise NotApplicable("K_e-codimension is computed for smooth sources only")
    ring = f.source
    if not ring.is_local():
        raise RingError("source ring must be local")
    T = _k_tangent(ring, f.components, f.components)
    d = vs_dimension(T)
    if d == inf:
        raise NotApplicable("not K-finite: the normal space is infinite dimensional")
    basis = []
    p = len(f.components)
    for pos, e in standard_monomials(T):
        basis.append(VecPoly.unit(ring, p, pos, ring.monomial(e)))
    return int(d), basis


def ramification_ideal(f: MapGerm) -> IdealHandle:
    """Maximal minors of the jacobian of the components (ICIS equations appended as rows)."""
    rows = list(f.components) + list(f.icis_equations)
    jac = jacobian_matrix(rows, f.source.vars)
    c = min(len(rows), f.source.nvars)
    return IdealHandle(f.source, minors(jac, c))
