"""Image equations, conductors and the Jacobian module M(g) of map-germs
``f: (X, 0) -> (C^(n+1), 0)`` defined on an ICIS ``X = V(h_1..h_k)``.

The map is lifted to ``fhat = (f~, h): (C^(n+k), 0) -> (C^(n+1+k), 0)``,
which has a smooth source.  With ``ghat`` the image equation of ``fhat``,

    N(ghat) = fhat*^-1(J(ghat) O_(n+k)) / J_y(ghat),   M(g) = N(ghat) / (z) N(ghat),

where ``J_y`` only differentiates in the first ``n+1`` target variables and
``z`` are the remaining ``k`` target variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency, NotApplicable
from .invariants import IcisGerm, validate_icis
from .ring import (
    GLOBAL,
    LOCAL,
    MapGerm,
    Poly,
    RingCtx,
    RingError,
    determinant,
    exact_divide,
    jacobian_matrix,
    weighted_homogeneous_weights,
)
from .stdbasis import (
    IdealHandle,
    StdBasisError,
    hilbert_samuel,
    HilbertSamuelData,
    is_member,
    krull_dim_leading,
    map_preimage,
    presentation_kernel,
    quotient_by_element,
    subquotient_dim,
    vs_dimension,
)


def _fresh(base: str, count: int, taken) -> list[str]:
    out = []
    i = 1
    while len(out) < count:
        name = f"{base}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


@dataclass(frozen=True)
class MondProblem:
    X: IcisGerm  # source ICIS (k = 0 for a smooth source)
    f: MapGerm  # X -> C^(n+1); icis_equations are the h_i
    fhat: MapGerm  # C^(n+k) -> C^(n+1+k), components f~ then h

    @property
    def n(self) -> int:
        return self.X.dimension

    @property
    def k(self) -> int:
        return self.X.k

    @property
    def y_names(self) -> tuple:
        return self.f.target.vars

    @property
    def z_names(self) -> tuple:
        return self.fhat.target.vars[len(self.f.target.vars):]


def make_problem(
    source: RingCtx,
    map_components: Sequence[Poly],
    icis: Sequence[Poly] = (),
    target_names: Sequence[str] | None = None,
    z_names: Sequence[str] | None = None,
) -> MondProblem:
    """Validate the data and build ``f`` and its lift ``fhat``."""
    if not source.is_local():
        raise RingError("source ring must be local")
    icis = tuple(icis)
    X = validate_icis(icis, source)
    if icis:
        X.require_icis()
    n = X.dimension
    comps = tuple(map_components)
    if len(comps) != n + 1:
        raise NotApplicable(f"the map must have n+1 = {n + 1} components (got {len(comps)})")
    taken = set(source.vars)
    if target_names is None:
        target_names = _fresh("Y", n + 1, taken)
    target_names = tuple(target_names)
    taken |= set(target_names)
    if z_names is None:
        z_names = _fresh("Z", X.k, taken)
    z_names = tuple(z_names)
    if len(z_names) != X.k:
        raise RingError("need one lift variable per ICIS equation")
    target = RingCtx(target_names, [(target_names, LOCAL)])
    all_t = target_names + z_names
    target_hat = RingCtx(all_t, [(all_t, LOCAL)])
    f = MapGerm(source, target, comps, icis)
    fhat = MapGerm(source, target_hat, comps + icis)
    d = vs_dimension(IdealHandle(source, list(fhat.components)))
    if d == math.inf:
        raise NotApplicable("the map is not finite: O/(f~, h) is infinite dimensional")
    return MondProblem(X, f, fhat)


# ---------------------------------------------------------------------------
# image equation


def normalize_equation(p: Poly) -> Poly:
    """Drop unit factors (nonzero constant term), then make primitive with a
    positive leading coefficient."""
    import sympy

    ring = p.ring
    syms = sympy.symbols(ring.vars)
    if not isinstance(syms, tuple):
        syms = (syms,)
    expr = _to_sympy(p, syms)
    _, factors = sympy.factor_list(expr, *syms)
    keep = ring.one()
    for fac, mult in factors:
        q = _from_sympy(fac, syms, ring)
        if q.constant_term():
            continue
        keep = keep * q**mult
    if keep.is_constant():
        raise NotApplicable("image equation is a unit")
    return keep.primitive()


def _to_sympy(p: Poly, syms):
    import sympy

    out = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, x in zip(syms, e):
            if x:
                term *= s**x
        out += term
    return out


def _from_sympy(expr, syms, ring: RingCtx) -> Poly:
    import sympy

    P = sympy.Poly(expr, *syms)
    terms = {}
    for mon, c in P.terms():
        c = sympy.Rational(c)
        terms[tuple(mon)] = Fraction(int(c.p), int(c.q))
    return Poly(ring, terms)


def kernel_generator(phi: MapGerm) -> Poly:
    K = map_preimage(phi)
    gens = K.std().gens
    if len(gens) != 1:
        raise NotApplicable(f"kernel of the pullback is not principal ({len(gens)} generators)")
    return normalize_equation(gens[0])


def image_equation(p: MondProblem) -> tuple[Poly, Poly]:
    """``(g, ghat)``: ``ghat`` generates the kernel of ``fhat*`` and ``g = ghat(y, 0)``."""
    ghat = kernel_generator(p.fhat)
    g = specialize(ghat, p)
    if g.is_zero():
        raise NotApplicable("image is not a hypersurface through the origin (g = 0)")
    return g, ghat


def specialize(q: Poly, p: MondProblem) -> Poly:
    """Set the lift variables to zero and move to the target ring of ``f``."""
    return q.subs({z: 0 for z in p.z_names}).to_ring(p.f.target)


# ---------------------------------------------------------------------------
# conductor and Fitting ideal


def _piene_lambda(fhat: MapGerm, ghat: Poly, index: int) -> Poly | None:
    """lambda from row ``index`` (0-based); None when that minor vanishes."""
    src = fhat.source
    jac = jacobian_matrix(list(fhat.components), src.vars)
    rows = jac[:index] + jac[index + 1:]
    det = determinant(rows)
    if det.is_zero():
        return None
    num = fhat.pullback(ghat.diff(fhat.target.vars[index]))
    if (index + 1) % 2:
        det = -det
    lam = exact_divide(num, det)
    if lam is None:
        raise InternalInconsistency(f"conductor division failed at row {index + 1}")
    return lam


def conductor_lambda(p: MondProblem, ghat: Poly, cross_check: bool = True) -> Poly:
    """Generator ``lambda`` of the conductor, from the first row whose
    complementary minor is nonzero; a second row, when available, must agree."""
    fhat = p.fhat
    if len(fhat.components) != fhat.source.nvars + 1:
        raise NotApplicable("conductor formula needs a map into one dimension higher")
    found = []
    for i in range(len(fhat.components)):
        lam = _piene_lambda(fhat, ghat, i)
        if lam is None:
            continue
        found.append((i, lam))
        if len(found) == 2 or not cross_check:
            break
    if not found:
        raise NotApplicable("all maximal minors of d(fhat) vanish")
    if len(found) == 2 and found[0][1] != found[1][1]:
        raise InternalInconsistency(
            f"conductor generators disagree: row {found[0][0] + 1} gives {found[0][1]}, "
            f"row {found[1][0] + 1} gives {found[1][1]}"
        )
    return found[0][1]


def conductor_lambdas(p: MondProblem, ghat: Poly) -> list[tuple[int, Poly]]:
    """``(1-based row, lambda)`` for every row with a nonzero complementary minor."""
    out = []
    for i in range(len(p.fhat.components)):
        lam = _piene_lambda(p.fhat, ghat, i)
        if lam is not None:
            out.append((i + 1, lam))
    return out


@dataclass
class FittingResult:
    ideal: IdealHandle
    krull_dimension: int
    expected_dimension: int
    warnings: list = field(default_factory=list)


def fitting_first(p: MondProblem, lam: Poly) -> FittingResult:
    F1 = map_preimage(p.fhat, IdealHandle(p.fhat.source, [lam]))
    d = krull_dim_leading(F1)
    expected = p.n + p.k - 1
    warnings = []
    if d >= 0 and d != expected:
        warnings.append(f"first Fitting ideal has dimension {d}, expected {expected}")
    return FittingResult(F1, d, expected, warnings)


# ---------------------------------------------------------------------------
# M(g)


@dataclass
class MgResult:
    dim: int | float  # dim N(ghat) / z N(ghat) = dim P / (J_y + z P)
    P: IdealHandle  # preimage of J(ghat) O_(n+k), in the target ring of fhat
    J: IdealHandle  # J_y(ghat)
    P0: IdealHandle  # P with the lift variables set to 0
    J0: IdealHandle
    specialized_dim: int | float | None = None  # dim P|0 / J|0; a lower bound, equal when z is regular on O/P


def jacobian_module_Mg(p: MondProblem, ghat: Poly | None = None, cross_check: bool = True) -> MgResult:
    if ghat is None:
        _, ghat = image_equation(p)
    fhat = p.fhat
    pulled = [fhat.pullback(ghat.diff(v)) for v in fhat.target.vars]
    P = map_preimage(fhat, IdealHandle(fhat.source, pulled))
    J = IdealHandle(fhat.target, [ghat.diff(v) for v in p.y_names])
    for j in J.gens:
        if not is_member(j, P):
            raise InternalInconsistency(f"J_y(ghat) generator {j} is not in the preimage")
    tgt = p.f.target
    P0 = IdealHandle(tgt, [specialize(q, p) for q in P.gens])
    J0 = IdealHandle(tgt, [specialize(q, p) for q in J.gens])
    if not p.k:
        dim = subquotient_dim(P0, J0)
        return MgResult(dim, P, J, P0, J0, dim)
    zP = [fhat.target.var(z) * q for z in p.z_names for q in P.gens]
    dim = subquotient_dim(P, IdealHandle(fhat.target, list(J.gens) + zP), check=False)
    spec = None
    if cross_check:
        try:
            spec = subquotient_dim(P0, J0)
        except StdBasisError as exc:
            raise InternalInconsistency(f"specialized J_y(ghat) not contained in specialized preimage: {exc}")
        if spec > dim:
            raise InternalInconsistency(f"dim P|0/J|0 = {spec} exceeds dim P/(J_y + zP) = {dim}")
    return MgResult(dim, P, J, P0, J0, spec)


def smooth_source_Mg(f: MapGerm, g: Poly) -> int | float:
    """``dim f*^-1(J(g) O_n) / J(g)`` for a map with smooth source."""
    if f.icis_equations:
        raise NotApplicable("smooth-source formula needs an empty ICIS")
    J = IdealHandle(f.target, [g.diff(v) for v in f.target.vars])
    P = map_preimage(f, IdealHandle(f.source, [f.pullback(q) for q in J.gens]))
    return subquotient_dim(P, J)


def torsion_Kg(g: Poly) -> tuple[int, tuple | None]:
    """``(dim K(g), weights)``; ``K(g) = ((g) + J(g)) / J(g)``, of dimension ``dim O/(J(g) : g)``."""
    if g.is_zero():
        raise RingError("K(g) of the zero polynomial")
    w = weighted_homogeneous_weights(g)
    if w is not None:
        return 0, w.weights
    J = IdealHandle(g.ring, [g.diff(v) for v in g.ring.vars])
    d = vs_dimension(quotient_by_element(J, g))
    if d == math.inf:
        raise NotApplicable("dim K(g) is infinite: g does not define an isolated image singularity")
    return int(d), None


def torsion_Kg_difference(g: Poly) -> int | float:
    """Second route to ``dim K(g)``: ``dim O/J(g) - dim O/((g) + J(g))``."""
    J = [g.diff(v) for v in g.ring.vars]
    a = vs_dimension(IdealHandle(g.ring, J))
    b = vs_dimension(IdealHandle(g.ring, [g] + J))
    if a == math.inf or b == math.inf:
        return math.inf
    return int(a - b)


# ---------------------------------------------------------------------------
# stable unfoldings and the multiplicity certificate


@dataclass
class MrelResult:
    e: int
    dim_Mg: int
    cm_pass: bool
    hilbert: HilbertSamuelData
    G: Poly
    r: int
    F: MapGerm


def unfolding_map(p: MondProblem, params: Sequence[str] = (), unfolded: Sequence[Poly] | None = None) -> MapGerm:
    """``F(x, u) = (fhat_u(x), u)`` over the source ring extended by ``params``.

    ``unfolded`` lists the ``n+1+k`` unfolded components; they must reduce to
    ``fhat`` at ``u = 0``.
    """
    src = p.fhat.source
    params = tuple(params)
    if not params:
        if unfolded is not None:
            raise RingError("unfolded components given without parameters")
        return p.fhat
    if unfolded is None or len(unfolded) != len(p.fhat.components):
        raise RingError(f"an unfolding needs {len(p.fhat.components)} components")
    big_src = unfolded[0].ring
    if big_src.vars[: src.nvars] != src.vars or big_src.vars[src.nvars:] != params:
        raise RingError("unfolding ring must be the source variables followed by the parameters")
    for a, b in zip(unfolded, p.fhat.components):
        if a.subs({u: 0 for u in params}).to_ring(src) != b:
            raise RingError(f"unfolded component {a} does not restrict to {b}")
    taken = set(big_src.vars) | set(p.fhat.target.vars)
    unames = _fresh("U", len(params), taken)
    tnames = p.fhat.target.vars + tuple(unames)
    target = RingCtx(tnames, [(tnames, LOCAL)])
    comps = tuple(unfolded) + tuple(big_src.var(u) for u in params)
    return MapGerm(big_src, target, comps)


def mrel_stable_multiplicity(
    p: MondProblem,
    params: Sequence[str] = (),
    unfolded: Sequence[Poly] | None = None,
    dim_Mg: int | None = None,
    t_max: int = 12,
) -> MrelResult:
    """Samuel multiplicity of ``M_rel(G) = J(G) / J_y(G)`` over the parameter
    variables, for a stable unfolding ``F`` with ``G`` in ``J(G)``."""
    F = unfolding_map(p, params, unfolded)
    if dim_Mg is None:
        dim_Mg = jacobian_module_Mg(p, cross_check=False).dim
    G = kernel_generator(F)
    tgt = F.target
    JG = IdealHandle(tgt, [G.diff(v) for v in tgt.vars])
    if not is_member(G, JG):
        raise NotApplicable("no stable weighted-homogeneous unfolding available: G is not in J(G)")
    PF = map_preimage(F, IdealHandle(F.source, [F.pullback(q) for q in JG.gens]))
    for q in PF.gens:
        if not is_member(q, JG):
            raise NotApplicable("no stable weighted-homogeneous unfolding available: the unfolding is not stable")
    Jy = IdealHandle(tgt, [G.diff(v) for v in p.y_names])
    K = presentation_kernel(JG, Jy)
    param_vars = [v for v in tgt.vars if v not in set(p.y_names)]
    q = IdealHandle(tgt, [tgt.var(v) for v in param_vars])
    hs = hilbert_samuel(K, q, t_max=t_max)
    e = hs.multiplicity
    return MrelResult(e, dim_Mg, e == dim_Mg, hs, G, len(tuple(params)), F)


# ---------------------------------------------------------------------------
# jet-level A_e-codimension


def _truncate(terms: dict, d: int) -> dict:
    return {e: c for e, c in terms.items() if sum(e) <= d}


def _tmul(a: dict, b: dict, d: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        s1 = sum(e1)
        for e2, c2 in b.items():
            if s1 + sum(e2) > d:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _monomials(n: int, d: int):
    if n == 0:
        yield ()
        return
    for a in range(d + 1):
        for rest in _monomials(n - 1, d - a):
            yield (a,) + rest


def _rank(rows: list[dict]) -> int:
    """Exact rank of sparse rational row vectors."""
    pivots: dict = {}  # pivot column -> normalized row
    rank = 0
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        while r:
            col = max(r)
            piv = pivots.get(col)
            if piv is None:
                c = r[col]
                pivots[col] = {k: v / c for k, v in r.items()}
                rank += 1
                break
            c = r[col]
            for k, v in piv.items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def _jet_codim(f: MapGerm, d: int) -> int:
    ring = f.source
    n, p = ring.nvars, len(f.components)
    comps = [_truncate(c.terms, d) for c in f.components]
    monos = list(_monomials(n, d))
    total = len(monos) * p
    rows = []
    # tf(theta_n): x^a * df/dx_i
    for i, v in enumerate(ring.vars):
        partial = [_truncate(c.diff(v).terms, d) for c in f.components]
        for a in monos:
            am = {a: Fraction(1)}
            row = {}
            for j, col in enumerate(partial):
                for e, c in _tmul(am, col, d).items():
                    row[(j, e)] = c
            if row:
                rows.append(row)
    # wf(theta_p): f^alpha * e_j
    powers = {(0,) * p: {ring.zero_exp: Fraction(1)}}
    frontier = [(0,) * p]
    for _ in range(d):
        nxt = []
        for alpha in frontier:
            base = powers[alpha]
            for j in range(p):
                beta = list(alpha)
                beta[j] += 1
                beta = tuple(beta)
                if beta in powers:
                    continue
                prod = _tmul(base, comps[j], d)
                powers[beta] = prod
                nxt.append(beta)
        frontier = nxt
    for alpha, poly in powers.items():
        if not poly:
            continue
        for j in range(p):
            rows.append({(j, e): c for e, c in poly.items()})
    return total - _rank(rows)


def jet_codim_oracle(f: MapGerm, d: int) -> int:
    """``dim theta(f) / (tf(theta_n) + wf(theta_p) + m^(d+1) theta(f))``,
    required to agree at orders ``d`` and ``d+1``."""
    if f.icis_equations:
        raise NotApplicable("the jet oracle handles smooth sources only")
    a = _jet_codim(f, d)
    b = _jet_codim(f, d + 1)
    if a != b:
        raise NotApplicable(f"jet codimension not stable: {a} at order {d}, {b} at order {d + 1}; raise the jet order")
    return a


# ---------------------------------------------------------------------------
# report


@dataclass
class CmCertificate:
    e: int
    dim_Mg: int
    passed: bool
    r: int
    dimension: int


@dataclass
class MondReport:
    n: int
    k: int
    g: Poly
    ghat: Poly
    dim_Mg: int
    dim_Kg: int
    codim_Ae_Xf: int
    mu_I: int | None
    weighted_homogeneous: bool
    weights: tuple | None
    cm_certificate: CmCertificate | None
    verdict: str  # "equality", "strict-inequality", "not-applicable"
    lam: Poly | None = None
    fitting_dimension: int | None = None
    specialized_dim_Mg: int | None = None
    germ_faithful: str = ""
    warnings: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def germ_faithfulness(p: MondProblem, asserted: bool = False) -> tuple[str, list[str]]:
    """How the polynomial computations relate to the analytic germ.

    Elimination treats the source variables globally, so preimages are those
    of the polynomial map near the whole fibre over 0.  They coincide with the
    germ computations when that fibre is the origin alone (checked by
    comparing the global and local lengths of ``O/(fhat)``) or when all data
    are quasi-homogeneous.
    """
    comps = list(p.fhat.components)
    if weighted_homogeneous_weights(comps) is not None:
        return "quasi-homogeneous", []
    src = p.fhat.source
    glob = RingCtx(src.vars, [(src.vars, GLOBAL)])
    from .stdbasis import _quotient_dim

    global_len = _quotient_dim(IdealHandle(glob, [c.to_ring(glob) for c in comps]))
    local_len = vs_dimension(IdealHandle(src, comps))
    if global_len == local_len:
        return "fibre-is-origin", []
    if asserted:
        return "asserted", []
    return "unverified", [
        "polynomial representative has fibre points away from the origin; results describe the "
        "algebraic localization and may differ from the analytic germ (pass --germ-faithful to assert otherwise)"
    ]


def mond_report(
    p: MondProblem,
    germ_faithful: bool = False,
    cm_certificate: bool = True,
    params: Sequence[str] = (),
    unfolded: Sequence[Poly] | None = None,
    t_max: int = 12,
) -> MondReport:
    warnings: list[str] = []
    notes: list[str] = []
    status, w = germ_faithfulness(p, germ_faithful)
    warnings += w
    g, ghat = image_equation(p)
    lam = None
    fit_dim = None
    try:
        lam = conductor_lambda(p, ghat)
        fit = fitting_first(p, lam)
        fit_dim = fit.krull_dimension
        warnings += fit.warnings
    except NotApplicable as exc:
        warnings.append(f"conductor unavailable: {exc}")
    mg = jacobian_module_Mg(p, ghat)
    if mg.dim == math.inf:
        raise NotApplicable("dim M(g) is infinite: f is not A-finite")
    dim_Mg = int(mg.dim)
    if mg.specialized_dim is not None and mg.specialized_dim != mg.dim:
        warnings.append(
            f"z is a zero divisor on O/P: substituting z = 0 gives {mg.specialized_dim}, "
            f"the tensor product gives {dim_Mg}"
        )
    dim_Kg, weights = torsion_Kg(g)
    codim = dim_Mg - dim_Kg
    wh = dim_Kg == 0
    cert = None
    if cm_certificate:
        try:
            res = mrel_stable_multiplicity(p, params, unfolded, dim_Mg=dim_Mg, t_max=t_max)
            cert = CmCertificate(res.e, dim_Mg, res.cm_pass, res.r, res.hilbert.dimension)
        except (NotApplicable, StdBasisError) as exc:
            notes.append(f"multiplicity certificate not available: {exc}")
    mu_I = None
    if p.n == 1:
        warnings.append("n = 1: the codimension formula needs n >= 2; image Milnor number withheld")
    elif p.n == 2:
        mu_I = dim_Mg
    elif cert is not None and cert.passed:
        mu_I = dim_Mg
    else:
        notes.append("n != 2 and no passing multiplicity certificate: image Milnor number not determined")
    if mu_I is None:
        verdict = "not-applicable"
    elif dim_Kg == 0:
        verdict = "equality"
    else:
        verdict = "strict-inequality"
    return MondReport(
        n=p.n,
        k=p.k,
        g=g,
        ghat=ghat,
        dim_Mg=dim_Mg,
        dim_Kg=dim_Kg,
        codim_Ae_Xf=codim,
        mu_I=mu_I,
        weighted_homogeneous=wh,
        weights=weights,
        cm_certificate=cert,
        verdict=verdict,
        lam=lam,
        fitting_dimension=fit_dim,
        specialized_dim_Mg=None if mg.specialized_dim is None else int(mg.specialized_dim),
        germ_faithful=status,
        warnings=warnings,
        notes=notes,
    )
