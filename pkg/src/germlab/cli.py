"""Command line front end: ``germlab <command> FILE [flags]``.

Exit codes: 0 success, 1 usage/parse errors, 2 when the invariant is not
defined for the input (non-ICIS, infinite codimension, genericity failure...).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import GenericityFailure, InternalInconsistency, NotApplicable
from .invariants import (
    codim_Ke,
    milnor_hypersurface,
    milnor_icis,
    tjurina_hypersurface,
    tjurina_icis,
    validate_icis,
)
from .mond import (
    conductor_lambda,
    conductor_lambdas,
    fitting_first,
    image_equation,
    jacobian_module_Mg,
    jet_codim_oracle,
    make_problem,
    mond_report,
    mrel_stable_multiplicity,
)
from .parse import ParseError
from .problem import ProblemFile, parse_problem
from .ring import LOCAL, MapGerm, RingCtx, RingError, format_poly
from .stdbasis import (
    IdealHandle,
    StdBasisError,
    hilbert_samuel,
    krull_dim_leading,
    mora_normal_form,
    vs_dimension,
)

COMMANDS = ("std", "nf", "dim", "mu", "tau", "kcodim", "image", "conductor", "fitting1", "mg", "mond", "hilbert", "oracle-ae")

DEFAULTS = {"seed": 0, "bound": 5, "retries": 10, "tmax": 12, "jet": 8, "germ_faithful": False}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Settings:
    seed: int
    bound: int
    retries: int
    tmax: int
    jet: int
    germ_faithful: bool


def resolve_settings(pf: ProblemFile, flags: dict | None = None, env: dict | None = None) -> Settings:
    """Command-line flags win over file options; ``GERMLAB_SEED`` is the seed
    fallback when neither sets one."""
    flags = flags or {}
    env = os.environ if env is None else env
    vals = dict(DEFAULTS)
    env_seed = env.get("GERMLAB_SEED")
    if env_seed is not None:
        try:
            vals["seed"] = int(env_seed)
        except ValueError:
            raise UsageError(f"GERMLAB_SEED must be an integer, got {env_seed!r}")
    for k, v in pf.options:
        vals[k] = v
    for k, v in flags.items():
        if v is not None and k in vals:
            vals[k] = v
    if vals["bound"] < 1:
        raise UsageError("bound must be >= 1")
    return Settings(**vals)


# ---------------------------------------------------------------------------
# helpers


def _num(x):
    if x is None:
        return None
    if x == math.inf:
        return "infinite"
    return int(x)


def _polys(ps) -> list[str]:
    return [format_poly(p) for p in ps]


def _ideal_gens(pf: ProblemFile) -> tuple:
    for gens in (pf.ideal, pf.icis, pf.map):
        if gens:
            return gens
    raise UsageError("file has no ideal, icis or map statement to work on")


def _problem(pf: ProblemFile):
    if not pf.map:
        raise UsageError("file has no 'map' statement")
    return make_problem(pf.ring, pf.map, pf.icis, target_names=pf.target_vars)


def _target_ring(pf: ProblemFile, p: int) -> RingCtx:
    names = pf.target_vars
    if names is None:
        taken = set(pf.ring_vars)
        names = []
        i = 1
        while len(names) < p:
            if f"Y{i}" not in taken:
                names.append(f"Y{i}")
            i += 1
    return RingCtx(tuple(names), [(tuple(names), LOCAL)])


def _smooth_map(pf: ProblemFile) -> MapGerm:
    if not pf.map:
        raise UsageError("file has no 'map' statement")
    if pf.icis:
        raise NotApplicable("this command needs a smooth source (no icis equations)")
    return MapGerm(pf.ring, _target_ring(pf, len(pf.map)), pf.map)


def _icis(pf: ProblemFile):
    eqs = pf.icis or pf.ideal
    if not eqs:
        raise UsageError("file has no 'icis' (or 'ideal') statement")
    return validate_icis(eqs, pf.ring).require_icis()


# ---------------------------------------------------------------------------
# commands


def cmd_std(pf, s, extra):
    H = IdealHandle(pf.ring, _ideal_gens(pf))
    G = H.std()
    leads = [format_poly(pf.ring.monomial(e)) for _, e in G.leading_exponents()]
    return {"generators": _polys(H.gens), "standard_basis": _polys(G.gens), "leading_monomials": leads}


def cmd_nf(pf, s, extra):
    text = extra.get("poly")
    if not text:
        raise UsageError("nf needs --poly")
    try:
        p = pf.ring.poly(text)
    except ParseError as exc:
        raise UsageError(f"--poly: {exc}")
    G = IdealHandle(pf.ring, _ideal_gens(pf)).std()
    r = mora_normal_form(p, G)
    return {"poly": format_poly(p), "normal_form": format_poly(r), "member": r.is_zero()}


def cmd_dim(pf, s, extra):
    H = IdealHandle(pf.ring, _ideal_gens(pf))
    return {"vs_dimension": _num(vs_dimension(H)), "krull_dimension": krull_dim_leading(H)}


def cmd_mu(pf, s, extra):
    X = _icis(pf)
    res = milnor_icis(X, seed=s.seed, bound=s.bound, retries=s.retries)
    out = {
        "mu": res.mu,
        "method": res.method,
        "n": X.dimension,
        "k": X.k,
        "chain": [dict(c) for c in res.chain],
        "seed_used": res.seed,
        "matrix": [list(r) for r in res.matrix] if res.matrix else None,
        "attempts": res.attempts,
    }
    if X.k == 1:
        hyp = milnor_hypersurface(X.equations[0])
        if hyp.mu != res.mu:
            raise InternalInconsistency(f"hypersurface formula gives {hyp.mu}, Le-Greuel gives {res.mu}")
        out["mu_hypersurface"] = hyp.mu
    return out


def cmd_tau(pf, s, extra):
    X = _icis(pf)
    tau = tjurina_icis(X)
    out = {"tau": tau, "n": X.dimension, "k": X.k}
    if X.k == 1:
        th = tjurina_hypersurface(X.equations[0])
        if th != tau:
            raise InternalInconsistency(f"T^1 gives {tau}, (g)+J(g) gives {th}")
        out["tau_hypersurface"] = th
    return out


def cmd_kcodim(pf, s, extra):
    f = _smooth_map(pf)
    d, basis = codim_Ke(f)
    # basis vectors are monomial multiples of unit vectors; count the non-constant ones
    in_m = sum(1 for v in basis if not all(c.is_constant() for c in v))
    return {
        "kcodim": d,
        "kcodim_in_m_theta": in_m,
        "normal_space_basis": [[format_poly(c) for c in v] for v in basis],
    }


def cmd_image(pf, s, extra):
    p = _problem(pf)
    g, ghat = image_equation(p)
    return {"g": format_poly(g), "ghat": format_poly(ghat), "n": p.n, "k": p.k}


def cmd_conductor(pf, s, extra):
    p = _problem(pf)
    _, ghat = image_equation(p)
    lam = conductor_lambda(p, ghat)
    rows = [{"row": i, "lambda": format_poly(l)} for i, l in conductor_lambdas(p, ghat)]
    return {"lambda": format_poly(lam), "rows": rows}


def cmd_fitting1(pf, s, extra):
    p = _problem(pf)
    _, ghat = image_equation(p)
    fit = fitting_first(p, conductor_lambda(p, ghat))
    return {
        "generators": _polys(fit.ideal.gens),
        "krull_dimension": fit.krull_dimension,
        "expected_dimension": fit.expected_dimension,
        "warnings": fit.warnings,
    }


def cmd_mg(pf, s, extra):
    p = _problem(pf)
    mg = jacobian_module_Mg(p)
    return {
        "dim_Mg": _num(mg.dim),
        "dim_Mg_specialized": _num(mg.specialized_dim),
        "preimage": _polys(mg.P.gens),
        "J_y": _polys(mg.J.gens),
    }


def _unfolding(pf):
    return (pf.params, pf.unfold or None) if pf.params else ((), None)


def cmd_mond(pf, s, extra):
    p = _problem(pf)
    params, unfolded = _unfolding(pf)
    r = mond_report(p, germ_faithful=s.germ_faithful, params=params, unfolded=unfolded, t_max=s.tmax)
    cert = None
    if r.cm_certificate is not None:
        c = r.cm_certificate
        cert = {"e": c.e, "dim_Mg": c.dim_Mg, "pass": c.passed, "parameters": c.r + p.k, "samuel_dimension": c.dimension}
    return {
        "n": r.n,
        "k": r.k,
        "g": format_poly(r.g),
        "ghat": format_poly(r.ghat),
        "lambda": format_poly(r.lam) if r.lam is not None else None,
        "fitting_dimension": r.fitting_dimension,
        "dim_Mg": r.dim_Mg,
        "dim_Mg_specialized": r.specialized_dim_Mg,
        "dim_Kg": r.dim_Kg,
        "codim_Ae_Xf": r.codim_Ae_Xf,
        "mu_I": r.mu_I,
        "weighted_homogeneous": r.weighted_homogeneous,
        "weights": list(r.weights) if r.weights else None,
        "cm_certificate": cert,
        "verdict": r.verdict,
        "germ_faithful": r.germ_faithful,
        "warnings": r.warnings,
        "notes": r.notes,
    }


def cmd_hilbert(pf, s, extra):
    if pf.map:
        p = _problem(pf)
        params, unfolded = _unfolding(pf)
        res = mrel_stable_multiplicity(p, params, unfolded, t_max=s.tmax)
        hs = res.hilbert
        return {
            "module": "M_rel(G) = J(G)/J_y(G)",
            "G": format_poly(res.G),
            "values": [v for _, v in hs.values],
            "polynomial": hs.polynomial_str(),
            "dimension": hs.dimension,
            "multiplicity": hs.multiplicity,
            "dim_Mg": _num(res.dim_Mg),
            "cm_pass": res.cm_pass,
        }
    ring = pf.ring
    H = IdealHandle(ring, pf.ideal or pf.icis)
    q = IdealHandle(ring, pf.q) if pf.q else ring.maximal_ideal()
    hs = hilbert_samuel(H, q, t_max=s.tmax)
    return {
        "module": "O/I",
        "values": [v for _, v in hs.values],
        "polynomial": hs.polynomial_str(),
        "dimension": hs.dimension,
        "multiplicity": hs.multiplicity,
    }


def cmd_oracle_ae(pf, s, extra):
    f = _smooth_map(pf)
    return {"codim_Ae": jet_codim_oracle(f, s.jet), "jet": s.jet}


HANDLERS = {
    "std": cmd_std,
    "nf": cmd_nf,
    "dim": cmd_dim,
    "mu": cmd_mu,
    "tau": cmd_tau,
    "kcodim": cmd_kcodim,
    "image": cmd_image,
    "conductor": cmd_conductor,
    "fitting1": cmd_fitting1,
    "mg": cmd_mg,
    "mond": cmd_mond,
    "hilbert": cmd_hilbert,
    "oracle-ae": cmd_oracle_ae,
}


# ---------------------------------------------------------------------------
# running


def run(subcommand: str, path: str | os.PathLike, flags: dict | None = None, env: dict | None = None) -> tuple[int, dict, str]:
    """Execute one subcommand on a problem file; returns ``(exit code, report, text)``."""
    flags = dict(flags or {})
    report: dict = {"tool": "germlab", "version": __version__, "command": subcommand}
    t0 = time.perf_counter()
    try:
        if subcommand not in HANDLERS:
            raise UsageError(f"unknown command {subcommand!r}")
        data = Path(path).read_bytes()
        report["input"] = str(path)
        report["input_sha256"] = hashlib.sha256(data).hexdigest()
        pf = parse_problem(data.decode("utf-8"))
        s = resolve_settings(pf, flags, env)
        report["settings"] = {k: getattr(s, k) for k in DEFAULTS}
        report["result"] = HANDLERS[subcommand](pf, s, flags)
        report["status"] = "ok"
        code = 0
    except (ParseError, UsageError, RingError, OSError, UnicodeDecodeError) as exc:
        report["status"] = "error"
        report["error"] = str(exc)
        code = 1
    except GenericityFailure as exc:
        report["status"] = "not-applicable"
        report["error"] = str(exc)
        report["attempts"] = [
            {k: ([list(r) for r in v] if k == "matrix" else v) for k, v in a.items()} for a in exc.attempts
        ]
        code = 2
    except (NotApplicable, StdBasisError) as exc:
        report["status"] = "not-applicable"
        report["error"] = str(exc)
        code = 2
    except InternalInconsistency as exc:
        report["status"] = "internal-error"
        report["error"] = str(exc)
        code = 1
    if flags.get("timing"):
        report["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
    return code, report, render_text(report)


def render_text(report: dict) -> str:
    lines = []
    if report.get("status") != "ok":
        lines.append(f"{report.get('status')}: {report.get('error')}")
        return "\n".join(lines) + "\n"
    res = report.get("result", {})
    for k, v in res.items():
        if isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            lines.append(f"{k}:")
            for item in v:
                lines.append(f"  {json.dumps(item, sort_keys=True)}")
        elif isinstance(v, list):
            if k in ("warnings", "notes"):
                for item in v:
                    lines.append(f"{k[:-1]}: {item}")
            else:
                lines.append(f"{k}: {', '.join(str(x) for x in v) if v else '(none)'}")
        elif isinstance(v, dict):
            lines.append(f"{k}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
        else:
            lines.append(f"{k}: {v}")
    if "elapsed_ms" in report:
        lines.append(f"elapsed_ms: {report['elapsed_ms']}")
    return "\n".join(lines) + "\n"


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# corpus


def corpus_dir() -> Path:
    return Path(str(resources.files("germlab") / "corpus"))


def _flatten(res: dict) -> dict:
    out = {}
    for k, v in res.items():
        if isinstance(v, dict):
            for a, b in v.items():
                out[f"{k}.{a}"] = b
        out[k] = v
    return out


# expectation key -> (command, result field)
EXPECT_KEYS = {
    "mu": ("mu", "mu"),
    "mu_hypersurface": ("mu", "mu_hypersurface"),
    "tau": ("tau", "tau"),
    "kcodim": ("kcodim", "kcodim"),
    "kcodim_in_m_theta": ("kcodim", "kcodim_in_m_theta"),
    "dim": ("dim", "vs_dimension"),
    "krull": ("dim", "krull_dimension"),
    "g": ("image", "g"),
    "lambda": ("conductor", "lambda"),
    "fitting_dim": ("fitting1", "krull_dimension"),
    "dim_Mg": ("mond", "dim_Mg"),
    "dim_Mg_specialized": ("mond", "dim_Mg_specialized"),
    "dim_Kg": ("mond", "dim_Kg"),
    "codim": ("mond", "codim_Ae_Xf"),
    "mu_I": ("mond", "mu_I"),
    "verdict": ("mond", "verdict"),
    "e": ("mond", "cm_certificate.e"),
    "cm_pass": ("mond", "cm_certificate.pass"),
    "oracle_ae": ("oracle-ae", "codim_Ae"),
    "hilbert_e": ("hilbert", "multiplicity"),
    "hilbert_dim": ("hilbert", "dimension"),
    "status_mu": ("mu", "__status__"),
    "status_mond": ("mond", "__status__"),
}


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ",".join(_fmt_value(x) for x in v)
    return "none" if v is None else str(v)


def check_file(path: str | os.PathLike, flags: dict | None = None) -> list[dict]:
    """Evaluate every ``# expect`` line of one corpus file."""
    path = Path(path)
    try:
        pf = parse_problem(path.read_text(encoding="utf-8"))
    except (ParseError, OSError, UnicodeDecodeError) as exc:
        return [{"file": path.name, "key": "(parse)", "expected": "valid file", "got": str(exc), "ok": False}]
    rows = []
    cache: dict[str, tuple] = {}
    for key, want in pf.expectations:
        if key not in EXPECT_KEYS:
            rows.append({"file": path.name, "key": key, "expected": want, "got": "unknown key", "ok": False})
            continue
        cmd, field = EXPECT_KEYS[key]
        if cmd not in cache:
            code, rep, _ = run(cmd, path, flags)
            cache[cmd] = (code, rep)
        code, rep = cache[cmd]
        if field == "__status__":
            got = rep["status"]
        elif code != 0:
            got = f"{rep['status']}: {rep.get('error')}"
        else:
            got = _fmt_value(_flatten(rep["result"]).get(field))
        rows.append({"file": path.name, "key": key, "expected": want, "got": got, "ok": got == want})
    return rows


def corpus_run(directory: str | os.PathLike | None = None, jobs: int = 1, out=None, flags: dict | None = None) -> int:
    """Check every corpus file's expectations; prints a pass/fail matrix."""
    out = sys.stdout if out is None else out
    d = Path(directory) if directory is not None else corpus_dir()
    if not d.is_dir():
        print(f"corpus directory {d} not found", file=out)
        return 1
    files = sorted(d.glob("*.germ"))
    if not files:
        print(f"no .germ files in {d}", file=out)
        return 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(check_file, files, [flags] * len(files)))
    else:
        results = [check_file(f, flags) for f in files]
    failures = 0
    width = max(len(f.name) for f in files)
    for f, rows in zip(files, results):
        if not rows:
            print(f"{f.name:<{width}}  (no expectations)", file=out)
        for r in rows:
            mark = "PASS" if r["ok"] else "FAIL"
            line = f"{r['file']:<{width}}  {r['key']:<18} {mark}  expected={r['expected']}"
            if not r["ok"]:
                line += f"  got={r['got']}"
                failures += 1
            print(line, file=out)
    total = sum(len(r) for r in results)
    print(f"{total - failures}/{total} expectations passed", file=out)
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="germlab", description="Singularity invariants of map-germs on ICIS.")
    ap.add_argument("--version", action="version", version=f"germlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("file")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--bound", type=int)
        sp.add_argument("--retries", type=int)
        sp.add_argument("--tmax", type=int)
        sp.add_argument("--jet", type=int)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--germ-faithful", dest="germ_faithful", action="store_true", default=None)
        sp.add_argument("--timing", action="store_true")
        if name == "nf":
            sp.add_argument("--poly", required=True)
    cp = sub.add_parser("corpus")
    cp.add_argument("dir", nargs="?")
    cp.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        return corpus_run(args.dir, jobs=args.jobs)
    flags = {k: getattr(args, k, None) for k in ("seed", "bound", "retries", "tmax", "jet", "germ_faithful", "timing", "poly")}
    code, report, text = run(args.command, args.file, flags)
    if args.json:
        sys.stdout.write(to_json(report))
    else:
        stream = sys.stdout if code == 0 else sys.stderr
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
