"""Command-line front end.  Every command prints one JSON document (schema 1).

Exit codes: 0 ok, 1 usage error, 2 domain error, 3 tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import hypergeom, polynomials, spectral
from .cherednik import DunklContext, commutator_check, fundamental_coweight
from .laurent import LaurentPoly, is_invariant
from .root_data import Multiplicity, UnknownType, build_root_system
from .scalars import parse_scalar, scalar_to_str

SCHEMA = 1
DEFAULT_TOL = 1e-8

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ToleranceFailure(Exception):
    def __init__(self, payload):
        super().__init__("tolerance check failed")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# parsing helpers ---------------------------------------------------------------

def _vector(text: str) -> tuple:
    if text is None:
        return None
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        return tuple(parse_scalar(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc


def _k_values(text: str, rs, allow_symbolic=True):
    """'symbolic', one value, or one value per orbit separated by commas."""
    if text == "symbolic":
        if not allow_symbolic:
            raise UsageError("this command needs numeric k")
        return Multiplicity.symbolic(rs)
    vals = _vector(text)
    if not vals:
        raise UsageError("empty --k")
    try:
        return Multiplicity(rs, vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _float_k(m: Multiplicity) -> tuple:
    return tuple(float(v) for v in m.values)


def _threads() -> int:
    raw = os.environ.get("CHEREDNIK_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"CHEREDNIK_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def _poly_json(p: LaurentPoly) -> list:
    return [{"weight": [str(x) for x in w], "coef": scalar_to_str(c)} for w, c in sorted(p, key=lambda t: t[0])]


def _num(z) -> object:
    z = complex(z)
    if abs(z.imag) <= 1e-15 * max(1.0, abs(z.real)):
        return z.real
    return {"re": z.real, "im": z.imag}


def _weight(args, rs):
    w = _vector(args.weight)
    if w is None or len(w) != rs.rank:
        raise UsageError(f"--weight needs {rs.rank} integer entries")
    if any(Fraction(x).denominator != 1 for x in w):
        raise UsageError("--weight must be integral")
    return tuple(int(x) for x in w)


# commands ---------------------------------------------------------------------------

def cmd_poly(args, rs):
    k = _k_values(args.k, rs)
    ctx = DunklContext(rs, k)
    lam = _weight(args, rs)
    builders = {
        "E": lambda: polynomials.E_by_intertwiners(ctx, lam).body,
        "P": lambda: polynomials.jacobi_P(ctx, lam),
        "Pminus": lambda: polynomials.jacobi_Pminus(ctx, lam),
    }
    body = builders[args.kind]()
    return {
        "lambda": [str(x) for x in lam],
        "k": "symbolic" if args.k == "symbolic" else [str(v) for v in k.values],
        "kind": args.kind,
        "terms": _poly_json(body),
        "value_at_e": scalar_to_str(body.value_at_identity()),
    }


def cmd_norm(args, rs):
    k = _k_values(args.k, rs, allow_symbolic=False)
    ctx = DunklContext(rs, k)
    lam = _weight(args, rs)
    if not rs.is_dominant(lam):
        raise polynomials.NotDominant(lam)
    rows = []
    for w in rs.min_coset_reps(lam):
        norm2, value = polynomials.norm_and_evaluation(ctx, lam, w)
        rows.append({"w_lambda": [str(x) for x in w.act(lam)],
                     "norm2": scalar_to_str(norm2), "value_at_e": scalar_to_str(value)})
    return {"lambda": [str(x) for x in lam], "k": [str(v) for v in k.values], "orbit": rows}


def cmd_shift(args, rs):
    k = _k_values(args.k, rs)
    ctx = DunklContext(rs, k)
    lam = _weight(args, rs)
    if args.direction == "plus":
        f = polynomials.jacobi_P(ctx, lam)
        g = polynomials.shift_plus(ctx, f)
    else:
        f = polynomials.jacobi_P(ctx, lam)
        g = polynomials.shift_minus(ctx, f)
    return {"lambda": [str(x) for x in lam], "direction": args.direction, "terms": _poly_json(g)}


def cmd_jack(args, rs_unused):
    part = tuple(int(x) for x in _vector(args.partition))
    if list(part) != sorted(part, reverse=True) or any(p <= 0 for p in part):
        raise UsageError("--partition must be a weakly decreasing list of positive integers")
    table = polynomials.jack_expand(part, args.n)

    def poly(d):
        return {str(e): str(c) for e, c in sorted(d.items())}

    rows = [{"nu": list(nu), "v": poly(v["v"]), "v_tilde": poly(v["v_tilde"]),
             "v_tilde_nonneg_integral": polynomials.is_nonneg_integral(v["v_tilde"])}
            for nu, v in sorted(table.items(), reverse=True)]
    return {"partition": list(part), "n": args.n, "expansion": rows}


def cmd_hypergeom(args, rs):
    k = _float_k(_k_values(args.k, rs, allow_symbolic=False))
    lam = _vector(args.lam)
    H = _vector(args.point)
    if lam is None or H is None or len(lam) != rs.rank or len(H) != rs.rank:
        raise UsageError(f"--lambda and --point need {rs.rank} entries")
    lam = tuple(complex(x) for x in lam)
    H = tuple(float(x) for x in H)
    rep = hypergeom.genericity_report(rs, lam, args.depth)
    out = {"lambda": [_num(x) for x in lam], "point": list(H), "depth": args.depth,
           "genericity_report": {"generic": rep.generic, "issues": [str(x) for x in rep.report]}}
    if args.what == "phi":
        series = hypergeom.phi_series(rs, k, lam, args.depth)
        value, tail = hypergeom.phi_eval(series, H)
    elif args.what in ("F", "eval"):
        s = hypergeom.F_tilde_series(rs, k, lam, args.depth)
        norm = hypergeom.c_tilde_numeric(rs, k, tuple(Multiplicity(rs, k).rho))
        value, tail = s.evaluate(H) / norm, s.tail_bound(H) / abs(norm)
    else:
        value = hypergeom.G_nonsym(rs, k, lam, H, args.depth)
        tail = None
    out.update({"value": _num(value), "tail_bound": tail})
    return out


def cmd_kz(args, rs):
    k = _float_k(_k_values(args.k, rs, allow_symbolic=False))
    rng = random.Random(args.seed)
    lam = _vector(args.lam) if args.lam else tuple(round(rng.uniform(0.1, 1.0), 6) for _ in range(rs.rank))
    rows = []
    worst = 0.0
    for _ in range(args.points):
        H = tuple(round(rng.uniform(0.2, 1.5), 6) for _ in range(rs.rank))
        m = hypergeom.kz_matrices(rs, k, tuple(complex(x) for x in lam), H)
        res = hypergeom.kz_flatness_residual(m)
        worst = max(worst, res)
        rows.append({"point": list(H), "curvature": res})
    out = {"lambda": [_num(x) for x in lam], "points": rows, "max_curvature": worst, "tolerance": args.tol}
    if worst > args.tol:
        raise ToleranceFailure(out)
    return out


def cmd_spectral(args, rs):
    if args.what == "residual":
        k = _k_values(args.k, rs, allow_symbolic=False).values
        if any(isinstance(v, float) for v in k):
            raise UsageError("residual enumeration needs rational k (p/q)")
        subs = spectral.enumerate_residual(rs, k, dominance_filter=args.dominant)
        return {"k": [str(v) for v in k], "subspaces": [L.to_json() for L in subs]}
    if args.what == "integrable":
        k = _k_values(args.k, rs, allow_symbolic=False).values
        return {"k": [str(v) for v in k], "integrable": bool(spectral.integrability_check(rs, k))}
    if args.what == "sigma":
        k = _float_k(_k_values(args.k, rs, allow_symbolic=False))
        lam = _vector(args.lam)
        if lam is None or len(lam) != rs.rank:
            raise UsageError(f"--lambda needs {rs.rank} entries")
        d = spectral.sigma_densities(rs, k, lam)
        return {"lambda": [_num(x) for x in lam], "sigma": _num(d["sigma"].value),
                "sigma_prime": _num(d["sigma_prime"].value), "one_over_ct_ct": _num(d["one_over_ct_ct"])}
    # plancherel (rank one)
    if rs.label != "A1":
        raise UsageError("the Plancherel quadrature is implemented for A1 only")
    k = float(_k_values(args.k, rs, allow_symbolic=False).values[0])
    res = spectral.rank1_plancherel_checks(k)
    out = {key: float(v) for key, v in res.items()}
    if res["relative_error"] > 1e-6:
        raise ToleranceFailure(out)
    return out


def _suite(rs, max_weight: int, kint: int, threads: int) -> list:
    ctx_sym = DunklContext.symbolic(rs)
    ctx_int = DunklContext.with_values(rs, (Fraction(kint),))
    n = rs.rank
    cow = [fundamental_coweight(rs, i) for i in range(n)]
    weights = [w for w in _ball(rs, max_weight)]

    def commute():
        return all(commutator_check(ctx_sym, cow[i], cow[j], max_weight)
                   for i in range(n) for j in range(i + 1, n))

    def intertwiner_vs_triangular():
        return all(polynomials.E_by_intertwiners(ctx_sym, w).body
                   == polynomials.E_by_triangular_solve(ctx_sym, w).body for w in weights)

    def gram_schmidt():
        return all(polynomials.E_by_intertwiners(ctx_int, w).body
                   == polynomials.E_by_gram_schmidt(ctx_int, w).body for w in weights)

    def jacobi_invariant():
        return all(is_invariant(rs, polynomials.jacobi_P(ctx_sym, w))
                   for w in weights if rs.is_dominant(w))

    def character_formula():
        return all(polynomials.weyl_character_identity_check(ctx_sym, w)
                   for w in weights if rs.is_dominant(w))

    checks = [("commutativity", commute), ("intertwiner_vs_triangular", intertwiner_vs_triangular),
              ("gram_schmidt_integer_k", gram_schmidt), ("jacobi_invariant", jacobi_invariant),
              ("weyl_character_formula", character_formula)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [(name, pool.submit(fn)) for name, fn in checks]
        return [{"name": name, "passed": bool(f.result())} for name, f in futures]


def _ball(rs, radius):
    from .root_data import all_weights_in_ball
    return all_weights_in_ball(rs, radius)


def cmd_check(args, rs):
    rows = _suite(rs, args.max_weight, args.k_int, _threads())
    out = {"suite": args.suite, "max_weight": args.max_weight, "k_int": args.k_int, "checks": rows,
           "passed": all(r["passed"] for r in rows)}
    if not out["passed"]:
        raise ToleranceFailure(out)
    return out


# wiring -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dunkl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, k_default="symbolic"):
        sp.add_argument("--type", required=True, help="Cartan type, e.g. A2, B2, G2")
        sp.add_argument("--k", default=k_default, help="'symbolic', one value, or per-orbit list 'a,b'")
        sp.add_argument("--out", help="write JSON here instead of stdout")

    sp = sub.add_parser("poly", help="E, P or P^- polynomials")
    sp.add_argument("kind", choices=["E", "P", "Pminus"])
    common(sp)
    sp.add_argument("--weight", required=True)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("norm", help="norm and value at e over the W-orbit of a dominant weight")
    common(sp, "1")
    sp.add_argument("--weight", required=True)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("shift", help="apply G_+(k) or G_-(k) to P(lambda, k)")
    sp.add_argument("direction", choices=["plus", "minus"])
    common(sp)
    sp.add_argument("--weight", required=True)
    sp.set_defaults(func=cmd_shift)

    sp = sub.add_parser("jack", help="Jack polynomial expansion in monomials")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_jack, type=None)

    sp = sub.add_parser("hypergeom", help="Harish-Chandra series, F and G")
    sp.add_argument("what", choices=["phi", "F", "G", "eval"])
    common(sp, "0.5")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--depth", type=int, default=hypergeom.DEFAULT_DEPTH)
    sp.set_defaults(func=cmd_hypergeom)

    sp = sub.add_parser("kz", help="KZ curvature at random regular points")
    sp.add_argument("what", choices=["flatness"])
    common(sp, "0.3")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--points", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_kz)

    sp = sub.add_parser("spectral", help="residual subspaces, densities, integrability")
    sp.add_argument("what", choices=["residual", "integrable", "sigma", "plancherel"])
    common(sp, "-1/4")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--dominant", action="store_true", help="keep centers in the closed negative chamber")
    sp.set_defaults(func=cmd_spectral)

    sp = sub.add_parser("check", help="exact property suite")
    sp.add_argument("suite", choices=["all"])
    sp.add_argument("--type", required=True)
    sp.add_argument("--max-weight", type=int, default=2)
    sp.add_argument("--k-int", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_check)
    return p


def _emit(payload: dict, out_path):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_VALUE_OPTS = {"--k", "--weight", "--lambda", "--point", "--partition"}


def _glue_negatives(argv):
    """Let ``--k -1/4`` mean ``--k=-1/4``; argparse would read -1/4 as a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negatives(argv))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out_path = getattr(args, "out", None)
    try:
        rs = build_root_system(args.type) if getattr(args, "type", None) else None
        payload = args.func(args, rs)
        code = EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownType as exc:
        print(f"usage error: unknown Cartan type {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceFailure as exc:
        payload, code = exc.payload, EXIT_TOLERANCE
        print("tolerance failure", file=sys.stderr)
    except (ValueError, ArithmeticError, AssertionError) as exc:
        print(f"domain error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    payload = {"schema": SCHEMA, "command": args.command, **payload}
    if rs is not None:
        payload["type"] = rs.label
    _emit(payload, out_path)
    return code


def main():  # pragma: no cover
    sys.exit(run())
