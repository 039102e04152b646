"""Command line interface: ``linsets <subcommand> ...``.

Every subcommand builds one JSON-able object; ``--json`` prints it as is,
otherwise a short human rendering of the same object is printed.

Exit codes: 0 ok, 1 assertion failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .autgrp import predicted_aut_binomial, predicted_aut_cmmz, stabilizer
from .equiv import DEFAULT_BUDGET, gammal_search, pgl_search
from .errors import LinsetError, SearchSpaceTooLarge
from .families import (binomial_inverse, cmmz_inverse, cmmz_poly, cmmz_witness_chain, cmpz_poly,
                       equivalence_witness_binomial, reduce_to_s1)
from .gf import field_new, parse_field_spec, roots_x2_plus_x_minus_1
from .invariants import lem26_report, profile, profile_json
from .linpoly import is_scattered
from .linset import linset_of, weight_spectrum
from .parser import format_elem, format_qpoly, parse_elem, parse_qpoly
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _field(args):
    if args.field:
        p, e, n = parse_field_spec(args.field)
    else:
        if args.p is None or args.n is None:
            raise UsageError("give the field as --field p^e^n or with --p/--e/--n")
        p, e, n = args.p, args.e, args.n
    modulus = None
    if args.modulus:
        modulus = [int(c) for c in args.modulus.split(",")]
    return field_new(p, e, n, modulus)


def _emit(args, obj, text=None):
    if args.json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(text if text is not None else json.dumps(obj, sort_keys=True))


# -- subcommands -----------------------------------------------------------------

def cmd_field(args):
    ctx = _field(args)
    obj = {"p": ctx.p, "e": ctx.e, "n": ctx.n, "q": ctx.q, "order": ctx.order,
           "modulus": list(ctx.modulus), "generator_code": ctx.gen_code}
    text = (f"F_{ctx.q}^{ctx.n} = F_{ctx.p}^{ctx.degree}, order {ctx.order}\n"
            f"modulus (low to high): {list(ctx.modulus)}\ngenerator code: {ctx.gen_code}")
    _emit(args, obj, text)
    return EXIT_OK


def cmd_eval(args):
    ctx = _field(args)
    f = parse_qpoly(args.poly, ctx)
    x = parse_elem(args.x, ctx)
    y = f(x)
    _emit(args, {"x_dlog": x.log, "value_dlog": y.log}, f"f({format_elem(x)}) = {format_elem(y)}")
    return EXIT_OK


def cmd_scattered(args):
    ctx = _field(args)
    f = parse_qpoly(args.poly, ctx)
    spec = weight_spectrum(f)
    obj = {"poly": format_qpoly(f), "scattered": is_scattered(f), "card": len(linset_of(f)),
           "weight_spectrum": {str(k): v for k, v in spec.items()}}
    _emit(args, obj, f"scattered: {obj['scattered']}  #L = {obj['card']}  weights: {spec}")
    return EXIT_OK


def cmd_linset(args):
    ctx = _field(args)
    L = linset_of(parse_qpoly(args.poly, ctx))
    obj = L.to_json()
    _emit(args, obj, f"{len(L)} points" + (" (including infinity)" if L.has_infinity else ""))
    return EXIT_OK


def cmd_invariants(args):
    ctx = _field(args)
    f = parse_qpoly(args.poly, ctx)
    idx = [int(d) for d in args.d.split(",")] if args.d else None
    obj = {"profile": profile_json(profile(f, idx))}
    if args.vs:
        g = parse_qpoly(args.vs, ctx)
        rep = lem26_report(f, g)
        obj["coefficient_identities"] = {"hold": not (rep["a0"] or rep["pairs"] or rep["triples"]), **rep}
        obj["profile_vs"] = profile_json(profile(g, idx))
    _emit(args, obj)
    return EXIT_OK


def cmd_equiv(args):
    ctx = _field(args)
    f, g = parse_qpoly(args.f, ctx), parse_qpoly(args.g, ctx)
    try:
        if args.mode == "gammal":
            res = gammal_search(f, g, args.budget)
        else:
            res = pgl_search(linset_of(f), linset_of(g), args.budget, args.threads)
    except SearchSpaceTooLarge as exc:
        _emit(args, {"equivalent": "unknown", "witness": None, "candidates_scanned": 0,
                     "reason": str(exc)})
        return EXIT_BUDGET
    _emit(args, res.to_json())
    return EXIT_OK


def cmd_autgroup(args):
    ctx = _field(args)
    if args.predict:
        theta = parse_elem(args.theta, ctx)
        G = predicted_aut_cmmz(ctx, theta) if args.predict == "cmmz" else predicted_aut_binomial(ctx, theta)
    else:
        L = linset_of(parse_qpoly(args.poly, ctx))
        try:
            G = stabilizer(L, budget=args.budget, threads=args.threads)
        except SearchSpaceTooLarge as exc:
            _emit(args, {"order": None, "elements": [], "reason": str(exc)})
            return EXIT_BUDGET
    _emit(args, G.to_json(), f"order {G.order}")
    return EXIT_OK


def cmd_family(args):
    ctx = _field(args)
    m = ctx.n // 2
    theta = parse_elem(args.theta, ctx) if args.theta else None
    if args.action == "roots":
        roots = roots_x2_plus_x_minus_1(ctx)
        _emit(args, {"roots_dlog": [r.log for r in roots]})
    elif args.action == "cmmz":
        _emit(args, {"poly": format_qpoly(cmmz_poly(ctx, theta))})
    elif args.action == "cmpz":
        _emit(args, {"poly": format_qpoly(cmpz_poly(ctx, m, args.s, theta))})
    elif args.action == "invert":
        h = cmmz_inverse(ctx, theta) if args.kind == "cmmz" else binomial_inverse(ctx, m, theta)
        _emit(args, {"inverse": None if h is None else format_qpoly(h)})
    elif args.action == "witness":
        if args.kind == "cmmz":
            phi, steps = cmmz_witness_chain(ctx, theta, parse_elem(args.delta, ctx))
            _emit(args, {"witness": phi.to_json(), "steps": steps})
        else:
            delta = parse_elem(args.delta, ctx)
            phi = equivalence_witness_binomial(ctx, m, delta, theta, args.rho)
            _emit(args, {"witness": phi.to_json()})
    elif args.action == "reduce":
        g, phi = reduce_to_s1(ctx, m, args.s, theta)
        _emit(args, {"reduced": format_qpoly(g), "witness": phi.to_json(),
                     "witness_matrix_is_raw": True})
    return EXIT_OK


def cmd_verify(args):
    params = {"threads": args.threads, "budget": args.budget, "samples": args.samples, "seed": args.seed}
    if args.p is not None:
        params["p"] = args.p
        params["e"] = args.e
    if args.n is not None:
        params["n"] = args.n
    if args.thetas:
        params["thetas"] = [int(t) for t in args.thetas.split(",")]
    if args.exhaustive is not None:
        params["exhaustive"] = args.exhaustive
    rep = run_suite(args.suite, **params)
    if args.json:
        print(rep.dumps())
    else:
        print("\n".join(rep.summary_lines()))
        print(f"{args.suite}: {'pass' if rep.passed else 'FAIL'}")
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- argument parsing ----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("field and search options")
    g.add_argument("--field", help="field spec p^e^n, e.g. 3^1^6")
    g.add_argument("--p", type=int)
    g.add_argument("--e", type=int, default=1)
    g.add_argument("--n", type=int)
    g.add_argument("--modulus", help="comma-separated coefficients c0,c1,...,1 (low to high)")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    g.add_argument("--json", action="store_true", help="print the JSON object")

    parser = argparse.ArgumentParser(prog="linsets", description="q-polynomials and linear sets on PG(1, q^n)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("field", parents=[common], help="describe the field model").set_defaults(func=cmd_field)

    p = sub.add_parser("eval", parents=[common], help="evaluate a q-polynomial")
    p.add_argument("poly")
    p.add_argument("x", help="coefficient expression, e.g. g^5+1")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scattered", parents=[common], help="scatteredness and weight spectrum")
    p.add_argument("poly")
    p.set_defaults(func=cmd_scattered)

    p = sub.add_parser("linset", parents=[common], help="the linear set L_f as JSON")
    p.add_argument("poly")
    p.set_defaults(func=cmd_linset)

    p = sub.add_parser("invariants", parents=[common], help="power-sum profile and coefficient identities")
    p.add_argument("poly")
    p.add_argument("--d", help="comma-separated exponents (default: built-in index set)")
    p.add_argument("--vs", help="second polynomial for the coefficient identities")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two polynomials")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--mode", choices=("pgl", "gammal"), default="pgl",
                   help="pgl: point sets L_f, L_g; gammal: subspaces U_f, U_g")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("autgroup", parents=[common], help="automorphism group of L_f")
    p.add_argument("poly", nargs="?")
    p.add_argument("--predict", choices=("cmmz", "binomial"), help="closed-form prediction instead of search")
    p.add_argument("--theta", default="g")
    p.set_defaults(func=cmd_autgroup)

    p = sub.add_parser("family", parents=[common], help="closed-form families")
    p.add_argument("action", choices=("roots", "cmmz", "cmpz", "invert", "witness", "reduce"))
    p.add_argument("--kind", choices=("cmmz", "binomial"), default="binomial")
    p.add_argument("--theta")
    p.add_argument("--delta")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--rho", type=int, default=0)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--thetas", help="comma-separated dlogs of theta values (aut43/aut45)")
    p.add_argument("--exhaustive", action=argparse.BooleanOptionalAction, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "autgroup" and not args.predict and not args.poly:
        print("error: autgroup needs a polynomial or --predict", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except SearchSpaceTooLarge as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, LinsetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
