"""Command-line front end: constructions and verifications with JSON or text
output.

Exit codes: 0 success, 1 infeasible request (including empty gamma sets),
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import serialize
from .affine_ct import affine_cycle_type, gamma_dpl, gamma_of_poly, gamma_of_matrix, sorted_types
from .cgl import factor_into_cgl
from .cwaffine import (construct_main, construct_sylow_type, cw_cycle_type,
                       cw_to_table, one_cycle_map, one_cycle_polynomial)
from .cycletype import ct_format, ct_parse
from .errors import InfeasibleError
from .gf import field
from .oracle import analyze, evaluate_poly_table, load_table
from .serialize import format_poly, parse_poly


def _field_from_args(args):
    modulus = None
    if getattr(args, "modulus", None):
        prime = field(args.p)
        mod_poly = parse_poly(args.modulus, prime)
        modulus = tuple(c.coeffs[0] for c in mod_poly.coeffs)
    return field(args.p, getattr(args, "k", 1) or 1, modulus)


def _emit(args, payload: dict, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _cmd_cycle_type(args) -> int:
    ctx = _field_from_args(args)
    obj = json.loads(_read_input(args.map))
    f = serialize.affine_from_json(ctx, obj)
    ctype = affine_cycle_type(f)
    _emit(args, {"cycle_type": ctype.to_json(), "text": ct_format(ctype)}, [ct_format(ctype)])
    return 0


def _cmd_gamma(args) -> int:
    ctx = _field_from_args(args)
    if args.poly:
        P = parse_poly(args.poly, ctx)
        gs = gamma_of_poly(P)
    elif args.matrix:
        M = serialize.matrix_from_json(ctx, json.loads(args.matrix))
        gs = gamma_of_matrix(M)
    else:
        raise ValueError("gamma needs --poly or --matrix")
    types = sorted_types(gs)
    _emit(args, {"gamma": [t.to_json() for t in types]}, [ct_format(t) for t in types])
    return 0


def _cmd_gamma_dpl(args) -> int:
    gs = gamma_dpl(args.d, args.p, args.l)
    types = sorted_types(gs)
    _emit(args, {"gamma": [t.to_json() for t in types]}, [ct_format(t) for t in types])
    if not types:
        print("gamma set is empty", file=sys.stderr)
        return 1
    return 0


def _cmd_cgl_factor(args) -> int:
    ctx = _field_from_args(args)
    M = serialize.matrix_from_json(ctx, json.loads(_read_input(args.matrix)))
    fac = factor_into_cgl(M, args.l, seed=args.seed)
    payload = {
        "factors": [serialize.matrix_to_json(F) for F in fac.factors],
        "product": serialize.matrix_to_json(fac.product),
    }
    lines = [json.dumps(serialize.matrix_to_json(F)) for F in fac.factors]
    _emit(args, payload, lines)
    return 0


def _emit_cwmap(args, f, verify_expected_complete=True) -> int:
    s = f.splitting
    ctype = cw_cycle_type(f)
    payload = serialize.cwmap_to_json(f)
    payload["cycle_type"] = ctype.to_json()
    lines = [f"p={s.p} d={s.d} t={s.t}", f"cycle type: {ct_format(ctype)}"]
    if args.verify:
        table = cw_to_table(f)
        report = analyze(table, s.p, s.n)
        payload["verified"] = report.to_json()
        shown = ct_format(report.cycle_type) if report.cycle_type else "n/a"
        lines.append(f"oracle: bijection={report.is_bijection} "
                     f"complete={report.is_complete} type={shown}")
        if report.cycle_type != ctype or not report.is_bijection:
            raise ArithmeticError("oracle verification failed")
        if verify_expected_complete and not report.is_complete:
            raise ArithmeticError("oracle verification failed: map is not complete")
    _emit(args, payload, lines)
    return 0


def _cmd_construct(args) -> int:
    job = json.loads(_read_input(args.job))
    gammas = {}
    for item in job["gammas"]:
        gammas[(int(item["length"]), int(item["index"]))] = ct_parse(item["type"])
    f = construct_main(
        int(job["p"]), int(job["d"]), int(job["t"]), [int(v) for v in job["g"]],
        gammas, seed=int(job.get("seed", args.seed)),
        require_complete=bool(job.get("require_complete", True)),
    )
    return _emit_cwmap(args, f, verify_expected_complete=bool(job.get("require_complete", True)))


def _cmd_sylow_type(args) -> int:
    target = ct_parse(args.type)
    f = construct_sylow_type(args.q, target, seed=args.seed)
    return _emit_cwmap(args, f)


def _cmd_one_cycle(args) -> int:
    f = one_cycle_map(args.p, args.k)
    return _emit_cwmap(args, f, verify_expected_complete=args.p > 2)


def _cmd_one_cycle_poly(args) -> int:
    ctx = _field_from_args(args)
    P = one_cycle_polynomial(ctx)
    text = format_poly(P)
    payload = {"field": serialize.ctx_to_json(ctx), "polynomial": serialize.poly_to_json(P),
               "text": text}
    lines = [text]
    if args.verify:
        report = analyze(evaluate_poly_table(P), ctx.p, ctx.k)
        payload["verified"] = report.to_json()
        lines.append(f"oracle: bijection={report.is_bijection} complete={report.is_complete} "
                     f"type={ct_format(report.cycle_type)}")
        if not report.is_bijection or report.cycle_type.cycles != ((ctx.order, 1),):
            raise ArithmeticError("oracle verification failed")
        if ctx.p > 2 and not report.is_complete:
            raise ArithmeticError("oracle verification failed: map is not complete")
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    table = load_table(_read_input(args.table))
    report = analyze(table, args.p, args.dim)
    lines = [
        f"bijection: {report.is_bijection}",
        f"complete: {report.is_complete}",
        f"orthomorphism: {report.is_orthomorphism}",
        f"cycle type: {ct_format(report.cycle_type) if report.cycle_type else 'n/a'}",
        f"fixed points: {len(report.fixed_points)}",
    ]
    _emit(args, report.to_json(), lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosetmap",
        description="Cycle types of affine permutations and coset-wise affine "
                    "complete mappings of finite fields (exact arithmetic).",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    default_seed = int(os.environ.get("COSETMAP_SEED", "0"))
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_opts(p, with_k=True, with_modulus=True):
        p.add_argument("--p", type=int, required=True, help="field characteristic")
        if with_k:
            p.add_argument("--k", type=int, default=1, help="extension degree")
        if with_modulus:
            p.add_argument("--modulus", help="modulus polynomial text, e.g. 'X^3-X+1'")

    p = sub.add_parser("cycle-type", help="cycle type of an affine map from JSON")
    add_field_opts(p)
    p.add_argument("--map", required=True, help="path or - for JSON {matrix, shift}")
    p.set_defaults(fn=_cmd_cycle_type)

    p = sub.add_parser("gamma", help="all cycle types over shifts of a fixed matrix")
    add_field_opts(p)
    p.add_argument("--poly", help="use the companion matrix of this polynomial")
    p.add_argument("--matrix", help="inline JSON matrix")
    p.set_defaults(fn=_cmd_gamma)

    p = sub.add_parser("gamma-dpl", help="types realizable with l complete factors")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(fn=_cmd_gamma_dpl)

    p = sub.add_parser("cgl-factor", help="factor a matrix into complete factors")
    add_field_opts(p)
    p.add_argument("--l", type=int, required=True, help="number of factors")
    p.add_argument("--matrix", required=True, help="path or - for JSON matrix")
    p.add_argument("--seed", type=int, default=default_seed)
    p.set_defaults(fn=_cmd_cgl_factor)

    p = sub.add_parser("construct", help="run the coset-wise constructor from a job file")
    p.add_argument("--job", required=True, help="path or - for the JSON job")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("sylow-type", help="complete mapping with a p-power cycle type")
    p.add_argument("--q", type=int, required=True, help="odd prime power")
    p.add_argument("--type", required=True, help="target cycle type, e.g. 'x1^3 x3^2'")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=_cmd_sylow_type)

    p = sub.add_parser("one-cycle", help="single-cycle map of GF(p)^k")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=_cmd_one_cycle)

    p = sub.add_parser("one-cycle-poly", help="single-cycle map of GF(p^k) as a polynomial")
    add_field_opts(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=_cmd_one_cycle_poly)

    p = sub.add_parser("verify", help="oracle analysis of a map table")
    p.add_argument("--table", required=True, help="path or - for JSON/CSV table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dim", type=int, required=True, help="dimension over GF(p)")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, OSError, ZeroDivisionError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
