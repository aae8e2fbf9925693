"""Command-line front end.

Every subcommand drives exactly one library operation and prints either
canonical text (default) or JSON (``--json``).  Exit status: 0 on
success or a passing verdict, 1 on a failing or infeasible verdict (the
report is still printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra import (DivisorClass, average_over, class_from_json_dict,
                      class_to_json_dict, UNKNOWN)
from .audit import AUDIT_CASES, run_audit
from .basis import Space, cycle_permutation, enumerate_basis, \
    permutation_powers
from .certificates import (Certificate, CertificateProblem,
                           certificate_to_json_dict, find_certificate,
                           infeasible_to_json_dict)
from .curves import (Ansatz, builtin_catalog, curve_from_json_dict, pair,
                     pushforward_equations, solve_for_class,
                     UnderdeterminedSolution)
from .errors import InconsistentSystem, MgnError
from .expr import format_class, parse_class
from .pullbacks import (ForgetPullback, clutch_pullback, embedding_from_text,
                        forget_pullback, lift_and_average)
from .basis import LAMBDA


def _print_json(payload):
    print(json.dumps(payload, indent=2))


def _emit_class(c: DivisorClass, as_json: bool):
    if as_json:
        _print_json(class_to_json_dict(c))
    else:
        print(format_class(c))


def _load_curves(args) -> list:
    if args.curves:
        with open(args.curves, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        if isinstance(data, dict):
            data = data.get("curves", [data])
        return [curve_from_json_dict(entry) for entry in data]
    return builtin_catalog(args.g)


def cmd_basis(args) -> int:
    space = Space(args.g, args.n)
    gens = enumerate_basis(space)
    if args.json:
        _print_json({"g": space.g, "n": space.n,
                     "generators": [g.name for g in gens]})
    else:
        for gen in gens:
            print(gen.name)
    return 0


def cmd_clutch(args) -> int:
    source = Space(args.g + 1, 0)
    c = parse_class(source, args.expr)
    _emit_class(clutch_pullback(c), args.json)
    return 0


def cmd_forget(args) -> int:
    phi = embedding_from_text(args.map)
    op = ForgetPullback(args.g, len(phi), args.n, phi)
    c = parse_class(op.domain, args.expr)
    _emit_class(forget_pullback(op, c), args.json)
    return 0


def cmd_average(args) -> int:
    if args.cycle is not None:
        space = Space(args.g, args.n)
        c = parse_class(space, args.expr)
        perms = permutation_powers(cycle_permutation(args.n, args.cycle))
        _emit_class(average_over(perms, c), args.json)
    else:
        c = parse_class(Space(args.g, 2), args.expr)
        _emit_class(lift_and_average(c, args.n), args.json)
    return 0


def cmd_pair(args) -> int:
    curves = _load_curves(args)
    space = curves[0].space if curves else Space(args.g, 2)
    c = parse_class(space, args.expr)
    values = []
    for curve in curves:
        value = pair(curve, c)
        values.append((curve.name, value))
    if args.json:
        _print_json({"pairings": [
            {"curve": name, "value": None if v is UNKNOWN else str(v)}
            for name, v in values]})
    else:
        for name, v in values:
            print(f"{name}: {'?' if v is UNKNOWN else v}")
    return 0


def cmd_solve(args) -> int:
    curves = _load_curves(args)
    if not curves:
        raise MgnError("no curves to solve with")
    space = curves[0].space
    ansatz = Ansatz.excluding(space, LAMBDA)
    try:
        result = solve_for_class(pushforward_equations(curves), ansatz)
    except InconsistentSystem as exc:
        if args.json:
            _print_json({"status": "inconsistent",
                         "combination": [[name, str(m)]
                                         for name, m in exc.combination],
                         "residue": str(exc.residue)})
        else:
            print(exc)
        return 1
    if isinstance(result, UnderdeterminedSolution):
        if args.json:
            _print_json({"status": "underdetermined",
                         "particular": class_to_json_dict(result.particular),
                         "free": [g.name for g in result.free_generators]})
        else:
            print("underdetermined; free generators: "
                  + ", ".join(g.name for g in result.free_generators))
            print(format_class(result.particular))
        return 0
    if args.json:
        payload = class_to_json_dict(result)
        payload["status"] = "unique"
        _print_json(payload)
    else:
        print(format_class(result))
    return 0


def cmd_certify(args) -> int:
    space = Space(args.g, args.n)
    target = parse_class(space, args.target)
    with open(args.effectives, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if isinstance(data, dict):
        data = data.get("effectives", [data])
    effectives = [class_from_json_dict(entry) for entry in data]
    problem = CertificateProblem(target, tuple(effectives))
    result = find_certificate(problem)
    if isinstance(result, Certificate):
        if args.json:
            _print_json(certificate_to_json_dict(result))
        else:
            print("feasible: x = (" + ", ".join(str(v) for v in result.x) + ")")
            for gen, value in sorted(result.residual.items(),
                                     key=lambda kv: kv[0].sort_key()):
                print(f"residual {gen.name} = {value}")
            print(f"caveats ({len(result.caveats)}): "
                  + ", ".join(g.name for g in result.caveats))
        return 0
    if args.json:
        _print_json(infeasible_to_json_dict(result))
    else:
        print(f"infeasible ({result.kind})")
        if result.forced_x is not None:
            print("forced x = (" + ", ".join(str(v) for v in result.forced_x) + ")")
        if result.generator is not None:
            print(f"violated at {result.generator.name}: deficit {result.deficit}")
        for name, mult in result.combination:
            print(f"  multiplier {mult} on [{name}]")
    return 1


def cmd_audit(args) -> int:
    report = run_audit(args.case)
    if args.json:
        _print_json(report.to_json_dict())
    else:
        print(report.text())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgn",
        description="exact divisor-class calculus on moduli spaces of "
                    "pointed stable curves")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, g=True, n=False, expr=False, json_flag=True):
        if g:
            p.add_argument("--g", type=int, required=True, help="genus")
        if n:
            p.add_argument("--n", type=int, required=True,
                           help="number of marked points")
        if expr:
            p.add_argument("--expr", required=True, help="class expression")
        if json_flag:
            p.add_argument("--json", action="store_true",
                           help="emit JSON instead of text")

    p = sub.add_parser("basis", help="list the generator basis of a space")
    common(p, n=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("clutch", help="pull a genus-(g+1) class back to the "
                                      "two-pointed genus-g space")
    common(p, expr=True)
    p.set_defaults(func=cmd_clutch)

    p = sub.add_parser("forget", help="pull a class back along a forgetful map")
    common(p, n=True, expr=True)
    p.add_argument("--map", required=True,
                   help="embedding of source labels, e.g. '1:3,2:7'")
    p.set_defaults(func=cmd_forget)

    p = sub.add_parser("average",
                       help="cycle-average a class (--cycle), or average the "
                            "pullbacks of a two-pointed class over all "
                            "placements into n labels")
    common(p, n=True, expr=True)
    p.add_argument("--cycle", type=int,
                   help="average over the powers of the cycle (1 2 .. K)")
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("pair", help="pair a two-pointed class with test curves")
    common(p, expr=True)
    p.add_argument("--curves", help="JSON file of test curves "
                                    "(default: built-in catalog)")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("solve", help="solve for a class from test-curve "
                                     "pairings (ansatz: everything but l)")
    common(p)
    p.add_argument("--curves", help="JSON file of test curves "
                                    "(default: built-in catalog)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="find an effectivity certificate")
    common(p, n=True)
    p.add_argument("--target", required=True, help="target class expression")
    p.add_argument("--effectives", required=True,
                   help="JSON file with the candidate effective classes")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("audit", help="re-run one recorded certificate "
                                     "computation and report discrepancies")
    p.add_argument("--case", required=True, choices=sorted(AUDIT_CASES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MgnError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
