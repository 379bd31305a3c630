"""Command-line front end: ``omegac <command> ...``.

Exit codes: 0 ok, 1 check failed, 2 invalid input, 3 unsupported.
A positional complex argument is either a JSON file or a globular-sum
expression such as ``[[*],*]`` (realized as its complex).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import checks, twodim
from .adc import (Duality, adc_from_json, dual, is_loopfree, is_strong_steiner, is_unitary,
                  load_json, validate_adc, validate_morphism)
from .colim import Square, Zigzag, colim_zigzag, is_cartesian, is_cocartesian, isos
from .errors import InvalidInput, OmegacError
from .gray import cocone, cone, cylinder, suspend, tensor, wedge, whisker
from .omega import Cell, enumerate_cells
from .theta import (as_gs, classify, count_hom, enumerate_hom, factor_alg_glob, factor_reedy,
                    lambda_gs, parse_gs, tm_from_json)
from .adc import SteinerArray


def _read(arg: str):
    if os.path.exists(arg):
        return load_json(arg)
    try:
        return json.loads(arg)
    except ValueError:
        raise InvalidInput(f"{arg!r} is neither a file nor JSON") from None


def _complex(arg: str):
    if os.path.exists(arg):
        return validate_adc(load_json(arg))
    return lambda_gs(parse_gs(arg))


def _input(args):
    """A complex from the positional argument or from ``--gs``."""
    if args.input is not None and args.gs is not None:
        raise InvalidInput("give either a complex argument or --gs, not both")
    if args.gs is not None:
        return lambda_gs(parse_gs(args.gs))
    if args.input is None:
        raise InvalidInput("missing complex: pass a JSON file or --gs EXPR")
    return _complex(args.input)


def _add_input(s) -> None:
    s.add_argument("input", nargs="?", help="complex JSON file or globular-sum expression")
    s.add_argument("--gs", help="globular-sum expression, e.g. '[[*],*]'")


def _emit(args, payload, text: Optional[str] = None) -> None:
    if text is None or getattr(args, "json", False):
        body = json.dumps(payload, ensure_ascii=False, indent=2 if getattr(args, "pretty", False) else None,
                          sort_keys=True)
    else:
        body = text
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        print(body)


def _emit_adc(args, K) -> int:
    _emit(args, K.to_json(), K.table())
    return 0


def _report(args, rep) -> int:
    _emit(args, rep.to_json(getattr(args, "timings", False)),
          f"{rep.verdict.upper()} {rep.name} {rep.target}\n{json.dumps(checks.jsonable(rep.witness), ensure_ascii=False)}")
    return {"pass": 0, "fail": 1, "skipped": 3}[rep.verdict]


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    doc = _read(args.input)
    if isinstance(doc, dict) and "map" in doc:
        f = validate_morphism(doc, os.path.dirname(os.path.abspath(args.input)) if os.path.exists(args.input) else ".")
        _emit(args, {"ok": True, "kind": "morphism"}, "ok: morphism")
        return 0
    K = validate_adc(doc)
    _emit(args, {"ok": True, "kind": "complex", "counts": list(K.counts())},
          f"ok: complex with degree counts {list(K.counts())}")
    return 0


def cmd_predicates(args) -> int:
    K = _input(args)
    res = {"loop_free": is_loopfree(K), "unitary": is_unitary(K), "strong_steiner": is_strong_steiner(K)}
    payload = {k: {"value": bool(v), "witness": checks.jsonable(v.witness)} for k, v in res.items()}
    text = "\n".join(f"{k}: {bool(v)}" + ("" if v else f"  ({checks.jsonable(v.witness)})")
                     for k, v in res.items())
    _emit(args, payload, text)
    return 0


def cmd_tensor(args) -> int:
    return _emit_adc(args, tensor(_complex(args.left), _complex(args.right)).validate())


def cmd_unary(args) -> int:
    K = _input(args)
    if args.command == "cylinder":
        out = cylinder(K)
    elif args.command == "cone":
        out = cone(K).complex
    elif args.command == "cocone":
        out = cocone(K).complex
    elif args.command == "suspend":
        out = suspend(K).complex
    else:
        out = wedge(K, args.side).complex
    return _emit_adc(args, out.validate())


def cmd_whisker(args) -> int:
    f = whisker(_input(args), args.side)
    _emit(args, f.to_json(True), "\n".join(f"{b} -> {img}" for b, img in f.items()))
    return 0


def cmd_dual(args) -> int:
    return _emit_adc(args, dual(_input(args), Duality.parse(args.duality)).validate())


def cmd_cells(args) -> int:
    K = _input(args)
    cells = enumerate_cells(K, args.n, args.bound)
    if args.count:
        _emit(args, {"count": len(cells)}, str(len(cells)))
    else:
        _emit(args, [c.to_json() for c in cells], "\n".join(repr(c) for c in cells))
    return 0


def _tm(arg: str):
    return tm_from_json(_read(arg))


def cmd_theta(args) -> int:
    if args.theta_cmd == "hom":
        a, b = parse_gs(args.src), parse_gs(args.tgt)
        if args.count:
            n = count_hom(a, b)
            _emit(args, {"count": n}, str(n))
        else:
            hs = enumerate_hom(a, b)
            _emit(args, [h.to_json() for h in hs], "\n".join(json.dumps(h.to_json()) for h in hs))
        return 0
    f = _tm(args.file)
    if args.theta_cmd == "classify":
        flags = classify(f)
        _emit(args, flags, "\n".join(f"{k}: {v}" for k, v in flags.items()))
        return 0
    if args.mode == "alg":
        first, second = factor_alg_glob(f)
    else:
        first, second = factor_reedy(f)
    payload = {"first": first.to_json(), "second": second.to_json(), "middle": str(first.tgt)}
    _emit(args, payload, f"through {first.tgt}\nfirst: {json.dumps(first.to_json())}\n"
                         f"second: {json.dumps(second.to_json())}")
    return 0


def cmd_decompose(args) -> int:
    K = _complex(args.adc)
    v = Cell(K, SteinerArray.from_json(_read(args.cell)))
    ords = twodim.orderings(K, v)
    if not 0 <= args.ordering < max(len(ords), 1):
        raise InvalidInput(f"ordering index {args.ordering} out of range (have {len(ords)})")
    order = ords[args.ordering] if ords else ()
    factors = twodim.decompose(K, v, order)
    ok = (not factors and not v.minus(2)) or twodim.recompose(factors) == v
    payload = {"ordering": list(order), "factors": [f.to_json() for f in factors], "recomposes": ok}
    text = "\n".join([f"ordering: {' < '.join(order) if order else '(empty)'}"]
                     + [f"  {x}: {f!r}" for x, f in zip(order, factors)]
                     + [f"recomposition: {'ok' if ok else 'FAILED'}"])
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_colim(args) -> int:
    z = Zigzag.from_json(_read(args.zigzag))
    return _emit_adc(args, colim_zigzag(z))


def cmd_isos(args) -> int:
    fs = isos(_complex(args.left), _complex(args.right))
    _emit(args, [f.to_json(False)["map"] for f in fs], f"{len(fs)} isomorphism(s)\n" +
          "\n".join(json.dumps(f.to_json(False)["map"], ensure_ascii=False) for f in fs))
    return 0


def cmd_check(args) -> int:
    c = args.check_cmd
    if c == "square":
        sq = Square.from_json(_read(args.file))
        v = is_cocartesian(sq) if args.mode == "co" else is_cartesian(sq, args.bound)
        wit = None if (v and args.mode == "co") else checks.jsonable(v.witness)
        _emit(args, {"verdict": "pass" if v else "fail", "witness": wit},
              f"{'PASS' if v else 'FAIL'} {'cocartesian' if args.mode == 'co' else 'cartesian'}"
              + (f"\n{json.dumps(wit, ensure_ascii=False)}" if wit is not None else ""))
        return 0 if v else 1
    if c == "cylinder-formula":
        rep = checks.check_cylinder_formula(args.gs)
    elif c == "star":
        rep = checks.check_star_formulas(args.gs)
    elif c == "globe-cylinder":
        rep = checks.check_globe_cylinder(args.n)
    elif c == "squares":
        rep = checks.check_squares(args.gs, args.bound)
    else:
        rep = checks.check_theta_counts(args.gs, args.n)
    return _report(args, rep)


def cmd_verify(args) -> int:
    config = _read(args.config) if args.config else None
    reports = checks.run_suite(config)
    lines = checks.report_lines(reports, args.timings)
    body = "\n".join(lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body + ("\n" if body else ""))
    elif body:
        print(body)
    print(checks.summary(reports), file=sys.stderr)
    if args.plot:
        from .plotting import plot_timings
        plot_timings(reports, args.plot)
    return checks.suite_status(reports)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omegac", description="Steiner complexes, Gray operations and Θ.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("-o", "--output", help="write output to a file")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a complex or morphism JSON")
    s.add_argument("input")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("predicates", parents=[common], help="loop-free / unitary / strong Steiner")
    _add_input(s)
    s.set_defaults(fn=cmd_predicates)

    s = sub.add_parser("tensor", parents=[common], help="Gray tensor of two complexes")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_tensor)

    for name in ("cylinder", "cone", "cocone", "suspend"):
        s = sub.add_parser(name, parents=[common], help=f"{name} of a complex")
        _add_input(s)
        s.set_defaults(fn=cmd_unary)
    s = sub.add_parser("wedge", parents=[common], help="suspension with an extra arrow")
    _add_input(s)
    s.add_argument("--side", choices=("left", "right"), default="right")
    s.set_defaults(fn=cmd_unary)
    s = sub.add_parser("whisker", parents=[common], help="whiskering map into a wedge")
    _add_input(s)
    s.add_argument("--side", choices=("left", "right"), default="right")
    s.set_defaults(fn=cmd_whisker)
    s = sub.add_parser("dual", parents=[common], help="dual by a set of degrees (op, co, full, t or 1,3,...)")
    _add_input(s)
    s.add_argument("--duality", default="op")
    s.set_defaults(fn=cmd_dual)

    s = sub.add_parser("cells", parents=[common], help="enumerate n-cells")
    _add_input(s)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--bound", type=int)
    s.add_argument("--count", action="store_true")
    s.set_defaults(fn=cmd_cells)

    s = sub.add_parser("theta", help="morphisms of globular sums")
    tsub = s.add_subparsers(dest="theta_cmd", required=True)
    t = tsub.add_parser("hom", parents=[common])
    t.add_argument("src")
    t.add_argument("tgt")
    t.add_argument("--count", action="store_true")
    t = tsub.add_parser("factor", parents=[common])
    t.add_argument("--file", required=True, help="JSON file or literal {src,tgt,f,comps}")
    t.add_argument("--mode", choices=("alg", "reedy"), default="alg")
    t = tsub.add_parser("classify", parents=[common])
    t.add_argument("--file", required=True)
    s.set_defaults(fn=cmd_theta)

    s = sub.add_parser("decompose", parents=[common], help="decompose a 2-cell along an ordering")
    s.add_argument("--adc", required=True)
    s.add_argument("--cell", required=True)
    s.add_argument("--ordering", type=int, default=0)
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("colim", parents=[common], help="colimit of a zigzag")
    s.add_argument("--zigzag", required=True)
    s.set_defaults(fn=cmd_colim)

    s = sub.add_parser("isos", parents=[common], help="all isomorphisms between two complexes")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_isos)

    s = sub.add_parser("check", help="single checks")
    csub = s.add_subparsers(dest="check_cmd", required=True)
    c = csub.add_parser("square", parents=[common])
    c.add_argument("--file", required=True)
    c.add_argument("--mode", choices=("co", "cart"), required=True)
    c.add_argument("--bound", type=int, default=4)
    for name in ("cylinder-formula", "star", "squares"):
        c = csub.add_parser(name, parents=[common])
        c.add_argument("--gs", required=True)
        if name == "squares":
            c.add_argument("--bound", type=int, default=4)
    c = csub.add_parser("globe-cylinder", parents=[common])
    c.add_argument("-n", type=int, required=True)
    c = csub.add_parser("theta-counts", parents=[common])
    c.add_argument("--gs", required=True)
    c.add_argument("-n", type=int)
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("verify", help="acceptance battery")
    vsub = s.add_subparsers(dest="verify_cmd", required=True)
    v = vsub.add_parser("suite")
    v.add_argument("--config", help="JSON config file or literal")
    v.add_argument("-o", "--output", help="write the JSON-lines report to a file")
    v.add_argument("--timings", action="store_true", help="include wall times in the report")
    v.add_argument("--plot", metavar="PATH", help="write a PNG of per-check wall times")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except OmegacError as exc:
        msg = {"error": type(exc).__name__, "message": str(exc)}
        if exc.witness is not None:
            msg["witness"] = checks.jsonable(exc.witness)
        print(json.dumps(msg, ensure_ascii=False), file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
