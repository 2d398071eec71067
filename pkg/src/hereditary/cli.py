"""Command-line entry point: ``hereditary <command> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as hio
from .exceptions import HereditaryError
from .geometry import order_type, orient
from .patterns import COMPLIANT, HereditaryProperty, PatternMatcher, convex_property, lq_property
from .reduction.graphs import PsiInstance, clique_to_psi, psi_to_cubic
from .reduction.lineup import equivalence_check, find_lineup
from .reduction.verify import verify_yard
from .reduction.yard import build_yard
from .solvers import SolveRequest, kernelize_lq, lq_kernel_bound, solve_dispatch
from .svg import render_svg


def _property(name: str, q: int | None) -> HereditaryProperty:
    if name == "compliant":
        return COMPLIANT
    if name.startswith("file:"):
        pattern = hio.parse_pattern(name[5:])
        return HereditaryProperty(f"{pattern.name}-free", (pattern,))
    if name in ("lq", "convex", "convex-q"):
        if q is None:
            raise argparse.ArgumentTypeError(f"--property {name} needs --q")
        return lq_property(q) if name == "lq" else convex_property(q)
    if name.startswith("convex-") and name[7:].isdigit():
        return convex_property(int(name[7:]))
    if name.startswith("l") and name[1:].isdigit():
        return lq_property(int(name[1:]))
    raise argparse.ArgumentTypeError(f"unknown property {name!r}")


def _emit(args, rec: dict) -> None:
    text = hio.format_record(rec, args.format)
    if args.out and args.command in ("solve", "check", "orient"):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_orient(args):
    S = hio.parse_pointset(args.points)
    o = orient(S[args.i], S[args.j], S[args.k])
    _emit(args, {"orientation": o.name, "sign": int(o)})


def cmd_order_type(args):
    S = hio.parse_pointset(args.points)
    _write_or_print(hio.format_orientation_array(order_type(S)), args.out)


def _load_for_matching(path: str):
    """A point set, or an abstract order type when the file is an orientation array."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    first = next((ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), [])
    if first[:1] == ["n"]:
        return hio.loads_orientation_array(text)
    return hio.loads_pointset(text)


def cmd_check(args):
    prop = _property(args.property, args.q)
    data = _load_for_matching(args.points)
    hit = PatternMatcher(data).violation(prop)
    if hit is None:
        _emit(args, {"decision": "YES", "property": prop.name})
    else:
        _emit(args, {"decision": "NO", "property": prop.name, "pattern": hit[0], "witness": list(hit[1])})


def cmd_solve(args):
    prop = _property(args.property, args.q)
    S = hio.parse_pointset(args.points)
    res = solve_dispatch(SolveRequest(S, prop, args.k), jobs=args.jobs)
    _emit(args, hio.result_record(res))


def cmd_kernelize(args):
    S = hio.parse_pointset(args.points)
    ker = kernelize_lq(S, args.k, args.q)
    if args.out:
        hio.write_pointset(ker.points, args.out)
    rec = {"kernel_size": len(ker), "bound": lq_kernel_bound(args.k, args.q),
           "immediate": ker.immediate, "provenance": list(ker.provenance)}
    sys.stdout.write(hio.format_record(rec, args.format))


def _build_kwargs(args) -> dict:
    return {"phi": args.seed_scale_phi, "rho": args.seed_scale_rho}


def cmd_reduce(args):
    G = hio.parse_graph(args.graph)
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    psi = clique_to_psi(G, args.k)
    cubic = psi_to_cubic(psi)
    files = {
        "psi-host.g": hio.format_graph(psi.host), "psi-pattern.g": hio.format_graph(psi.pattern),
        "cubic-host.g": hio.format_graph(cubic.host), "cubic-pattern.g": hio.format_graph(cubic.pattern),
    }
    Y = build_yard(cubic, **_build_kwargs(args))
    files["yard.txt"] = hio.format_yard(Y)
    for name, text in files.items():
        with open(os.path.join(out, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    rec = {"rows": len(Y.rows), "points": len(Y.pointset()), "lineup_size": Y.lineup_size,
           "phi": Y.phi, "rho": Y.rho, "files": sorted(files)}
    sys.stdout.write(hio.format_record(rec, args.format))


def _instance(args) -> PsiInstance:
    return PsiInstance(hio.parse_graph(args.host), hio.parse_graph(args.pattern))


def cmd_build_yard(args):
    Y = build_yard(_instance(args), **_build_kwargs(args))
    _write_or_print(hio.format_yard(Y), args.out)


def cmd_verify_yard(args):
    bad = verify_yard(hio.parse_yard(args.yard))
    rec = {"decision": "VALID" if not bad else "INVALID", "violations": len(bad)}
    if args.format == "json-lines":
        rec["details"] = bad
        sys.stdout.write(hio.format_record(rec, args.format))
    else:
        sys.stdout.write(hio.format_record(rec) + "".join(f"violation {v}\n" for v in bad))


def cmd_find_lineup(args):
    Y = hio.parse_yard(args.yard)
    lineup = find_lineup(Y)
    rec = {"decision": "YES" if lineup else "NO", "size": Y.lineup_size,
           "witness": None if lineup is None else list(lineup.indices)}
    _write_or_print(hio.format_record(rec, args.format), None)


def cmd_equiv_check(args):
    report = equivalence_check(_instance(args), **_build_kwargs(args))
    if report.agree:
        line = f"AGREE {'yes' if report.psi is not None else 'no'}"
        rec = {"decision": line}
    else:
        rec = {"decision": "DISAGREE", "bundle": report.bundle()}
    if args.format == "json-lines":
        sys.stdout.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        sys.stdout.write(rec["decision"] + "\n" + (rec["bundle"] + "\n" if "bundle" in rec else ""))


def cmd_render(args):
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    first = next((ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), [])
    if first[:1] == ["n"]:
        obj = hio.loads_orientation_array(text)
    elif any(ln.split()[2:3] == ["fence"] for ln in text.splitlines() if not ln.startswith("#")):
        obj = hio.loads_yard(text)
    else:
        obj = hio.loads_pointset(text)
    _write_or_print(render_svg(obj, size=args.size, lines=not args.no_lines), args.out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    scale = argparse.ArgumentParser(add_help=False)
    scale.add_argument("--seed-scale-phi", type=int, default=None, help="initial phi for the yard retry loop")
    scale.add_argument("--seed-scale-rho", type=int, default=None, help="initial rho for the yard retry loop")
    prop = argparse.ArgumentParser(add_help=False)
    prop.add_argument("--property", default="compliant",
                      help="compliant | lq | convex-q | convex-<q> | l<q> | file:<pattern-file>")
    prop.add_argument("--q", type=int, default=None)

    p = argparse.ArgumentParser(prog="hereditary", description="Hereditary point-set properties and yard reductions.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("orient", parents=[common], help="orientation of one triple")
    s.add_argument("points")
    for name in ("i", "j", "k"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_orient)

    s = sub.add_parser("order-type", parents=[common], help="write the orientation array")
    s.add_argument("points")
    s.set_defaults(func=cmd_order_type)

    s = sub.add_parser("check", parents=[common, prop], help="does the whole set have the property?")
    s.add_argument("points")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", parents=[common, prop], help="find k points with the property")
    s.add_argument("points")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("kernelize", parents=[common], help="kernel for the q-in-line-free problem")
    s.add_argument("points")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("reduce", parents=[common, scale], help="clique instance to a yard, keeping every stage")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_reduce)

    for name, func, helptext in (("build-yard", cmd_build_yard, "yard for a PSI instance"),
                                 ("equiv-check", cmd_equiv_check, "compare PSI and lineup answers")):
        s = sub.add_parser(name, parents=[common, scale], help=helptext)
        s.add_argument("pattern")
        s.add_argument("host")
        s.set_defaults(func=func)

    s = sub.add_parser("verify-yard", parents=[common], help="list violated yard properties")
    s.add_argument("yard")
    s.set_defaults(func=cmd_verify_yard)

    s = sub.add_parser("find-lineup", parents=[common], help="search a yard for a lineup")
    s.add_argument("yard")
    s.set_defaults(func=cmd_find_lineup)

    s = sub.add_parser("render", parents=[common], help="SVG picture of a point set or yard")
    s.add_argument("input")
    s.add_argument("--size", type=int, default=800)
    s.add_argument("--no-lines", action="store_true")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for opt in ("k", "q", "jobs"):
        v = getattr(args, opt, None)
        if v is not None and v < (1 if opt == "jobs" else 0):
            parser.error(f"--{opt} must be {'positive' if opt == 'jobs' else 'non-negative'}")
    if getattr(args, "property", None) is not None:
        try:
            _property(args.property, args.q) if not args.property.startswith("file:") else None
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
    try:
        args.func(args)
    except (HereditaryError, OSError, ValueError) as exc:
        print(f"hereditary: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
