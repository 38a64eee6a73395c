"""Command line front end.

Every subcommand loads one ultragraph JSON file and prints a report, as text
or (with --json) as a ReportDoc: command, inputs digest, results, version.
Exit status: 0 on success, 2 when an analysis finds a counterexample, 1 on
errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys

from . import __version__
from .algebra import LeavittPathAlgebra, graded_membership
from .chen import (ChenModule, InfEmitterMod, PeriodicPathMod, SinkMod, TwistedMod, all_chen_modules,
                   check_annihilator, describe, module_for_primitive)
from .classify import (Graded, enumerate_primes, enumerate_primitives, is_prime_algebra,
                       is_primitive_algebra, is_simple_algebra)
from .errors import UlpaError
from .expr import format_element, parse_expr
from .fields import parse_field, parse_laurent
from .groupoid import compare_induced_chen, finite_type_filters, infinite_type_filters, isotropy
from .io import load_spec
from .lattice import AdmissiblePair, admissible_pairs, enumerate_hs, quotient
from .ultragraph import (Cycle, EdgeRef, condition_k, enumerate_cycles, exclusive_cycles,
                         is_downward_directed, vertex_census)

COMMANDS = ("validate", "analyze", "hs", "ideals", "primes", "primitives", "quotient", "nf",
            "member", "module", "isotropy", "compare-induced")


class Counterexample(Exception):
    """Raised by a subcommand whose report records a failed check."""

    def __init__(self, results):
        super().__init__("counterexample")
        self.results = results


def _vset(text):
    if not text:
        return frozenset()
    return frozenset(t.strip() for t in text.split(",") if t.strip())


def _edges(text):
    if not text:
        return ()
    out = []
    for t in text.split("."):
        cls, _, idx = t.partition(":")
        out.append(EdgeRef(cls, int(idx) if idx else 0))
    return tuple(out)


def _cycle(g, text):
    if not text:
        raise UlpaError("--cycle is required")
    return Cycle(_edges(text))


def _polys(args, field):
    return [parse_laurent(t, field) for t in args.poly] if args.poly else None


def _show_desc(g, d):
    out = {"ideal": d.show(g)}
    if isinstance(d, Graded):
        out["kind"] = "graded"
        if d.case:
            out["case"] = d.case
    else:
        out["kind"] = "non-graded"
    return out


def _vec(ring, vec):
    if not vec:
        return "0"
    parts = []
    for b in sorted(vec, key=str):
        c = ring.fmt(vec[b])
        parts.append(str(b) if c == "1" else f"({c})*{b}")
    return " + ".join(parts)


# -- subcommands ------------------------------------------------------------------

def cmd_validate(g, args):
    return {"valid": True, "vertices": len(g.vertices), "classes": len(g.classes)}


def cmd_analyze(g, args):
    census = {k: list(v) for k, v in vertex_census(g).items()}
    return {
        "census": census,
        "cycles": [str(c) for c in enumerate_cycles(g)],
        "exclusive_cycles": [str(c) for c in exclusive_cycles(g)],
        "downward_directed": is_downward_directed(g),
        "condition_K": condition_k(g),
        "prime": bool(is_prime_algebra(g)),
        "primitive": bool(is_primitive_algebra(g)),
        "simple": bool(is_simple_algebra(g)),
    }


def cmd_hs(g, args):
    return {"hereditary_saturated": ["{%s}" % ",".join(g.vsort(W)) for W in enumerate_hs(g)]}


def cmd_ideals(g, args):
    return {"graded_ideals": [p.show(g) for p in admissible_pairs(g)]}


def cmd_primes(g, args):
    field = parse_field(args.field)
    ds = enumerate_primes(g, field, args.deg, _polys(args, field))
    return {"field": field.name, "primes": [_show_desc(g, d) for d in ds]}


def cmd_primitives(g, args):
    field = parse_field(args.field)
    out = []
    for d in enumerate_primitives(g, field, args.deg, _polys(args, field)):
        row = _show_desc(g, d)
        row["module"] = describe(module_for_primitive(g, d, field))
        out.append(row)
    return {"field": field.name, "primitives": out}


def cmd_quotient(g, args):
    q = quotient(g, AdmissiblePair(_vset(args.W), _vset(args.S)))
    return {"pair": q.pair.show(g), "quotient": q.graph.to_json()}


def _expr_arg(args):
    if args.expr is None:
        raise UlpaError("--expr is required")
    return args.expr


def cmd_nf(g, args):
    alg = LeavittPathAlgebra(g, parse_field(args.field))
    x = parse_expr(_expr_arg(args), alg)
    res = {"normal_form": format_element(x), "degrees": sorted(x.degrees())}
    if args.seed is not None:
        y = alg.normal_form(x, random.Random(args.seed))
        res["random_order_agrees"] = format_element(y) == format_element(x)
        if not res["random_order_agrees"]:
            raise Counterexample(res)
    return res


def cmd_member(g, args):
    alg = LeavittPathAlgebra(g, parse_field(args.field))
    x = parse_expr(_expr_arg(args), alg)
    pair = AdmissiblePair(_vset(args.W), _vset(args.S))
    return {"pair": pair.show(g), "expr": format_element(x), "member": graded_membership(x, pair)}


def _module_desc(g, args, field):
    t = args.type
    if t == "sink":
        return SinkMod(args.vertex)
    if t == "emitter":
        return InfEmitterMod(args.vertex)
    if t == "path":
        return PeriodicPathMod(_edges(args.rho), _cycle(g, args.cycle))
    if t == "twisted":
        if not args.poly:
            raise UlpaError("--poly is required for twisted modules")
        return TwistedMod(_cycle(g, args.cycle), parse_laurent(args.poly[0], field))
    raise UlpaError("--type is required")


def cmd_module(g, args):
    field = parse_field(args.field)
    desc = _module_desc(g, args, field)
    M = ChenModule(g, desc, field)
    basis = M.basis(args.depth)
    res = {"module": describe(desc), "depth": args.depth, "basis": [str(b) for b in basis]}
    if args.act:
        x = parse_expr(args.act, LeavittPathAlgebra(g, field))
        res["act"] = {str(b): _vec(M.ring, M.act_element(x, {b: M.ring.one}, None)) for b in basis}
    rep = check_annihilator(g, desc, args.depth, field)
    res["annihilator"] = rep.ideal.show(g)
    res["annihilator_ok"] = rep.ok
    if not rep.ok:
        res["counterexample"] = [str(c) for c in rep.counterexample or ()]
        res["silent_vertices"] = rep.silent_vertices
        raise Counterexample(res)
    return res


def cmd_isotropy(g, args):
    n = args.len
    rows = []
    for f in finite_type_filters(g, n) + infinite_type_filters(g, n):
        iso = isotropy(g, f)
        rows.append({"filter": str(f), "isotropy": "Z" if iso else "trivial",
                     "period": getattr(iso, "period", None)})
    return {"max_len": n, "filters": rows}


def cmd_compare_induced(g, args):
    field = parse_field(args.field)
    descs = [_module_desc(g, args, field)] if args.type else all_chen_modules(g, field, args.deg)
    rows = []
    bad = False
    for d in descs:
        rep = compare_induced_chen(g, d, args.depth, field)
        row = {"module": describe(d), "checked": rep.checked, "ok": rep.ok}
        if not rep.ok:
            bad = True
            row["mismatch"] = [str(m) for m in rep.mismatch]
        rows.append(row)
    res = {"field": field.name, "depth": args.depth, "modules": rows}
    if bad:
        raise Counterexample(res)
    return res


HANDLERS = {
    "validate": cmd_validate, "analyze": cmd_analyze, "hs": cmd_hs, "ideals": cmd_ideals,
    "primes": cmd_primes, "primitives": cmd_primitives, "quotient": cmd_quotient, "nf": cmd_nf,
    "member": cmd_member, "module": cmd_module, "isotropy": cmd_isotropy,
    "compare-induced": cmd_compare_induced,
}


# -- reports ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ulpa", description="Ultragraph Leavitt path algebra analysis")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("spec", help="ultragraph JSON file")
        p.add_argument("--field", default="q", help="q or f<p>")
        p.add_argument("--deg", type=int, default=1, help="degree bound for Laurent polynomials")
        p.add_argument("--json", action="store_true", help="print a JSON ReportDoc")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--W", default="", help="comma separated vertex set")
        p.add_argument("--S", default="", help="comma separated breaking vertices")
        p.add_argument("--expr", default=None)
        p.add_argument("--type", choices=("sink", "emitter", "path", "twisted"), default=None)
        p.add_argument("--vertex", default=None)
        p.add_argument("--cycle", default=None, help="edges joined by '.', e.g. e1.e2 or e:1")
        p.add_argument("--rho", default=None, help="prefix path, edges joined by '.'")
        p.add_argument("--poly", action="append", default=None, help="Laurent polynomial, e.g. x^2+x+1")
        p.add_argument("--depth", type=int, default=5)
        p.add_argument("--act", default=None, help="expression acting on each basis element")
        p.add_argument("--len", type=int, default=2, help="word length bound for filters")
    return ap


def _inputs(g, args) -> dict:
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("spec", "json", "command")}
    spec_text = json.dumps(g.to_json(), sort_keys=True, separators=(",", ":"))
    blob = json.dumps({"spec": spec_text, "options": opts}, sort_keys=True)
    return {"digest": hashlib.sha256(blob.encode()).hexdigest(), "options": opts}


def make_report(command, g, args, results) -> dict:
    return {"command": command, "inputs": _inputs(g, args), "results": results, "version": __version__}


def _text(value, indent=0) -> list:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in value:
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, dict):
                sub = _text(v, indent + 1)
                lines.append(pad + "- " + sub[0].lstrip())
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return lines
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    head = [f"ulpa {report['version']} {report['command']}", f"digest: {report['inputs']['digest']}"]
    return "\n".join(head + _text(report["results"])) + "\n"


def run(argv) -> tuple:
    """(exit status, output text) for one invocation."""
    args = build_parser().parse_args(argv)
    try:
        g = load_spec(args.spec)
        status = 0
        try:
            results = HANDLERS[args.command](g, args)
        except Counterexample as exc:
            results, status = exc.results, 2
        return status, render(make_report(args.command, g, args, results), args.json)
    except (UlpaError, OSError) as exc:
        return 1, f"error: {type(exc).__name__}: {exc}\n"


def main(argv=None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    (sys.stdout if status != 1 else sys.stderr).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
