"""Command-line driver: load DSL files or named instances, run law checks,
representation searches, adjunction synthesis, and the representation theorem,
emitting machine-readable JSON reports and DOT diagrams.

Exit codes: 0 all checks pass, 1 semantic failure (law violation or a
non-representable side), 2 input error (parse or build failure).  Reports are
deterministic for identical inputs apart from the timings field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .core import CapacityError, PreconditionError, Report, check_category, check_functor
from .het import HetBifunctor, check_het_bifunctor
from .represent import find_representation
from .adjunction import (Adjunction, SynthesisFailure, check_adjunction,
                         build_het_adjunctive_square,
                         build_hom_pair_adjunctive_square,
                         synthesize_adjunction, unit_counit_nat_transforms)
from .theorem import verify_representation_theorem
from .instances import InstanceValue, build_instance
from . import dsl

SCHEMA = "hetcat-report/1"


def _report_results(report: Report) -> list[dict]:
    results = []
    for check in report.checks:
        bad = report.failed(check)
        results.append({
            "name": f"{report.subject}: {check}",
            "tag": check,
            "ok": not bad,
            "witnesses": [list(v.witnesses) for v in bad[:10]],
            "messages": [v.message for v in bad[:10]],
        })
    return results


def _run_report(command: str, inputs: dict, results: list[dict],
                extra: dict | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "ok": all(r.get("ok", False) for r in results) if results else True,
        "results": results,
    }
    if extra:
        doc.update(extra)
    return doc


def _emit(doc: dict, json_path: str | None, started: float) -> None:
    doc["timings"] = {"total_s": round(time.time() - started, 6)}
    text = json.dumps(doc, indent=2)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    status = "ok" if doc.get("ok") else "failed"
    print(f"{doc['command']}: {status} "
          f"({sum(1 for r in doc['results'] if r['ok'])}/{len(doc['results'])} checks)")
    for r in doc["results"]:
        if not r["ok"]:
            first = r["messages"][0] if r["messages"] else ""
            print(f"  FAIL {r['name']}: {first}", file=sys.stderr)


def _load_input(args) -> tuple[InstanceValue | None, dsl.SourceSpec | None, dict, list]:
    """Returns (instance, parsed spec, inputs descriptor, diagnostics)."""
    if args.instance:
        value = build_instance(args.instance)
        return value, None, {"instance": args.instance}, []
    if not args.path:
        raise PreconditionError("either --instance or an input path is required")
    with open(args.path, "r", encoding="utf-8") as fh:
        text = fh.read()
    result = dsl.parse(text)
    if result.spec is None:
        return None, None, {"path": args.path}, result.diagnostics
    return None, result.spec, {"path": args.path}, result.diagnostics


def _diagnostics_doc(command: str, inputs: dict, diags) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "ok": False,
        "results": [],
        "diagnostics": [
            {"kind": d.kind, "message": d.message, "line": d.line,
             "col": d.col, "span": list(d.span), "token": d.token}
            for d in diags],
    }


def _single_het(instance: InstanceValue | None, spec: dsl.SourceSpec | None) -> HetBifunctor:
    if instance is not None:
        if instance.kind != "het":
            raise PreconditionError("this command needs a het-bifunctor input")
        return instance.value
    hets = list(spec.hets.values())
    if len(hets) != 1:
        raise PreconditionError(
            f"input must declare exactly one het block, found {len(hets)}")
    return hets[0]


# ---------------------------------------------------------------------------
# Commands

def cmd_check(args) -> int:
    started = time.time()
    instance, spec, inputs, diags = _load_input(args)
    if instance is None and spec is None:
        doc = _diagnostics_doc("check", inputs, diags)
        _emit(doc, args.json, started)
        for d in diags:
            print(f"  {d}", file=sys.stderr)
        return 2

    results: list[dict] = []
    if instance is not None:
        if instance.kind == "category":
            results += _report_results(check_category(instance.value))
        elif instance.kind == "het":
            het = instance.value
            results += _report_results(check_category(het.source))
            results += _report_results(check_category(het.target))
            results += _report_results(check_het_bifunctor(het))
    else:
        for cat in spec.categories.values():
            results += _report_results(check_category(cat))
        for fd in spec.functors.values():
            results += _report_results(check_functor(fd))
        for het in spec.hets.values():
            results += _report_results(check_het_bifunctor(het))
        for req in spec.checks:
            outcome = synthesize_adjunction(spec.hets[req.het_name])
            if isinstance(outcome, SynthesisFailure):
                results.append({"name": f"adjunction from {req.het_name}",
                                "tag": "adjunction-synthesis", "ok": False,
                                "witnesses": [], "messages": [outcome.describe()]})
            else:
                results += _report_results(check_adjunction(outcome))

    doc = _run_report("check", inputs, results)
    _emit(doc, args.json, started)
    return 0 if doc["ok"] else 1


def _representation_results(het: HetBifunctor, side: str) -> tuple[list[dict], dict]:
    res = find_representation(het, side)
    payload = {"side": side, "representable": res.ok,
               "universals": {b: {"apex": u.apex, "element": u.element}
                              for b, u in sorted(res.universals.items())},
               "failures": {b: [w.describe() for w in f.witnesses]
                            for b, f in sorted(res.failures.items())}}
    results = [{"name": f"{het.name}: representable on the {side}",
                "tag": f"representability-{side}", "ok": res.ok,
                "witnesses": [[b] for b in sorted(res.failures)],
                "messages": [w.describe() for f in res.failures.values()
                             for w in f.witnesses[:3]][:10]}]
    if res.ok:
        payload["functor_text"] = dsl.serialize(res.representation.functor)
        results += _report_results(res.naturality)
    return results, payload


def cmd_represent(args) -> int:
    started = time.time()
    try:
        instance, spec, inputs, diags = _load_input(args)
    except (PreconditionError, CapacityError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if instance is None and spec is None:
        _emit(_diagnostics_doc("represent", inputs, diags), args.json, started)
        return 2
    het = _single_het(instance, spec)
    sides = ("left", "right") if args.side == "both" else (args.side,)
    results, payloads = [], {}
    for side in sides:
        r, p = _representation_results(het, side)
        results += r
        payloads[side] = p
    inputs["side"] = args.side
    doc = _run_report("represent", inputs, results, {"representations": payloads})
    _emit(doc, args.json, started)
    return 0 if doc["ok"] else 1


def _gentzen(adj: Adjunction) -> str:
    F, G = adj.left.name, adj.right.name
    top = f"x -> {G} a"
    bot = f"{F} x -> a"
    width = max(len(top), len(bot)) + 4
    lines = [top.center(width), "-" * width, bot.center(width)]
    X, A = adj.left.source, adj.left.target
    for x in X.objects:
        for a in A.objects:
            cell = adj.phi.get((x, a), {})
            if cell:
                g, f = next(iter(cell.items()))
                top = f"{f} : {x} -> {adj.right.obj_map[a]}"
                bot = f"{g} : {adj.left.obj_map[x]} -> {a}"
                width = max(len(top), len(bot)) + 4
                lines += ["", top.center(width), "-" * width, bot.center(width)]
                return "\n".join(lines)
    return "\n".join(lines)


def cmd_adjoint(args) -> int:
    started = time.time()
    try:
        instance, spec, inputs, diags = _load_input(args)
    except (PreconditionError, CapacityError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if instance is None and spec is None:
        _emit(_diagnostics_doc("adjoint", inputs, diags), args.json, started)
        return 2
    het = _single_het(instance, spec)
    outcome = synthesize_adjunction(het)
    if isinstance(outcome, SynthesisFailure):
        results = []
        for res in (outcome.left_result, outcome.right_result):
            results.append({
                "name": f"{het.name}: representable on the {res.side}",
                "tag": f"representability-{res.side}", "ok": res.ok,
                "witnesses": [[b] for b in sorted(res.failures)],
                "messages": [w.describe() for f in res.failures.values()
                             for w in f.witnesses[:3]][:10]})
        doc = _run_report("adjoint", inputs, results)
        _emit(doc, args.json, started)
        return 1

    adj = outcome
    results = _report_results(check_adjunction(adj))
    unit_counit_nat_transforms(adj)
    serialized = {
        "left_functor": dsl.serialize(adj.left),
        "right_functor": dsl.serialize(adj.right),
        "phi": {f"{x}|{a}": dict(sorted(table.items()))
                for (x, a), table in sorted(adj.phi.items())},
        "hom_unit": dict(sorted(adj.hom_unit.items())),
        "hom_counit": dict(sorted(adj.hom_counit.items())),
    }
    if adj.het_core is not None:
        serialized["het_unit"] = dict(sorted(adj.het_core.het_unit.items()))
        serialized["het_counit"] = dict(sorted(adj.het_core.het_counit.items()))
    doc = _run_report("adjoint", inputs, results, {"adjunction": serialized})
    _emit(doc, args.json, started)
    if args.gentzen:
        print(_gentzen(adj))
    return 0 if doc["ok"] else 1


def cmd_verify_theorem(args) -> int:
    started = time.time()
    try:
        instance, spec, inputs, diags = _load_input(args)
    except (PreconditionError, CapacityError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if instance is None and spec is None:
        _emit(_diagnostics_doc("verify-theorem", inputs, diags), args.json, started)
        return 2
    het = _single_het(instance, spec)
    outcome = synthesize_adjunction(het)
    if isinstance(outcome, SynthesisFailure):
        doc = _run_report("verify-theorem", inputs, [
            {"name": f"{het.name}: synthesis", "tag": "adjunction-synthesis",
             "ok": False, "witnesses": [], "messages": [outcome.describe()]}])
        _emit(doc, args.json, started)
        return 1
    report = verify_representation_theorem(outcome)
    doc = _run_report("verify-theorem", inputs, _report_results(report))
    _emit(doc, args.json, started)
    return 0 if doc["ok"] else 1


# ---------------------------------------------------------------------------
# DOT emission

_HET_STYLE = 'color="black:invis:black"'   # double-line edges for het arrows


def _dot_category(cat) -> str:
    lines = [f'digraph "{cat.name}" {{', "  rankdir=LR;"]
    for x in cat.objects:
        lines.append(f'  "{x}";')
    for m in cat.morphisms:
        if not cat.is_identity(m.name):
            lines.append(f'  "{m.dom}" -> "{m.cod}" [label="{m.name}"];')
    lines.append("}")
    return "\n".join(lines)


def _dot_het_square(adj: Adjunction, element: str | None) -> str:
    core = adj.het_core
    if element is None:
        element = next(iter(core.het_unit.values()))
    sq = build_het_adjunctive_square(adj, element)
    ga = adj.right.obj_map[sq.a]
    fx = adj.left.obj_map[sq.x]
    lines = ['digraph "het-adjunctive-square" {',
             f'  "{sq.x}"; "{ga}"; "{fx}"; "{sq.a}";',
             f'  "{sq.x}" -> "{ga}" [label="{sq.top}"];',
             f'  "{fx}" -> "{sq.a}" [label="{sq.bottom}"];',
             f'  "{sq.x}" -> "{fx}" [label="{sq.unit}" {_HET_STYLE}];',
             f'  "{ga}" -> "{sq.a}" [label="{sq.counit}" {_HET_STYLE}];',
             f'  "{sq.x}" -> "{sq.a}" [label="{sq.het}" {_HET_STYLE}];',
             "}"]
    return "\n".join(lines)


def _dot_hom_pair_square(adj: Adjunction, x: str | None, a: str | None,
                         f: str | None) -> str:
    X = adj.left.source
    if x is None:
        x = X.objects[0]
    if a is None:
        a = adj.left.obj_map[x]
    if f is None:
        f = adj.hom_unit[x] if a == adj.left.obj_map[x] else \
            X.hom(x, adj.right.obj_map[a])[0]
    sq = build_hom_pair_adjunctive_square(adj, x, a, f)
    fx, ga = adj.left.obj_map[x], adj.right.obj_map[a]
    gfx, fga = adj.right.obj_map[fx], adj.left.obj_map[ga]
    n = {"tl": f"({x},{fx})", "tr": f"({ga},{fga})",
         "bl": f"({gfx},{fx})", "br": f"({ga},{a})"}
    pair = lambda p: f"({p[0]},{p[1]})"
    lines = ['digraph "hom-pair-adjunctive-square" {',
             *(f'  "{v}";' for v in n.values()),
             f'  "{n["tl"]}" -> "{n["tr"]}" [label="{pair(sq.top)}"];',
             f'  "{n["tl"]}" -> "{n["bl"]}" [label="{pair(sq.left)}"];',
             f'  "{n["tr"]}" -> "{n["br"]}" [label="{pair(sq.right)}"];',
             f'  "{n["bl"]}" -> "{n["br"]}" [label="{pair(sq.bottom)}"];',
             f'  "{n["tl"]}" -> "{n["br"]}" [label="{pair(sq.diagonal)}"];',
             "}"]
    return "\n".join(lines)


def cmd_emit_dot(args) -> int:
    try:
        instance, spec, inputs, diags = _load_input(args)
    except (PreconditionError, CapacityError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if instance is None and spec is None:
        for d in diags:
            print(f"  {d}", file=sys.stderr)
        return 2
    if args.kind == "category":
        if instance is not None and instance.kind == "category":
            text = _dot_category(instance.value)
        elif spec is not None and spec.categories:
            text = _dot_category(next(iter(spec.categories.values())))
        else:
            print("error: no category to draw", file=sys.stderr)
            return 2
    else:
        het = _single_het(instance, spec)
        outcome = synthesize_adjunction(het)
        if isinstance(outcome, SynthesisFailure):
            print(f"error: {outcome.describe()}", file=sys.stderr)
            return 1
        if args.kind == "het-square":
            text = _dot_het_square(outcome, args.element)
        else:
            text = _dot_hom_pair_square(outcome, args.object, args.target,
                                        args.morphism)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


# ---------------------------------------------------------------------------
# Entry point

def _add_io_args(p: argparse.ArgumentParser):
    p.add_argument("path", nargs="?", help="DSL input file")
    p.add_argument("--instance", help="named instance, e.g. finset:2 or product-het:1")
    p.add_argument("--json", help="write the JSON report to this path")
    p.add_argument("--max-objects", type=int, default=None,
                   help="capacity guard override (also HETCAT_CAPACITY)")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hetcat",
        description="finite category engine: het data, representations, adjunctions")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run all applicable law checks")
    _add_io_args(p_check)

    p_rep = sub.add_parser("represent", help="search for representations")
    _add_io_args(p_rep)
    p_rep.add_argument("--side", choices=("left", "right", "both"), default="both")

    p_adj = sub.add_parser("adjoint", help="synthesize an adjunction from het data")
    _add_io_args(p_adj)
    p_adj.add_argument("--gentzen", action="store_true",
                       help="render the two-line transpose presentation")

    p_thm = sub.add_parser("verify-theorem",
                           help="verify the representation round trip")
    _add_io_args(p_thm)

    p_dot = sub.add_parser("emit-dot", help="emit a DOT diagram")
    _add_io_args(p_dot)
    p_dot.add_argument("--kind", choices=("category", "square", "het-square"),
                       default="category")
    p_dot.add_argument("--dot", help="write DOT text to this path")
    p_dot.add_argument("--element", help="het element for --kind het-square")
    p_dot.add_argument("--object", help="source object for --kind square")
    p_dot.add_argument("--target", help="target object for --kind square")
    p_dot.add_argument("--morphism", help="morphism x -> Ga for --kind square")

    args = parser.parse_args(argv)
    cap = args.max_objects
    if cap is None and os.environ.get("HETCAT_CAPACITY"):
        try:
            cap = int(os.environ["HETCAT_CAPACITY"])
        except ValueError:
            print("error: HETCAT_CAPACITY must be an integer", file=sys.stderr)
            return 2
    if cap is not None:
        import hetcat.core as core
        core.DEFAULT_MAX_OBJECTS = cap
        core.DEFAULT_MAX_MORPHISMS = 20 * cap

    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "represent":
            return cmd_represent(args)
        if args.command == "adjoint":
            return cmd_adjoint(args)
        if args.command == "verify-theorem":
            return cmd_verify_theorem(args)
        if args.command == "emit-dot":
            return cmd_emit_dot(args)
    except (PreconditionError, CapacityError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
