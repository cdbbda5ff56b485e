"""Command line front-end: ``advdel <subcommand> ...``.

Exit codes: 0 success, 1 failed certification or audit, 2 usage error,
3 invalid input, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import gadgets
from .algorithms import STRATEGY_NAMES, prepare
from .engine import EDGE, MODES, NODE, OnlineInstance, check_mode, offline_optimum, run
from .formats import GraphFormatError, dump_graphs, from_text, load_family, named, to_text
from .graph import CapExceeded, ENUMERATION_CAP, join_decomposition
from .obstruction import (
    ObstructionSet,
    extremal_remainder,
    not_sub_h_join_family,
    not_sub_h_union_family,
    ramsey_bound,
    reduce,
)
from .verifier import FamilyCertificationError, audit_bits, verify_family

log = logging.getLogger("advdel")

EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 1, 3, 4


class InputError(Exception):
    pass


def _graph(source: str):
    p = Path(source)
    try:
        return from_text(p.read_text()) if p.exists() else named(source)
    except GraphFormatError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _obstruction(source: str | None, mode: str) -> ObstructionSet:
    if source is None:
        raise InputError("--obstruction is required")
    try:
        f = reduce(load_family(source))
        check_mode(f, mode)
    except (GraphFormatError, ValueError) as exc:
        raise InputError(f"obstruction {source}: {exc}") from exc
    return f


def _table(rows: list[dict], columns: list[str]) -> str:
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
    lines.append("  ".join("-" * widths[c] for c in columns))
    lines += ["  ".join(str(r.get(c, "")).ljust(widths[c]) for c in columns) for r in rows]
    return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (tuple, list, frozenset, set)):
        items = sorted(x) if isinstance(x, (frozenset, set)) else x
        return [_jsonable(i) for i in items]
    return x


# -- families on disk ------------------------------------------------------------

def write_family(out: Path, kind: str, params: dict, f: ObstructionSet, members, expected_leaves: int) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, inst in enumerate(members):
        name = f"member_{i:04d}.txt"
        (out / name).write_text(to_text(inst.graph))
        entries.append({"file": name, "choice": _jsonable(inst.choice),
                        "expected_optimum": _jsonable(inst.expected_optimum)})
    manifest = {
        "kind": kind,
        "params": params,
        "mode": members[0].mode if members else NODE,
        "obstruction": [to_text(h) for h in f],
        "expected_optimum_size": len(members[0].expected_optimum) if members else 0,
        "expected_unique": True,
        "expected_leaves": expected_leaves,
        "members": entries,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def read_family(path: Path) -> tuple[dict, ObstructionSet, list[OnlineInstance]]:
    try:
        manifest = json.loads((path / "manifest.json").read_text())
        f = ObstructionSet(tuple(from_text(t) for t in manifest["obstruction"]))
        members = []
        for entry in manifest["members"]:
            g = from_text((path / entry["file"]).read_text())
            expected = entry.get("expected_optimum")
            if expected is not None:
                expected = frozenset(tuple(x) if isinstance(x, list) else x for x in expected)
            choice = tuple(tuple(c) if isinstance(c, list) else c for c in entry.get("choice", ()))
            members.append(OnlineInstance(g, manifest["mode"], manifest["kind"], choice, expected))
    except (OSError, KeyError, ValueError) as exc:
        raise InputError(f"cannot read family at {path}: {exc}") from exc
    return manifest, f, members


def build_family(kind: str, args) -> tuple[dict, ObstructionSet, list[OnlineInstance], int]:
    if kind in ("clique-join", "independent-join"):
        f = _obstruction(args.obstruction, NODE)
        cert = ramsey_bound(f, args.cap)
        if cert is None:
            raise InputError("F has no Ramsey bound within the cap")
        mode = "max" if kind == "clique-join" else "min"
        D = extremal_remainder(f, cert, mode, args.cap)
        if not D.usable:
            log.warning("remainder graph has a %s vertex; uniqueness is not guaranteed",
                        "universal" if mode == "max" else "isolated")
        build = gadgets.clique_join_family if kind == "clique-join" else gadgets.independent_join_family
        members = build(f, D, args.opt)
        params = {"opt": args.opt, "R": cert.R, "D": to_text(D.D), "c": D.c}
        return params, f, members, len(members)

    if args.graph is None:
        raise InputError(f"--graph is required for the {kind} family")
    h = _graph(args.graph)
    m = args.m
    params = {"h": to_text(h), "m": m}
    try:
        if kind == "connected":
            members, mode, leaves = gadgets.connected_lb_family(h, m), NODE, h.order ** m
        elif kind == "disconnected":
            members, mode, leaves = gadgets.disconnected_lb_family(h, m), NODE, h.order ** m
        elif kind == "edge":
            members, mode, leaves = gadgets.edge_lb_family(h, m), EDGE, h.edge_count ** m
        elif kind == "isolated":
            members, mode, leaves = gadgets.isolated_prefix_family(h, m), EDGE, h.edge_count ** m
        else:
            raise InputError(f"unknown family kind {kind!r}")
    except gadgets.GadgetError as exc:
        raise InputError(str(exc)) from exc
    f = ObstructionSet((h,))
    check_mode(f, mode)
    return params, f, members, leaves


# -- subcommands -----------------------------------------------------------------

def cmd_gen(args) -> int:
    params, f, members, leaves = build_family(args.family, args)
    out = Path(args.out)
    write_family(out, args.family, params, f, members, leaves)
    print(f"wrote {len(members)} instances of family {args.family} to {out}")
    return 0


def cmd_solve(args) -> int:
    f = _obstruction(args.obstruction, args.mode)
    g = _graph(args.instance)
    opt = offline_optimum(g, f, args.mode)
    print(json.dumps({"size": opt.size, "unique": opt.unique, "solutions": _jsonable(opt.solutions)}))
    return 0


def _run_one(inst: OnlineInstance, f: ObstructionSet, strategy: str, cap: int, seed: int):
    cert = ramsey_bound(f, cap) if strategy == "log" else None
    if strategy == "log" and cert is None:
        raise InputError("the log strategy needs a Ramsey bound within the cap")
    algo, tape, out, budget = prepare(strategy, inst, f, cert, seed)
    trace = run(inst, f, algo, tape)
    opt = offline_optimum(inst.graph, f, inst.mode).size
    return trace, budget, opt


def _run_member(job):
    return _run_one(*job)


def cmd_run(args) -> int:
    if args.family:
        manifest, f, members = read_family(Path(args.family))
        if args.obstruction:
            f = _obstruction(args.obstruction, manifest["mode"])
    else:
        f = _obstruction(args.obstruction, args.mode)
        members = [OnlineInstance(_graph(args.instance), args.mode, Path(args.instance).stem)]
    jobs = [(inst, f, args.strategy, args.cap, args.seed) for inst in members]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_member, jobs))
    else:
        results = [_run_member(j) for j in jobs]

    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    rows, ok = [], True
    for i, (trace, budget, opt) in enumerate(results):
        audit = audit_bits(trace, budget)
        optimal = trace.size == opt
        ok &= audit and (optimal or args.strategy == "greedy")
        rows.append({"member": i, "deletions": trace.size, "opt": opt, "bits": trace.total_bits,
                     "budget": budget, "audit": "pass" if audit else "FAIL",
                     "optimal": "yes" if optimal else "no"})
        if out:
            (out / f"trace_{i:04d}.jsonl").write_text(trace.to_jsonl())
    text = _table(rows, ["member", "deletions", "opt", "bits", "budget", "audit", "optimal"])
    print(text)
    if out:
        (out / "summary.txt").write_text(text + "\n")
        (out / "report.jsonl").write_text("".join(json.dumps(r) + "\n" for r in rows))
    return 0 if ok else EXIT_FAILED


def cmd_verify(args) -> int:
    manifest, f, members = read_family(Path(args.family))
    record = {"kind": manifest["kind"], "params": manifest["params"], "expected_leaves": manifest.get("expected_leaves")}
    try:
        report = verify_family(members, f, require_unique=manifest.get("expected_unique", True), jobs=args.jobs)
    except FamilyCertificationError as exc:
        record.update(status="fail", reason=str(exc))
        report = None
    else:
        expected = manifest.get("expected_leaves")
        passed = (expected is None or report.leaves == expected) and report.advice_leaves == report.leaves
        record.update(report.as_dict(), status="pass" if passed else "fail")
    lines = json.dumps(record) + "\n"
    if args.out:
        Path(args.out).write_text(lines)
    print(lines, end="")
    if report is not None:
        print(_table([{
            "kind": manifest["kind"], "members": report.family_size, "leaves": report.leaves,
            "expected": manifest.get("expected_leaves"), "bits": report.lower_bound_bits,
            "status": record["status"],
        }], ["kind", "members", "leaves", "expected", "bits", "status"]))
    return 0 if record["status"] == "pass" else EXIT_FAILED


def cmd_ramsey(args) -> int:
    f = _obstruction(args.obstruction, NODE)
    cert = ramsey_bound(f, args.cap)
    if cert is None:
        print(f"no Ramsey bound up to order {args.cap}")
        return EXIT_FAILED
    header = {"R": cert.R}
    graphs = [cert.witness]
    if args.remainder:
        D = extremal_remainder(f, cert, args.remainder, args.cap)
        header.update(mode=D.mode, c=D.c, universal=int(D.has_universal), isolated=int(D.has_isolated))
        graphs = [D.D]
    text = dump_graphs(graphs, header)
    if args.out:
        Path(args.out).write_text(text)
    print(text, end="")
    return 0


def cmd_extend(args) -> int:
    h = _graph(args.graph)
    try:
        ext = gadgets.e_extension(h, tuple(args.edge))
    except gadgets.GadgetError as exc:
        raise InputError(str(exc)) from exc
    print(dump_graphs([ext.U], {"e": f"{ext.e[0]},{ext.e[1]}"}), end="")
    return 0


def cmd_decompose(args) -> int:
    g = _graph(args.graph)
    for part in join_decomposition(g):
        print(" ".join(map(str, part)))
    return 0


def cmd_obstructions(args) -> int:
    h = _graph(args.graph)
    build = not_sub_h_union_family if args.kind == "union" else not_sub_h_join_family
    family = build(h, args.cap)
    text = dump_graphs(family, {"kind": f"not-sub-h-{args.kind}", "count": len(family)})
    if args.out:
        Path(args.out).write_text(text)
    print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="advdel", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, mode=True):
        p.add_argument("--obstruction", help="graph file or comma-separated names such as K3,coK3")
        if mode:
            p.add_argument("--mode", choices=MODES, default=NODE)
        p.add_argument("--cap", type=int, default=ENUMERATION_CAP)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out")

    p = sub.add_parser("gen", help="generate a lower-bound family")
    common(p, mode=False)
    p.add_argument("--family", required=True, choices=gadgets.FAMILY_KINDS)
    p.add_argument("--graph", help="forbidden graph H (file or name)")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--opt", type=int, default=4)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="offline optima of one instance")
    common(p)
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("run", help="simulate a strategy and audit its advice bits")
    common(p)
    p.add_argument("--strategy", choices=STRATEGY_NAMES, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--instance")
    group.add_argument("--family", help="family directory written by gen")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify-lb", help="certify a family's distinguishability")
    common(p, mode=False)
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ramsey", help="Ramsey bound certificate for F")
    common(p, mode=False)
    p.add_argument("--remainder", choices=("max", "min"))
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("extend", help="e-extension of H at an edge")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge", type=int, nargs=2, required=True, metavar=("U", "V"))
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("decompose", help="join decomposition")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("obstructions", help="minimal non-sub-H-union or non-sub-H-join family")
    common(p, mode=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", choices=("union", "join"), default="union")
    p.set_defaults(func=cmd_obstructions)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
