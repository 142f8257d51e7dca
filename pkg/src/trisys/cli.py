"""Command line entry point: ``trisys <verb> ...``.

Verbs: verify, detect, construct, search, pack, graph.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import constructions as cons
from .core import TripleSystem, format_3uh, read_system, write_system
from .designs import SearchLimitExceeded, find_k4_packing
from .detect import find_occurrences, parse_configs
from .graphs import (
    classify_g13,
    complete_graph,
    decomposition_divisibility,
    decomposition_divisibility_dense,
    format_edge_list,
    parse_edge_list,
    path2_graph,
    remote_pairs,
)
from .search import max_free
from .verify import Report, report_table, verify_constructions, verify_oracle


class UsageError(Exception):
    pass


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    report = verify_constructions(min(args.n_max, 50), size_n_max=args.size_n_max)
    rows = list(report.rows)
    rows += verify_oracle(range(1, args.oracle_n_max + 1), extended=args.extended).rows
    report = Report(rows)
    text = report.render(args.format)
    text += "\n" + report_table(args.format, oracle_n_max=args.oracle_n_max)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    failed = len(report.failures)
    print(f"{len(report.rows)} rows, {failed} failed", file=sys.stderr)
    return report.exit_code()


# -- detect ------------------------------------------------------------------


def cmd_detect(args) -> int:
    F = read_system(args.input)
    index = {t: i for i, t in enumerate(F.triples)}
    for c in sorted(parse_configs(args.config), key=lambda c: c.value):
        occs = find_occurrences(F, c)
        print(f"{c.value}\t{len(occs)}")
        if args.list:
            for occ in occs:
                print("  " + " ".join(str(index[t]) for t in occ.triples))
    return 0


# -- construct ---------------------------------------------------------------


def _need_k(args) -> int:
    return args.k if args.k is not None else cons.optimal_k(args.n)[0]


FAMILIES: dict[str, Callable[[argparse.Namespace], TripleSystem]] = {
    "gyarfas": lambda a: cons.gyarfas(a.n, _need_k(a)),
    "full-star": lambda a: cons.full_star(a.n),
    "tripartite": lambda a: cons.complete_3partite(a.n),
    "ft": lambda a: cons.transitive_ft(a.n),
    "ft-plus": lambda a: cons.ft_plus(a.n),
    "ft-pm": lambda a: cons.ft_pm(a.n),
    "turan-star": lambda a: cons.turan_star(a.n),
    "five-ring": lambda a: cons.five_ring(),
    "q44": lambda a: cons.lattice_q44(),
    "dfree": lambda a: cons.dfree_construction(a.n, forbid_b=a.forbid_b),
}


def _class_members(args) -> list[tuple[str, TripleSystem]]:
    if args.family == "classF":
        return [(f"classF_n{args.n}_{i}", F) for i, F in enumerate(cons.enumerate_class_F(args.n))]
    if args.family == "abd-small":
        return [(label.replace("{", "").replace("}", "").replace(",", "_").replace("^", ""), F)
                for label, F in cons.small_abd_extremals(args.n).items()]
    raise UsageError(f"--enumerate is not available for family {args.family!r}")


def cmd_construct(args) -> int:
    if args.enumerate:
        members = _class_members(args)
        out = Path(args.output or ".")
        out.mkdir(parents=True, exist_ok=True)
        manifest = []
        for name, F in members:
            path = out / f"{name}.3uh"
            write_system(F, path, comment=f"{args.family} n={F.n}")
            manifest.append({"file": path.name, "n": F.n, "triples": len(F)})
        (out / "manifest.json").write_text(json.dumps({"family": args.family, "n": args.n,
                                                       "classes": manifest}, indent=2) + "\n")
        print(f"{len(members)} classes written to {out}")
        return 0
    if args.family in ("classF", "abd-small"):
        F = _class_members(args)[0][1]
    elif args.family in FAMILIES:
        F = FAMILIES[args.family](args)
    else:
        raise UsageError(f"unknown family {args.family!r}")
    if args.output:
        write_system(F, args.output, comment=f"{args.family} n={F.n}")
    else:
        sys.stdout.write(format_3uh(F, comment=f"{args.family} n={F.n}"))
    return 0


# -- search ------------------------------------------------------------------


def cmd_search(args) -> int:
    res = max_free(
        args.n,
        args.forbid,
        enumerate=args.enumerate,
        limit_nodes=args.limit_nodes,
        threads=args.threads,
        allow_n9=args.allow_n9,
        extended=args.extended,
    )
    print(json.dumps(res.to_json(), indent=2))
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, w in enumerate(res.witnesses):
            write_system(w, out / f"witness_{i}.3uh", comment=f"ex({args.n},{res.forbidden}) witness {i}")
    return 0 if res.proved_optimal else 2


# -- pack --------------------------------------------------------------------


def cmd_pack(args) -> int:
    if not args.k4:
        raise UsageError("only --k4 packings are supported")
    g = parse_edge_list(Path(args.input).read_text()) if args.input else complete_graph(args.n)
    try:
        blocks = find_k4_packing(g, require_full=args.full, limit=args.limit)
    except SearchLimitExceeded as exc:
        print(f"search limit exceeded: {exc}", file=sys.stderr)
        return 2
    if blocks is None:
        print("no K4 decomposition exists", file=sys.stderr)
        return 1
    for b in blocks:
        print(" ".join(map(str, b)))
    return 0


# -- graph -------------------------------------------------------------------


def cmd_graph(args) -> int:
    g = parse_edge_list(Path(args.input).read_text())
    if args.check == "path2":
        t = path2_graph(g)
        deficit, cls = classify_g13(g)
        print(f"# |E(G)|={len(g.edges)} |E(T(G))|={len(t.edges)} deficit={deficit} class={cls.name}")
        sys.stdout.write(format_edge_list(t))
    elif args.check == "remote":
        for u, v in remote_pairs(g):
            print(u, v)
    else:
        if args.n is not None:
            ok = decomposition_divisibility(g, args.n)
            print(f"K_{args.n} divisible by H: {ok}")
        else:
            host = parse_edge_list(Path(args.host).read_text())
            ok = decomposition_divisibility_dense(g, host)
            print(f"G divisible by H: {ok}")
        return 0 if ok else 1
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trisys", description="Triangle-free triple systems: constructions, detection, exact search.")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="construction and oracle concordance report")
    v.add_argument("--n-max", type=int, default=50)
    v.add_argument("--size-n-max", type=int, default=10_000, help="size-only checks of F_(n,k*) up to here")
    v.add_argument("--oracle-n-max", type=int, default=7)
    v.add_argument("--extended", action="store_true", help="also run the slow n=7,8 ABD and S(2,4,13) rows")
    v.add_argument("--format", choices=("tsv", "markdown"), default="tsv")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("detect", help="count configuration occurrences")
    d.add_argument("--config", required=True, help="e.g. A,B or ABCD or A+,B+")
    d.add_argument("--input", required=True)
    d.add_argument("--list", action="store_true", help="print each occurrence as triple indices")
    d.set_defaults(func=cmd_detect)

    c = sub.add_parser("construct", help="emit a construction as .3uh")
    c.add_argument("--family", required=True, choices=sorted(FAMILIES) + ["classF", "abd-small"])
    c.add_argument("--n", type=int, default=0)
    c.add_argument("--k", type=int)
    c.add_argument("--forbid-b", action="store_true", help="dfree: also avoid B")
    c.add_argument("--enumerate", action="store_true", help="one file per isomorphism class plus manifest.json")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="exact ex(n, S) by branch and bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--forbid", required=True)
    s.add_argument("--enumerate", action="store_true")
    s.add_argument("--limit-nodes", type=int)
    s.add_argument("--threads", type=int)
    s.add_argument("--allow-n9", action="store_true")
    s.add_argument("--extended", action="store_true", help="accept A+ and B+")
    s.add_argument("--out-dir", help="write witnesses as .3uh files here")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("pack", help="K4 packings of K_n or of an edge-list graph")
    k.add_argument("--k4", action="store_true", required=True)
    k.add_argument("--n", type=int)
    k.add_argument("--input")
    k.add_argument("--full", action="store_true", help="require an exact decomposition")
    k.add_argument("--limit", type=int, default=5_000_000)
    k.set_defaults(func=cmd_pack)

    g = sub.add_parser("graph", help="graph checks on edge-list files")
    g.add_argument("check", choices=("path2", "remote", "divisibility"))
    g.add_argument("--input", required=True, help="edge list; for divisibility this is H")
    g.add_argument("--n", type=int, help="divisibility: host K_n")
    g.add_argument("--host", help="divisibility: host graph edge list")
    g.set_defaults(func=cmd_graph)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "pack" and args.n is None and not args.input:
        parser.error("pack needs --n or --input")
    if args.verb == "graph" and args.check == "divisibility" and (args.n is None) == (args.host is None):
        parser.error("divisibility needs exactly one of --n, --host")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
