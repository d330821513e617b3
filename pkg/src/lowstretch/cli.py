"""Command line interface: ``lowstretch {gen,tree,decompose,stretch,bench}``."""
from __future__ import annotations

import argparse
import json
import sys

from .bench import SUITES, records_to_csv, run_suite
from .decomposition import DELTA, CutInvariantError, imp_star_decomp, star_decomp
from .edgelist import format_edge_list, format_tree_edges, read_edge_list
from .generators import GENERATORS, RNG_ALGORITHM, generate
from .graph import GraphError, require_connected
from .metrics import stretch_report
from .tree import ALGORITHMS, SpanningTree, build_tree


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_params(pairs: list[str]) -> dict:
    params = {}
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep:
            raise GraphError(f"generator parameter must look like key=value, got {item!r}")
        params[key] = float(value) if any(ch in value for ch in ".eE") else int(value)
    return params


def cmd_gen(args) -> int:
    params = _parse_params(args.param)
    g = generate(args.kind, params, args.seed)
    header = [f"generator {args.kind} {json.dumps(params, sort_keys=True)} seed {args.seed} rng {RNG_ALGORITHM}"]
    _emit(format_edge_list(g, header), args.out)
    return 0


def cmd_tree(args) -> int:
    g = read_edge_list(args.graph)
    tree = build_tree(g, args.root, args.algo, args.t)
    if args.format == "edgelist":
        _emit(format_tree_edges(g, tree.edge_ids, tree.root), args.out)
    else:
        _emit(_dump({"algo": args.algo, **tree.to_json()}), args.out)
    return 0


def cmd_decompose(args) -> int:
    g = read_edge_list(args.graph)
    require_connected(g)
    if args.t is None:
        sd = star_decomp(g, args.root, DELTA, args.epsilon)
    else:
        sd = imp_star_decomp(g, args.root, DELTA, args.epsilon, args.t, args.m_hat or g.m)
    _emit(_dump(sd.to_json()), args.out)
    return 0


def cmd_stretch(args) -> int:
    g = read_edge_list(args.graph)
    with open(args.tree, encoding="utf-8") as fh:
        data = json.load(fh)
    tree = SpanningTree.from_edges(g, data["edge_ids"], data.get("root", 0))
    if args.akpw:
        print("note: --akpw runs one shortest-path search per edge tail", file=sys.stderr)
    rep = stretch_report(g, tree, akpw=args.akpw)
    _emit(rep.to_csv(g) if args.format == "csv" else _dump(rep.to_json()), args.out)
    return 0


def cmd_bench(args) -> int:
    records = run_suite(args.suite)
    _emit(records_to_csv(records), args.out)
    bad = [r for r in records if not r.ok]
    for r in bad:
        print(f"bound check failed: {r.generator} {r.params} {r.algo}", file=sys.stderr)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lowstretch", description="Low-stretch spanning trees by star decomposition.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated graph as an edge list")
    g.add_argument("kind", choices=GENERATORS)
    g.add_argument("param", nargs="*", help="generator parameters as key=value, e.g. n=10 or rows=4 cols=5")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("tree", help="build a low-stretch spanning tree")
    t.add_argument("graph")
    t.add_argument("--algo", choices=ALGORITHMS, default="improved")
    t.add_argument("--root", type=int, default=0)
    t.add_argument("--t", type=int, default=None, help="volume tiers for the improved builder")
    t.add_argument("--format", choices=("json", "edgelist"), default="json")
    t.add_argument("-o", "--out")
    t.set_defaults(func=cmd_tree)

    d = sub.add_parser("decompose", help="one star decomposition around a root")
    d.add_argument("graph")
    d.add_argument("--epsilon", type=float, default=0.5)
    d.add_argument("--root", type=int, default=0)
    d.add_argument("--t", type=int, default=None, help="use the volume-tiered cone cut with t tiers")
    d.add_argument("--m-hat", type=int, default=None)
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("stretch", help="stretch of every graph edge in a tree")
    s.add_argument("graph")
    s.add_argument("tree", help="tree JSON written by the tree command")
    s.add_argument("--akpw", action="store_true", help="divide by graph distance instead of edge length (slow)")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_stretch)

    b = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    b.add_argument("--suite", choices=sorted(SUITES), default="paper")
    b.add_argument("-o", "--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, CutInvariantError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
