"""Command-line interface.

Subcommands: mutate, explore, verify, orbits, cycles, positivity, export,
serve.  Exit status: 0 success, 1 verification mismatch, 2 usage error,
3 budget exhaustion.  All output is deterministic for fixed flags; the
LPA_BUDGET environment variable overrides the default seed budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .catalog import BUILTIN_NAMES, builtin_seed
from .context import ClassContext, build_context, get_context
from .explore import Budget, ExploreError, IncompleteClassError, face_census
from .parser import ParseError, SeedFileError, parse_seed_file, parse_symmetry_file
from .poly import PolynomialError, StructuralError
from .report import verify_report
from .seed import Seed, SeedError, mutate
from .symmetry import SymmetryError, orbit_partition, quotient_graph

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(ValueError):
    pass


def _default_budget() -> int:
    env = os.environ.get("LPA_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"LPA_BUDGET must be an integer, got {env!r}") from exc
    return 10000


def _load_seed(spec: str) -> Seed:
    if spec in BUILTIN_NAMES:
        return builtin_seed(spec)
    path = Path(spec)
    if not path.exists():
        raise UsageError(
            f"unknown seed {spec!r}: not a built-in ({', '.join(BUILTIN_NAMES)}) and no such file"
        )
    return parse_seed_file(path.read_text("utf-8"))


def _context(args: argparse.Namespace) -> ClassContext:
    budget = Budget(max_seeds=args.budget)
    if args.seed in BUILTIN_NAMES:
        return get_context(args.seed, budget, args.workers)
    seed = _load_seed(args.seed)
    return build_context(seed, seed.name, budget, args.workers)


def _resolve_slot(seed: Seed, at: str) -> int:
    names = seed.table.cluster_names
    if at in names:
        return names.index(at)
    try:
        slot = int(at)
    except ValueError:
        raise UsageError(f"--at must be a cluster name or 1-based slot, got {at!r}") from None
    if not 1 <= slot <= seed.rank:
        raise UsageError(f"slot {slot} out of range 1..{seed.rank}")
    return slot - 1


def cmd_mutate(args: argparse.Namespace) -> int:
    seed = _load_seed(args.seed)
    slot = _resolve_slot(seed, args.at)
    mutated = mutate(seed, slot)
    print(f"mutated at slot {slot + 1} ({seed.table.cluster_names[slot]})")
    print(f"new variable: {mutated.entries[slot].expansion.text()}")
    print("cluster:", ", ".join(e.expansion.text() for e in mutated.entries))
    print("exchange:", " | ".join(e.exchange.text() for e in mutated.entries))
    return EXIT_OK


def cmd_explore(args: argparse.Namespace) -> int:
    ctx = _context(args)
    if not ctx.graph.complete:
        print(f"seeds: >{args.budget} (incomplete), status: {ctx.graph.status}")
        return EXIT_BUDGET
    print(f"seeds: {ctx.seed_count}, variables: {ctx.variable_count}")
    if args.list_variables:
        for exp in ctx.variables:
            print(exp.text())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ctx = _context(args)
    report = verify_report(ctx)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render_text())
    if not ctx.graph.complete:
        return EXIT_BUDGET
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_orbits(args: argparse.Namespace) -> int:
    ctx = _context(args)
    ctx.graph.require_complete()
    partition = ctx.partition
    if args.symmetry and args.symmetry != "builtin":
        gens = _load_symmetry_maps(args.symmetry, ctx.seed)
        partition = orbit_partition(ctx.graph.nodes, gens)
    if partition is None:
        raise UsageError(f"no built-in symmetry for seed {args.seed!r}; pass --symmetry FILE")
    print(f"orbits: {len(partition.orbits)}")
    for i, orbit in enumerate(partition.orbits):
        label = ctx.orbit_labels.get(i, partition.orbit_name(i)) if partition is ctx.partition else partition.orbit_name(i)
        rep = ctx.cluster_names_of(orbit[0]) if partition is ctx.partition else None
        cluster = f" cluster: {', '.join(sorted(rep))}" if rep else ""
        print(f"  orbit {label}: size {len(orbit)}{cluster}")
    return EXIT_OK


def cmd_cycles(args: argparse.Namespace) -> int:
    ctx = _context(args)
    census = face_census(ctx.seed, ctx.budget, graph=ctx.graph)
    print("face census (cycle length: count):")
    for length, count in sorted(census.items()):
        print(f"  {length}: {count}")
    return EXIT_OK


def cmd_positivity(args: argparse.Namespace) -> int:
    ctx = _context(args)
    ctx.graph.require_complete()
    bad: list[str] = []
    for key in ctx.graph.sorted_keys():
        for entry in ctx.graph.nodes[key].entries:
            if not entry.expansion.is_positive():
                bad.append(f"expansion {entry.expansion.text()}")
            if any(c <= 0 for c in entry.exchange.terms.values()):
                bad.append(f"exchange {entry.exchange.text()}")
    if bad:
        print(f"positivity: FAIL ({len(bad)} offending coefficients)")
        for line in bad[:10]:
            print("  " + line)
        return EXIT_MISMATCH
    print(
        f"positivity: pass (all coefficients positive across {ctx.seed_count} seeds,"
        f" {ctx.variable_count} variables)"
    )
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    ctx = _context(args)
    ctx.graph.require_complete()
    if args.symmetry:
        partition = ctx.partition
        if args.symmetry != "builtin":
            gens = _load_symmetry_maps(args.symmetry, ctx.seed)
            partition = orbit_partition(ctx.graph.nodes, gens)
        if partition is None:
            raise UsageError("no symmetry available for quotient export")
        text = _render_quotient(ctx, partition, args.format)
    else:
        text = _render_graph(ctx, args.format)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _seed_strings(ctx: ClassContext, key: bytes) -> tuple[list[str], list[str]]:
    seed = ctx.graph.nodes[key]
    cluster = [e.expansion.text() for e in seed.entries]
    exchange = [e.exchange.text() for e in seed.entries]
    return cluster, exchange


def _node_label(ctx: ClassContext, key: bytes) -> str:
    names = ctx.cluster_names_of(key)
    if names is not None:
        return ", ".join(sorted(names))
    cluster, _ = _seed_strings(ctx, key)
    return ", ".join(sorted(cluster))


def _render_graph(ctx: ClassContext, fmt: str) -> str:
    graph = ctx.graph
    if fmt == "json":
        nodes = []
        for key in graph.sorted_keys():
            cluster, exchange = _seed_strings(ctx, key)
            nodes.append({"id": key.hex(), "cluster": cluster, "exchange": exchange})
        edges = [
            {
                "from": e.source.hex(),
                "to": e.target.hex(),
                "slot": e.slot + 1,
                "new_variable": e.new_variable.text(),
            }
            for e in graph.undirected_edges()
        ]
        return json.dumps({"nodes": nodes, "edges": edges}, indent=2) + "\n"
    lines = ["graph exchange {"]
    for key in graph.sorted_keys():
        lines.append(f'  "{key.hex()}" [label="{_node_label(ctx, key)}"];')
    for e in graph.undirected_edges():
        lines.append(f'  "{e.source.hex()}" -- "{e.target.hex()}" [label="{e.slot + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_quotient(ctx: ClassContext, partition, fmt: str) -> str:
    q = quotient_graph(ctx.graph, partition)
    if partition is ctx.partition and ctx.orbit_labels:
        label = lambda i: ctx.orbit_labels[i]
    else:
        label = partition.orbit_name
    if fmt == "json":
        nodes = [
            {"id": label(i), "size": len(orbit)}
            for i, orbit in enumerate(partition.orbits)
        ]
        nodes.sort(key=lambda n: n["id"])
        edges = [
            {"from": label(i), "to": label(j), "count": c}
            for (i, j), c in sorted(q.pair_counts.items(), key=lambda kv: (label(kv[0][0]), label(kv[0][1])))
        ]
        return json.dumps({"nodes": nodes, "edges": edges}, indent=2) + "\n"
    lines = ["graph quotient {"]
    for i, orbit in sorted(enumerate(partition.orbits), key=lambda t: label(t[0])):
        lines.append(f'  "{label(i)}" [label="{label(i)} ({len(orbit)})"];')
    for (i, j), c in sorted(q.pair_counts.items(), key=lambda kv: (label(kv[0][0]), label(kv[0][1]))):
        lines.append(f'  "{label(i)}" -- "{label(j)}" [label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _load_symmetry_maps(spec: str, seed: Seed):
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"symmetry file not found: {spec}")
    return [parse_symmetry_file(path.read_text("utf-8"), seed.table)]


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(args.port, workers=args.workers)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpakit",
        description="Exact mutation engine for Laurent phenomenon algebra seeds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, seed: bool = True) -> None:
        if seed:
            p.add_argument("--seed", required=True, help="built-in name or seed file path")
        p.add_argument("--budget", type=int, default=_default_budget(), help="max seeds to explore")
        p.add_argument("--workers", type=int, default=1, help="exploration worker threads")

    p = sub.add_parser("mutate", help="mutate a seed once and print the result")
    common(p)
    p.add_argument("--at", required=True, help="cluster variable name or 1-based slot")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("explore", help="enumerate the mutation class")
    common(p)
    p.add_argument("--list-variables", action="store_true", help="print every cluster variable")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("verify", help="run every expected-value check for a seed")
    common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbits", help="orbit partition under the dihedral symmetry")
    common(p)
    p.add_argument("--symmetry", default="builtin", help="'builtin' or a symmetry file path")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("cycles", help="census of rank-2 mutation cycles")
    common(p)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("positivity", help="scan all coefficients across the class")
    common(p)
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("export", help="export the exchange graph (or its quotient)")
    common(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--symmetry", help="'builtin' or a symmetry file: export the quotient graph")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the interactive-session JSON API")
    common(p, seed=False)
    p.add_argument("--port", type=int, default=8642)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except IncompleteClassError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ExploreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET if "budget" in str(exc) else EXIT_MISMATCH
    except (UsageError, ParseError, SeedFileError, PolynomialError, SeedError,
            SymmetryError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
