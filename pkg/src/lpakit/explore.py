"""Mutation-class enumeration and exchange-graph construction.

Exploration is a canonical-form BFS: seeds deduplicate by canonical key, the
frontier is processed level by level (optionally by a thread pool), and the
result set is independent of worker scheduling.  A :class:`Budget` bounds the
number of seeds and the size of expansion numerators; hitting either bound
halts with an explicit incomplete status, never a silent truncation.

The graph stores, for every node and slot, the directed edge obtained by
mutating the node's canonical representative at that slot, together with the
slot map into the target's canonical ordering.  Rank-2 mutation cycles (the
polygonal 2-faces of the exchange graph) are walked along those stored edges.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

from .poly import LaurentExpansion
from .seed import Seed, canonical_form, canonical_key, mutate


class ExploreError(RuntimeError):
    pass


class IncompleteClassError(ExploreError):
    """An operation that needs the full mutation class got a truncated one."""


@dataclass(frozen=True)
class Budget:
    """Exploration limits.  ``max_seeds`` bounds the number of distinct seeds
    (exceeding it stops the search after a whole BFS level); ``max_terms``
    bounds any single expansion numerator."""

    max_seeds: int = 10000
    max_terms: int = 200000

    def __post_init__(self) -> None:
        if self.max_seeds < 1:
            raise ValueError("max_seeds must be positive")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Edge:
    """Directed edge: mutating the source representative at ``slot`` lands on
    ``target``; ``slot_map[s]`` is the canonical position in the target of the
    source's slot s; ``new_variable`` is the expansion gained."""

    source: bytes
    slot: int
    target: bytes
    slot_map: tuple[int, ...]
    new_variable: LaurentExpansion


@dataclass
class ExchangeGraph:
    root: bytes
    nodes: dict[bytes, Seed]
    edges: dict[bytes, tuple[Edge, ...]]
    complete: bool
    status: str
    levels: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        """Undirected edge count (each node contributes rank edge-ends)."""
        return sum(len(es) for es in self.edges.values()) // 2

    def sorted_keys(self) -> list[bytes]:
        return sorted(self.nodes)

    def undirected_edges(self) -> list[Edge]:
        """One representative per undirected edge, from the smaller key (ties
        broken by slot); deterministic order."""
        out = []
        for key in self.sorted_keys():
            for edge in self.edges[key]:
                back = edge.slot_map[edge.slot]
                if (edge.target, back) > (key, edge.slot):
                    out.append(edge)
        return out

    def require_complete(self) -> None:
        if not self.complete:
            raise IncompleteClassError(self.status)


def explore(
    seed: Seed,
    budget: Budget = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExchangeGraph:
    """Canonical-form BFS closure of ``seed`` under mutation."""
    root, _ = canonical_form(seed)
    root_key = canonical_key(root)
    _check_terms(root, budget)
    nodes: dict[bytes, Seed] = {root_key: root}
    edges: dict[bytes, tuple[Edge, ...]] = {}
    levels = [1]
    frontier = [root_key]

    def expand(task: tuple[bytes, int]) -> tuple[bytes, int, Seed]:
        key, slot = task
        return key, slot, mutate(nodes[key], slot)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            if len(nodes) > budget.max_seeds:
                return ExchangeGraph(
                    root_key,
                    nodes,
                    edges,
                    complete=False,
                    status=f"budget exhausted: more than {budget.max_seeds} seeds",
                    levels=levels,
                )
            tasks = [(key, slot) for key in frontier for slot in range(seed.rank)]
            if pool is not None:
                results = list(pool.map(expand, tasks))
            else:
                results = [expand(t) for t in tasks]
            discovered: list[bytes] = []
            for key, slot, mutated in results:
                _check_terms(mutated, budget)
                canon, slot_map = canonical_form(mutated)
                target_key = canonical_key(canon)
                if target_key not in nodes:
                    nodes[target_key] = canon
                    discovered.append(target_key)
                new_var = mutated.entries[slot].expansion
                edges.setdefault(key, ())
                edges[key] = edges[key] + (
                    Edge(key, slot, target_key, slot_map, new_var),
                )
            frontier = discovered
            if discovered:
                levels.append(len(discovered))
    finally:
        if pool is not None:
            pool.shutdown(wait=False)
    return ExchangeGraph(root_key, nodes, edges, complete=True, status="complete", levels=levels)


def _check_terms(seed: Seed, budget: Budget) -> None:
    for entry in seed.entries:
        if len(entry.expansion.num.terms) > budget.max_terms:
            raise ExploreError(
                f"budget exhausted: expansion numerator exceeds {budget.max_terms} terms"
            )


def mutation_class(
    seed: Seed, budget: Budget = DEFAULT_BUDGET, workers: int = 1
) -> tuple[dict[bytes, Seed], bool]:
    """Canonical seeds of the mutation class, keyed by canonical key, plus a
    completeness flag (False means the budget stopped the search)."""
    graph = explore(seed, budget, workers)
    return graph.nodes, graph.complete


def variable_class(
    seed: Seed, budget: Budget = DEFAULT_BUDGET, workers: int = 1, graph: ExchangeGraph | None = None
) -> list[LaurentExpansion]:
    """All sign-normalized cluster-variable expansions over the class, in
    deterministic order.  Requires a complete class."""
    g = graph if graph is not None else explore(seed, budget, workers)
    g.require_complete()
    seen: dict[tuple, LaurentExpansion] = {}
    for key in g.sorted_keys():
        for entry in g.nodes[key].entries:
            exp = entry.expansion.sign_normalized()
            seen.setdefault(exp.sort_key(), exp)
    return [seen[k] for k in sorted(seen)]


def is_finite_type(
    seed: Seed, budget: Budget = DEFAULT_BUDGET, workers: int = 1
) -> tuple[str, int | str]:
    """("finite", count) when the class closed within budget, otherwise
    ("unknown", status).  Never claims "infinite"."""
    try:
        graph = explore(seed, budget, workers)
    except ExploreError as exc:
        return "unknown", str(exc)
    if graph.complete:
        return "finite", len(graph.nodes)
    return "unknown", graph.status


def mutation_cycle(seed: Seed, i: int, j: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Length of the rank-2 mutation cycle through slots (i, j): alternately
    mutate the two tracked slots until the starting canonical key recurs;
    returns the number of distinct seeds visited."""
    if i == j:
        raise ValueError("cycle slots must differ")
    start = canonical_key(seed)
    visited = {start}
    current = seed
    first, second = i, j
    for _ in range(budget.max_seeds):
        current = mutate(current, first)
        first, second = second, first
        key = canonical_key(current)
        if key == start:
            return len(visited)
        visited.add(key)
    raise ExploreError(f"budget exhausted: cycle exceeded {budget.max_seeds} seeds")


def _walk_face(graph: ExchangeGraph, start: bytes, a: int, b: int, cap: int) -> frozenset[bytes]:
    keys = {start}
    key = start
    pair = (a, b)
    for _ in range(cap):
        edge = graph.edges[key][pair[0]]
        pair = (edge.slot_map[pair[1]], edge.slot_map[pair[0]])
        key = edge.target
        if key == start:
            return frozenset(keys)
        keys.add(key)
    raise ExploreError(f"budget exhausted: face walk exceeded {cap} seeds")


def face_census(
    seed: Seed,
    budget: Budget = DEFAULT_BUDGET,
    workers: int = 1,
    graph: ExchangeGraph | None = None,
) -> dict[int, int]:
    """Census of rank-2 mutation cycles over the whole class: cycle length ->
    number of distinct cycles (deduplicated by vertex set)."""
    g = graph if graph is not None else explore(seed, budget, workers)
    g.require_complete()
    rank = seed.rank
    seen: set[frozenset[bytes]] = set()
    counts: Counter[int] = Counter()
    for key in g.sorted_keys():
        for a in range(rank):
            for b in range(a + 1, rank):
                face = _walk_face(g, key, a, b, budget.max_seeds)
                if face not in seen:
                    seen.add(face)
                    counts[len(face)] += 1
    return dict(sorted(counts.items()))


def membership_stats(
    graph: ExchangeGraph, name_of: Mapping[LaurentExpansion, str]
) -> tuple[dict[str, int], dict[str, int]]:
    """Count, for every labeled variable, the seeds containing it.

    Returns (per_variable, per_family); every variable of a family must
    belong to the same number of seeds, and every expansion must be labeled.
    """
    graph.require_complete()
    per_variable: Counter[str] = Counter()
    for key in graph.sorted_keys():
        for entry in graph.nodes[key].entries:
            exp = entry.expansion.sign_normalized()
            name = name_of.get(exp)
            if name is None:
                raise ExploreError(f"unlabeled cluster variable: {exp.text()}")
            per_variable[name] += 1
    families: dict[str, set[int]] = {}
    for name, count in per_variable.items():
        family = name.rstrip("0123456789")
        families.setdefault(family, set()).add(count)
    per_family = {}
    for family, counts in sorted(families.items()):
        if len(counts) != 1:
            raise ExploreError(
                f"family {family!r} has non-uniform membership counts: {sorted(counts)}"
            )
        per_family[family] = counts.pop()
    return dict(per_variable), per_family
