"""Shared per-class analysis context.

Building the full picture of a built-in class (exchange graph, variable
labeling, dihedral symmetries, orbit partition, orbit labels) is expensive
for e6, so the CLI, the HTTP server, and the test suite all go through this
cache.  Custom seed files get a context too, with the variety-specific parts
left as None.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from .catalog import (
    BUILTIN_NAMES,
    E6_ORBIT_TABLE,
    CatalogError,
    Labeling,
    VarietySymmetry,
    builtin_seed,
    class_key_map,
    classify_variables,
    equations_for,
    find_seed_by_cluster,
    rotation_label_action,
    symmetry_from_label_action,
)
from .explore import Budget, DEFAULT_BUDGET, ExchangeGraph, explore, variable_class
from .poly import LaurentExpansion
from .seed import Seed
from .symmetry import (
    Partition,
    orbit_partition,
    permutes_equation_set,
    search_index_reflection,
)


@dataclass
class ClassContext:
    name: str
    seed: Seed
    budget: Budget
    graph: ExchangeGraph
    variables: list[LaurentExpansion]
    labeling: Labeling | None = None
    rotation: VarietySymmetry | None = None
    reflection: VarietySymmetry | None = None
    partition: Partition | None = None
    orbit_labels: dict[int, str] = field(default_factory=dict)
    build_seconds: float = 0.0

    @property
    def seed_count(self) -> int:
        return len(self.graph.nodes)

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    def orbit_label_of(self, key: bytes) -> str | None:
        if self.partition is None:
            return None
        idx = self.partition.orbit_of(key)
        return self.orbit_labels.get(idx) or self.partition.orbit_name(idx)

    def cluster_names_of(self, key: bytes) -> list[str] | None:
        if self.labeling is None:
            return None
        return self.labeling.names_of_seed(self.graph.nodes[key])


def build_context(
    seed: Seed,
    name: str = "",
    budget: Budget = DEFAULT_BUDGET,
    workers: int = 1,
) -> ClassContext:
    """Explore the class and, for built-in variety seeds, classify variables
    and compute the dihedral orbit structure."""
    started = time.monotonic()
    graph = explore(seed, budget, workers)
    variables = variable_class(seed, budget, workers, graph=graph) if graph.complete else []
    ctx = ClassContext(name or seed.name, seed, budget, graph, variables)
    if graph.complete and ctx.name in BUILTIN_NAMES:
        ctx.labeling = classify_variables(variables, ctx.name)
        if ctx.name != "a2-toy":
            _attach_symmetries(ctx)
    ctx.build_seconds = time.monotonic() - started
    return ctx


def _attach_symmetries(ctx: ClassContext) -> None:
    equations = [eq.residual_poly() for eq in equations_for(ctx.name)]
    rot_action = rotation_label_action(ctx.name)
    if not permutes_equation_set(equations, rot_action):
        raise CatalogError(f"rotation does not permute the {ctx.name} equation set")
    assert ctx.labeling is not None
    ctx.rotation = symmetry_from_label_action(ctx.name, "rotation", rot_action, ctx.labeling)
    refl_action = search_index_reflection(equations, rot_action)
    ctx.reflection = symmetry_from_label_action(
        ctx.name, "reflection", refl_action, ctx.labeling
    )
    key_maps = [
        class_key_map(ctx.graph, ctx.labeling, ctx.rotation),
        class_key_map(ctx.graph, ctx.labeling, ctx.reflection),
    ]
    ctx.partition = orbit_partition(
        ctx.graph.nodes,
        [ctx.rotation.seed_map, ctx.reflection.seed_map],
        key_maps=key_maps,
    )
    if ctx.name == "e6":
        ctx.orbit_labels = _assign_e6_orbit_labels(ctx)


def _assign_e6_orbit_labels(ctx: ClassContext) -> dict[int, str]:
    assert ctx.labeling is not None and ctx.partition is not None
    labels: dict[int, str] = {}
    for label, (cluster, _, _) in E6_ORBIT_TABLE.items():
        key = find_seed_by_cluster(ctx.graph, ctx.labeling, cluster)
        idx = ctx.partition.orbit_of(key)
        if idx in labels:
            raise CatalogError(
                f"orbit label clash: {labels[idx]} and {label} share an orbit"
            )
        labels[idx] = label
    if len(labels) != len(ctx.partition.orbits):
        raise CatalogError("orbit labels do not cover the partition")
    return labels


_cache: dict[tuple[str, int, int], ClassContext] = {}
_cache_lock = threading.Lock()


def get_context(name: str, budget: Budget = DEFAULT_BUDGET, workers: int = 1) -> ClassContext:
    """Cached context for a built-in seed (exploration runs at most once per
    (seed, budget) per process)."""
    key = (name, budget.max_seeds, budget.max_terms)
    with _cache_lock:
        got = _cache.get(key)
    if got is not None:
        return got
    ctx = build_context(builtin_seed(name), name, budget, workers)
    with _cache_lock:
        return _cache.setdefault(key, ctx)
