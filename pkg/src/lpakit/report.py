"""Verification reports: every expected property of a built-in class, checked
against the freshly computed context and rendered identically as text and as
JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .catalog import (
    E6_MEMBERSHIP,
    E6_ORBIT_TABLE,
    E6_QUOTIENT_EDGES,
    E6_QUOTIENT_LOOPS,
    E5_FAMILY_SIZES,
    E6_FAMILY_SIZES,
    EXPECTED_COUNTS,
    PROFILES,
    equations_for,
    find_seed_by_cluster,
    rank_check,
    verify_on_variety,
    _frozen_images,
)
from .context import ClassContext
from .explore import face_census, membership_stats
from .seed import canonical_key, mutate
from .symmetry import apply_symmetry, quotient_graph


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    seed: str
    seeds: int
    variables: int
    complete: bool
    checks: list[Check] = field(default_factory=list)
    family_membership: dict[str, int] | None = None
    orbit_sizes: list[int] | None = None
    positivity: bool | None = None
    residuals_ok: bool | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "seeds": self.seeds,
            "variables": self.variables,
            "complete": self.complete,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "family_membership": self.family_membership,
            "orbit_sizes": self.orbit_sizes,
            "positivity": self.positivity,
            "residuals_ok": self.residuals_ok,
            "elapsed_seconds": round(self.elapsed, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def render_text(self) -> str:
        lines = [f"seed: {self.seed}"]
        lines.append(f"seeds: {self.seeds}, variables: {self.variables}")
        if self.family_membership is not None:
            stats = ", ".join(f"{k}: {v}" for k, v in sorted(self.family_membership.items()))
            lines.append(f"membership (seeds per variable, by family): {stats}")
        if self.orbit_sizes is not None:
            lines.append(f"orbit sizes: {self.orbit_sizes}")
        if self.positivity is not None:
            lines.append(f"positivity: {'pass' if self.positivity else 'FAIL'}")
        if self.residuals_ok is not None:
            lines.append(f"equation residuals: {'all zero' if self.residuals_ok else 'NONZERO'}")
        for c in self.checks:
            mark = "ok" if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            lines.append(f"  [{mark}] {c.name}{detail}")
        lines.append(f"result: {'pass' if self.passed else 'FAIL'}")
        lines.append(f"elapsed: {self.elapsed:.2f}s")
        return "\n".join(lines) + "\n"


def positivity_scan(ctx: ClassContext) -> bool:
    """Every coefficient of every expansion and every exchange polynomial in
    the class is positive."""
    for seed in ctx.graph.nodes.values():
        for entry in seed.entries:
            if not entry.expansion.is_positive():
                return False
            if any(c <= 0 for c in entry.exchange.terms.values()):
                return False
    return True


def residuals_vanish(ctx: ClassContext) -> bool:
    assert ctx.labeling is not None
    images = {**_frozen_images(ctx.seed.table), **dict(ctx.labeling.by_name)}
    residuals = verify_on_variety(images, equations_for(ctx.name))
    return all(r.is_zero for _, r in residuals)


def verify_report(ctx: ClassContext) -> Report:
    """Full verification of a context against its expected values."""
    report = Report(
        ctx.name or "custom",
        ctx.seed_count,
        ctx.variable_count,
        ctx.graph.complete,
        elapsed=ctx.build_seconds,
    )
    if not ctx.graph.complete:
        report.add("exploration complete", False, ctx.graph.status)
        return report
    report.add("exploration complete", True, ctx.graph.status)

    if ctx.name in EXPECTED_COUNTS:
        seeds, variables = EXPECTED_COUNTS[ctx.name]
        report.add("seed count", ctx.seed_count == seeds, f"{ctx.seed_count} == {seeds}")
        report.add(
            "variable count", ctx.variable_count == variables, f"{ctx.variable_count} == {variables}"
        )

    report.positivity = positivity_scan(ctx)
    report.add("positivity scan", report.positivity)

    if ctx.name in PROFILES:
        profile = PROFILES[ctx.name]
        report.add("rank formula", rank_check(profile) and ctx.seed.rank == profile.rank)

    if ctx.labeling is not None and ctx.name != "a2-toy":
        report.residuals_ok = residuals_vanish(ctx)
        report.add("equation residuals vanish", report.residuals_ok)

    if ctx.labeling is not None:
        _, per_family = membership_stats(ctx.graph, ctx.labeling.name_of)
        report.family_membership = per_family
        if ctx.name == "e6":
            report.add("membership per family", per_family == E6_MEMBERSHIP, str(per_family))
            report.add(
                "family sizes",
                ctx.labeling.family_sizes() == E6_FAMILY_SIZES,
                str(ctx.labeling.family_sizes()),
            )
        elif ctx.name == "e5":
            report.add(
                "family sizes",
                ctx.labeling.family_sizes() == E5_FAMILY_SIZES,
                str(ctx.labeling.family_sizes()),
            )

    if ctx.partition is not None:
        report.orbit_sizes = sorted(ctx.partition.sizes, reverse=True)

    if ctx.name == "e4":
        report.add("exchange graph is a 5-cycle", _is_cycle(ctx, 5))
        report.add("mutation shifts indices", _rotation_matches_mutation(ctx))
    if ctx.name == "e5":
        report.add(
            "graph has 16 vertices and 24 edges",
            len(ctx.graph.nodes) == 16 and ctx.graph.edge_count == 24,
        )
        census = face_census(ctx.seed, ctx.budget, graph=ctx.graph)
        report.add("face census {5: 8, 4: 2}", census == {4: 2, 5: 8}, str(census))
        report.add("mutation shifts indices", _rotation_matches_mutation(ctx))
        report.add("q-variables match their quadrics", _e5_q_check(ctx))
    if ctx.name == "e6":
        sizes = sorted(ctx.partition.sizes) if ctx.partition else []
        report.add(
            "15 orbits of sizes 7x24 + 8x12",
            sizes == [12] * 8 + [24] * 7,
            str(sizes),
        )
        report.add("quotient graph matches", _e6_quotient_check(ctx))
        report.add(
            "orbit transitions (rows A, E, J)",
            all(_e6_row_check(ctx, row) for row in ("A", "E", "J")),
        )
        report.add("every seed has a nontrivial hat denominator", _hat_nontrivial(ctx))
    return report


def _is_cycle(ctx: ClassContext, n: int) -> bool:
    graph = ctx.graph
    if len(graph.nodes) != n or graph.edge_count != n:
        return False
    return all(
        len({e.target for e in graph.edges[k]}) == 2 for k in graph.nodes
    )


def _rotation_matches_mutation(ctx: ClassContext) -> bool:
    """Mutating the initial seed at the first slot equals the rotation image
    up to equivalence."""
    if ctx.rotation is None:
        return False
    mutated = mutate(ctx.seed, 0)
    rotated = apply_symmetry(ctx.rotation.seed_map, ctx.seed)
    return canonical_key(mutated) == canonical_key(rotated)


def _e5_q_check(ctx: ClassContext) -> bool:
    assert ctx.labeling is not None
    by = ctx.labeling.by_name
    x = {i: by[f"x{i}"] for i in range(1, 9)}
    a = {
        i: _frozen_images(ctx.seed.table)[f"a{i}"]
        for i in range(1, 9)
    }
    q1 = x[1] * x[5] - a[1] * a[5]
    q2 = x[2] * x[6] - a[2] * a[6]
    alt = x[3] * x[7] - a[3] * a[7]
    return q1 == by["q1"] and q2 == by["q2"] and alt == by["q1"]


def _e6_quotient_check(ctx: ClassContext) -> bool:
    assert ctx.partition is not None
    q = quotient_graph(ctx.graph, ctx.partition)
    labels = ctx.orbit_labels
    adjacency = {
        tuple(sorted((labels[i], labels[j]))) for (i, j) in q.adjacency()
    }
    loops = {labels[i] for i in q.loops}
    return adjacency == E6_QUOTIENT_EDGES and loops == E6_QUOTIENT_LOOPS


def _e6_row_check(ctx: ClassContext, label: str) -> bool:
    assert ctx.labeling is not None and ctx.partition is not None
    cluster, new_vars, orbits = E6_ORBIT_TABLE[label]
    key = find_seed_by_cluster(ctx.graph, ctx.labeling, cluster)
    names = ctx.labeling.names_of_seed(ctx.graph.nodes[key])
    for slot_name, expected_var, expected_orbit in zip(cluster, new_vars, orbits):
        edge = ctx.graph.edges[key][names.index(slot_name)]
        got_var = ctx.labeling.name_of.get(edge.new_variable.sign_normalized())
        got_orbit = ctx.orbit_labels[ctx.partition.orbit_of(edge.target)]
        if got_var != expected_var or got_orbit != expected_orbit:
            return False
    return True


def _hat_nontrivial(ctx: ClassContext) -> bool:
    return all(
        any(d != 0 for d in seed.hat_denominators)
        for seed in ctx.graph.nodes.values()
    )
