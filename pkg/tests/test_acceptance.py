"""Acceptance gate: one test per headline criterion, each printing a PASS
line when every sub-check holds at its stated tolerance (exact equality for
all counts; wall-clock bounds as stated)."""

from __future__ import annotations

import random
import time

import pytest

from conftest import random_polynomial
from lpakit.catalog import (
    E6_MEMBERSHIP,
    E6_QUOTIENT_LOOPS,
    E6_ORBIT_TABLE,
    builtin_seed,
    equations_for,
    find_seed_by_cluster,
    named_expansions,
    verify_on_variety,
    _frozen_images,
)
from lpakit.cli import main as cli_main
from lpakit.context import build_context
from lpakit.explore import explore, face_census, membership_stats, mutation_class, variable_class
from lpakit.parser import parse_expansion, parse_polynomial, serialize_polynomial
from lpakit.poly import VariableTable, gcd
from lpakit.report import positivity_scan
from lpakit.seed import canonical_key, mutate
from lpakit.symmetry import apply_symmetry, quotient_graph


def _passed(label: str) -> None:
    print(f"ACCEPTANCE {label}: PASS")


def test_acceptance_a2_toy():
    started = time.monotonic()
    seed = builtin_seed("a2-toy")
    nodes, complete = mutation_class(seed)
    assert complete and len(nodes) == 5
    variables = variable_class(seed)
    assert len(variables) == 5
    assert "(x1 + x2 + 1)/(x1*x2)" in {v.text() for v in variables}
    elapsed = time.monotonic() - started
    assert elapsed < 1.0, f"a2-toy took {elapsed:.2f}s (budget 1s)"
    _passed(f"A2 toy (5 seeds, 5 variables, {elapsed:.2f}s)")


def test_acceptance_e4():
    started = time.monotonic()
    ctx = build_context(builtin_seed("e4"), "e4")
    assert ctx.seed_count == 5
    # Exchange graph is a 5-cycle.
    assert ctx.graph.edge_count == 5
    assert all(
        len({e.target for e in ctx.graph.edges[k]}) == 2 for k in ctx.graph.nodes
    )
    # Mutation at the first slot realizes the index shift up to equivalence.
    rotated = apply_symmetry(ctx.rotation.seed_map, ctx.seed)
    assert canonical_key(rotated) == canonical_key(mutate(ctx.seed, 0))
    # The five quadric residuals vanish identically.
    images = {**_frozen_images(ctx.seed.table), **named_expansions("e4")}
    residuals = verify_on_variety(images, equations_for("e4"))
    assert len(residuals) == 5 and all(r.is_zero for _, r in residuals)
    elapsed = time.monotonic() - started
    assert elapsed < 1.0, f"e4 took {elapsed:.2f}s (budget 1s)"
    _passed(f"E4 (pentagon, shift, residuals, {elapsed:.2f}s)")


def test_acceptance_e5():
    started = time.monotonic()
    ctx = build_context(builtin_seed("e5"), "e5")
    assert ctx.seed_count == 16 and ctx.variable_count == 10
    assert len(ctx.graph.nodes) == 16 and ctx.graph.edge_count == 24
    assert face_census(ctx.seed, graph=ctx.graph) == {4: 2, 5: 8}
    rotated = apply_symmetry(ctx.rotation.seed_map, ctx.seed)
    assert canonical_key(rotated) == canonical_key(mutate(ctx.seed, 0))
    by = ctx.labeling.by_name
    frozen = _frozen_images(ctx.seed.table)
    assert by["q1"] == by["x1"] * by["x5"] - frozen["a1"] * frozen["a5"]
    assert by["q2"] == by["x2"] * by["x6"] - frozen["a2"] * frozen["a6"]
    assert positivity_scan(ctx)
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"e5 took {elapsed:.2f}s (budget 5s)"
    _passed(f"E5 (16/10, f-vector, q-variables, positivity, {elapsed:.2f}s)")


def test_acceptance_e6_headline():
    started = time.monotonic()
    ctx = build_context(builtin_seed("e6"), "e6", workers=1)
    assert ctx.seed_count == 264, "seed count"
    assert ctx.variable_count == 32, "variable count"
    assert ctx.labeling.family_sizes() == {"x": 12, "z": 3, "y": 12, "t": 3, "u": 2}
    sizes = sorted(ctx.partition.sizes)
    assert sizes == [12] * 8 + [24] * 7, f"orbit sizes {sizes}"
    labels = ctx.orbit_labels
    # Quotient transitions, spot-checked on rows A, E, J.
    for row in ("A", "E", "J"):
        cluster, new_vars, orbits = E6_ORBIT_TABLE[row]
        key = find_seed_by_cluster(ctx.graph, ctx.labeling, cluster)
        names = ctx.labeling.names_of_seed(ctx.graph.nodes[key])
        for slot_name, expected_var, expected_orbit in zip(cluster, new_vars, orbits):
            edge = ctx.graph.edges[key][names.index(slot_name)]
            assert ctx.labeling.name_of[edge.new_variable.sign_normalized()] == expected_var
            assert labels[ctx.partition.orbit_of(edge.target)] == expected_orbit
    quotient = quotient_graph(ctx.graph, ctx.partition)
    assert {labels[i] for i in quotient.loops} == E6_QUOTIENT_LOOPS
    _, per_family = membership_stats(ctx.graph, ctx.labeling.name_of)
    assert per_family == E6_MEMBERSHIP
    images = {**_frozen_images(ctx.seed.table), **dict(ctx.labeling.by_name)}
    residuals = verify_on_variety(images, equations_for("e6"))
    assert len(residuals) == 27 and all(r.is_zero for _, r in residuals)
    assert positivity_scan(ctx)
    assert all(
        any(d != 0 for d in seed.hat_denominators) for seed in ctx.graph.nodes.values()
    )
    elapsed = time.monotonic() - started
    assert elapsed < 300.0, f"e6 took {elapsed:.1f}s (budget 300s)"
    _passed(f"E6 headline (264/32, orbits, quotient, membership, residuals, {elapsed:.1f}s)")


@pytest.mark.parametrize("name", ["a2-toy", "e4", "e5", "e6"])
def test_acceptance_property_involutivity(name, request):
    ctx = request.getfixturevalue("ctx_" + name.replace("-toy", ""))
    for seed in ctx.graph.nodes.values():
        for i in range(seed.rank):
            assert canonical_key(mutate(mutate(seed, i), i)) == canonical_key(seed)
    _passed(f"involutivity on every seed/slot of {name} ({ctx.seed_count} seeds)")


@pytest.mark.parametrize("name", ["a2-toy", "e4", "e5", "e6"])
def test_acceptance_property_rerooted_exploration(name, request):
    ctx = request.getfixturevalue("ctx_" + name.replace("-toy", ""))
    base = set(ctx.graph.nodes)
    keys = ctx.graph.sorted_keys()
    rng = random.Random(0xC0FFEE + len(keys))
    roots = [keys[rng.randrange(len(keys))] for _ in range(10)]
    for n, root in enumerate(roots):
        workers = 1 if n % 2 == 0 else 4
        rerooted = explore(ctx.graph.nodes[root], ctx.budget, workers=workers)
        assert rerooted.complete
        assert set(rerooted.nodes) == base, f"re-root {n} of {name} differs"
    _passed(f"re-rooted exploration x10 (workers 1 and 4) on {name}")


@pytest.mark.parametrize("name", ["a2-toy", "e4", "e5", "e6"])
def test_acceptance_property_schedule_independence(name):
    seed = builtin_seed(name)
    single = explore(seed, workers=1)
    multi = explore(seed, workers=4)
    assert set(single.nodes) == set(multi.nodes)
    assert single.edge_count == multi.edge_count
    _passed(f"schedule independence (1 vs 4 workers) on {name}")


def test_acceptance_property_poly_oracles():
    table = VariableTable(["a1", "a2"], ["x1", "x2", "x3"])
    rng = random.Random(1234)
    # Divide-back on 1000 randomized instances.
    checked = 0
    while checked < 1000:
        p = random_polynomial(rng, table, allow_zero=True)
        q = random_polynomial(rng, table)
        if q.is_zero:
            continue
        assert (p * q).exact_divide(q) == p
        checked += 1
    # gcd divides both arguments on 1000 randomized instances.
    checked = 0
    while checked < 1000:
        p = random_polynomial(rng, table, max_terms=3, max_exp=2, max_coeff=5)
        q = random_polynomial(rng, table, max_terms=3, max_exp=2, max_coeff=5)
        if p.is_zero or q.is_zero:
            continue
        g = gcd(p, q)
        assert p.exact_divide(g) is not None and q.exact_divide(g) is not None
        checked += 1
    # parse(serialize(p)) identity on 1000 randomized instances.
    for _ in range(1000):
        p = random_polynomial(rng, table, max_terms=6, max_exp=4, allow_zero=True)
        assert parse_polynomial(serialize_polynomial(p), table) == p
    _passed("poly oracles (divide-back, gcd-divides-both, parse/serialize) x1000")


def test_acceptance_session_parity(capsys):
    # First transcript: the rank-2 class over five frozen coefficients.
    assert cli_main(["explore", "--seed", "e4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "seeds: 5, variables: 5"

    # Second: its five cluster variables, compared as field elements (the
    # printed transcript orders terms differently).
    assert cli_main(["explore", "--seed", "e4", "--list-variables"]) == 0
    lines = capsys.readouterr().out.splitlines()[1:]
    table = VariableTable([f"a{i}" for i in range(1, 6)], ["x1", "x2"])
    printed = [
        "(x1*a5*a1 + x2*a2*a3 + a4*a5*a3)/(x1*x2)",
        "(x1*a1 + a4*a3)/x2",
        "(x2*a2 + a4*a5)/x1",
        "x2",
        "x1",
    ]
    expected = {parse_expansion(s, table).sign_normalized() for s in printed}
    got = {parse_expansion(s, table).sign_normalized() for s in lines}
    assert got == expected

    # Third: the rank-3 class counts.
    assert cli_main(["explore", "--seed", "e5"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "seeds: 16, variables: 10"
    _passed("session parity (5 / five-variable list / 16 and 10)")
