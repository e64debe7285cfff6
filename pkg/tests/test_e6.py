"""The rank-5 class: full orbit table, quotient structure, census fixture."""

from __future__ import annotations

from collections import Counter

from lpakit.catalog import (
    E6_MEMBERSHIP,
    E6_ORBIT_TABLE,
    E6_QUOTIENT_EDGES,
    E6_QUOTIENT_LOOPS,
    find_seed_by_cluster,
)
from lpakit.explore import face_census, membership_stats
from lpakit.symmetry import neighbor_orbits, quotient_graph

# Orbit sizes per label, derived from the transition table by directed-edge
# counting and confirmed by computation.
ORBIT_SIZES = {
    "A": 24, "B": 24, "C": 24, "D": 12, "E": 24, "F": 24, "G": 12, "H": 24,
    "I": 12, "J": 24, "K": 12, "L": 12, "M": 12, "N": 12, "O": 12,
}

# Non-paper regression fixture: census of rank-2 mutation cycles.  The 24
# triangles live around the J-orbit seeds, whose three x-slots all mutate to
# the same missing coordinate.
FACE_CENSUS = {3: 24, 4: 300, 5: 216, 6: 48}


def test_headline_counts(ctx_e6):
    assert ctx_e6.seed_count == 264
    assert ctx_e6.variable_count == 32


def test_orbit_size_multiset(ctx_e6):
    assert sorted(ctx_e6.partition.sizes) == [12] * 8 + [24] * 7


def test_orbit_sizes_by_label(ctx_e6):
    got = {
        label: len(ctx_e6.partition.orbits[idx])
        for idx, label in ctx_e6.orbit_labels.items()
    }
    assert got == ORBIT_SIZES


def test_full_orbit_transition_table(ctx_e6):
    labeling = ctx_e6.labeling
    partition = ctx_e6.partition
    for label, (cluster, new_vars, orbits) in E6_ORBIT_TABLE.items():
        key = find_seed_by_cluster(ctx_e6.graph, labeling, cluster)
        assert ctx_e6.orbit_labels[partition.orbit_of(key)] == label
        names = labeling.names_of_seed(ctx_e6.graph.nodes[key])
        for slot_name, expected_var, expected_orbit in zip(cluster, new_vars, orbits):
            edge = ctx_e6.graph.edges[key][names.index(slot_name)]
            got_var = labeling.name_of[edge.new_variable.sign_normalized()]
            got_orbit = ctx_e6.orbit_labels[partition.orbit_of(edge.target)]
            assert (got_var, got_orbit) == (expected_var, expected_orbit), (
                f"row {label}, slot {slot_name}"
            )


def test_quotient_structure(ctx_e6):
    q = quotient_graph(ctx_e6.graph, ctx_e6.partition)
    labels = ctx_e6.orbit_labels
    assert q.node_count == 15
    adjacency = {tuple(sorted((labels[i], labels[j]))) for (i, j) in q.adjacency()}
    assert adjacency == E6_QUOTIENT_EDGES
    assert {labels[i] for i in q.loops} == E6_QUOTIENT_LOOPS


def test_neighbor_orbit_multisets(ctx_e6):
    # Every seed of an orbit sees the same multiset of neighbor orbits.
    labels = ctx_e6.orbit_labels
    partition = ctx_e6.partition
    for orbit in partition.orbits:
        reference = None
        for key in orbit[:3]:
            seen = Counter(
                labels[o] for o in neighbor_orbits(ctx_e6.graph, partition, key)
            )
            if reference is None:
                reference = seen
            assert seen == reference


def test_membership_counts(ctx_e6):
    per_variable, per_family = membership_stats(ctx_e6.graph, ctx_e6.labeling.name_of)
    assert per_family == E6_MEMBERSHIP
    assert sum(per_variable.values()) == 264 * 5


def test_positivity_everywhere(ctx_e6):
    for seed in ctx_e6.graph.nodes.values():
        for entry in seed.entries:
            assert entry.expansion.is_positive()
            assert all(c > 0 for c in entry.exchange.terms.values())


def test_every_seed_has_nontrivial_hat(ctx_e6):
    for seed in ctx_e6.graph.nodes.values():
        assert any(d != 0 for d in seed.hat_denominators)


def test_face_census_fixture(ctx_e6):
    assert face_census(ctx_e6.seed, graph=ctx_e6.graph) == FACE_CENSUS


def test_levels_cover_class(ctx_e6):
    assert sum(ctx_e6.graph.levels) == 264
