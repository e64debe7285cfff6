"""Group actions on seeds, orbit partitions, and quotient graphs.

A :class:`SymmetryMap` is an ambient-field automorphism given by a
permutation of the frozen names together with an image expansion for every
initial cluster variable; it acts on a seed by substituting those images into
each stored expansion (exchange polynomials only have their frozen names
relabeled, since slot symbols are positional).

A :class:`LabelAction` is the lighter object used for equation bookkeeping: a
permutation of the variable *names* of a table.  Reflection generators are
searched for, not assumed: :func:`search_index_reflection` scans index
reflections compatible with a given rotation and keeps the first one that
permutes the defining equation set and closes a dihedral group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .explore import ExchangeGraph
from .poly import (
    LaurentExpansion,
    Polynomial,
    VariableTable,
    evaluate_at_expansions,
)
from .seed import Seed, SeedEntry, canonical_key


class SymmetryError(ValueError):
    pass


def permute_variables(p: Polynomial, perm: Sequence[int]) -> Polynomial:
    """Apply a variable-index permutation (frozen to frozen, cluster to
    cluster) to every term."""
    table = p.table
    out: dict[int, int] = {}
    for key, c in p.terms.items():
        exps = table.unpack(key)
        out[table._pack((perm[v], e) for v, e in enumerate(exps) if e)] = c
    return Polynomial(table, out)


@dataclass(frozen=True)
class LabelAction:
    """Permutation of a table's variable names."""

    table: VariableTable
    mapping: tuple[int, ...]

    @classmethod
    def from_names(cls, table: VariableTable, names: Mapping[str, str]) -> LabelAction:
        perm = list(range(len(table)))
        for src, dst in names.items():
            perm[table.index(src)] = table.index(dst)
        frozen_ok = all(
            table.index(n) < table._cluster_lo or perm[table.index(n)] >= table._cluster_lo
            for n in table.names
        )
        if sorted(perm) != list(range(len(table))) or not frozen_ok:
            raise SymmetryError("label action must be a kind-preserving bijection")
        for v in range(len(table)):
            if (v < table._cluster_lo) != (perm[v] < table._cluster_lo):
                raise SymmetryError("label action may not mix frozen and cluster names")
        return cls(table, tuple(perm))

    def name_map(self) -> dict[str, str]:
        return {self.table.names[v]: self.table.names[w] for v, w in enumerate(self.mapping)}

    def apply(self, p: Polynomial) -> Polynomial:
        return permute_variables(p, self.mapping)

    def compose(self, other: LabelAction) -> LabelAction:
        """self after other: (self . other)(v) = self(other(v))."""
        return LabelAction(self.table, tuple(self.mapping[w] for w in other.mapping))

    def inverse(self) -> LabelAction:
        inv = [0] * len(self.mapping)
        for v, w in enumerate(self.mapping):
            inv[w] = v
        return LabelAction(self.table, tuple(inv))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.mapping))

    def order(self) -> int:
        power = self
        for k in range(1, 10000):
            if power.is_identity():
                return k
            power = power.compose(self)
        raise SymmetryError("order exceeded bound")


def permutes_equation_set(equations: Sequence[Polynomial], action: LabelAction) -> bool:
    """True when the action permutes the set of equation polynomials up to
    sign."""
    normal = {frozenset(eq.sign_normalized().terms.items()) for eq in equations}
    image = {frozenset(action.apply(eq).sign_normalized().terms.items()) for eq in equations}
    return normal == image


@dataclass(frozen=True)
class SymmetryMap:
    """Frozen-name permutation plus image expansions of the initial cluster."""

    frozen_map: Mapping[str, str]
    cluster_images: Mapping[str, LaurentExpansion]
    order_hint: int | None = None
    name: str = ""

    def frozen_perm(self, table: VariableTable) -> tuple[int, ...]:
        perm = list(range(len(table)))
        for src, dst in self.frozen_map.items():
            si, di = table.index(src), table.index(dst)
            if table.is_cluster(si) or table.is_cluster(di):
                raise SymmetryError("frozen_map must map frozen names to frozen names")
            perm[si] = di
        if sorted(perm) != list(range(len(table))):
            raise SymmetryError("frozen_map must be a bijection")
        return tuple(perm)

    @classmethod
    def identity(cls, table: VariableTable) -> SymmetryMap:
        return cls(
            frozen_map={},
            cluster_images={
                name: LaurentExpansion.for_variable(table, name)
                for name in table.cluster_names
            },
            order_hint=1,
            name="identity",
        )


def apply_to_expansion(m: SymmetryMap, exp: LaurentExpansion) -> LaurentExpansion:
    """Image of a field element under the automorphism: substitute cluster
    images and permute frozen names."""
    table = exp.table
    perm = m.frozen_perm(table)
    images = [m.cluster_images[name] for name in table.cluster_names]
    num = exp.num
    if any(v != w for v, w in enumerate(perm)):
        num = permute_variables(num, perm)
    num_img = evaluate_at_expansions(num, images)
    if exp.den == 0:
        return num_img
    den_img = LaurentExpansion.from_polynomial(Polynomial.constant(table, 1))
    for slot in range(table.rank):
        e = table.exponent(exp.den, table.cluster_index(slot))
        if e:
            den_img = den_img * images[slot] ** e
    return num_img / den_img


def apply_symmetry(m: SymmetryMap, seed: Seed) -> Seed:
    """Image seed: expansions substituted, exchange polynomials with frozen
    names relabeled (slot symbols are positional and unchanged)."""
    table = seed.table
    perm = m.frozen_perm(table)
    relabel = any(v != w for v, w in enumerate(perm))
    entries = []
    for entry in seed.entries:
        exp = apply_to_expansion(m, entry.expansion).sign_normalized()
        if exp.is_zero:
            raise SymmetryError("image escapes class: expansion vanished")
        f = permute_variables(entry.exchange, perm) if relabel else entry.exchange
        entries.append(SeedEntry(exp, f.sign_normalized()))
    return Seed(table, entries, name=seed.name)


@dataclass(frozen=True)
class Partition:
    """Orbit partition of a canonical-key set; orbits are sorted by smallest
    contained key and named by it."""

    orbits: tuple[tuple[bytes, ...], ...]
    index: Mapping[bytes, int]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def orbit_of(self, key: bytes) -> int:
        return self.index[key]

    def orbit_name(self, i: int) -> str:
        return self.orbits[i][0].hex()[:12]


def trivial_partition(keys: Sequence[bytes]) -> Partition:
    orbits = tuple((k,) for k in sorted(keys))
    return Partition(orbits, {k: i for i, (k,) in enumerate(orbits)})


def orbit_partition(
    nodes: Mapping[bytes, Seed],
    gens: Sequence[SymmetryMap],
    key_maps: Sequence[Mapping[bytes, bytes]] | None = None,
) -> Partition:
    """Orbits of the key set under the group generated by ``gens``.

    ``key_maps`` may supply the precomputed key bijection of each generator
    (as produced by a catalog's name-level action); otherwise each generator
    is applied to every seed via :func:`apply_symmetry`.  A generator moving
    a seed outside the set is an error.
    """
    if key_maps is None:
        key_maps = [_key_map(nodes, g) for g in gens]
    parent: dict[bytes, bytes] = {k: k for k in nodes}

    def find(k: bytes) -> bytes:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    for key_map in key_maps:
        for src in nodes:
            dst = key_map[src]
            if dst not in nodes:
                raise SymmetryError("generator moves a seed outside the set")
            ra, rb = find(src), find(dst)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[bytes, list[bytes]] = {}
    for k in nodes:
        groups.setdefault(find(k), []).append(k)
    orbits = tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))
    index = {k: i for i, orbit in enumerate(orbits) for k in orbit}
    return Partition(orbits, index)


def _key_map(nodes: Mapping[bytes, Seed], gen: SymmetryMap) -> dict[bytes, bytes]:
    out = {}
    for key, seed in nodes.items():
        image = apply_symmetry(gen, seed)
        out[key] = canonical_key(image)
    return out


@dataclass
class QuotientGraph:
    """Projection of an exchange graph onto an orbit partition: nodes are
    orbits, edges the projected undirected edge multiset (loops allowed)."""

    partition: Partition
    pair_counts: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return len(self.partition.orbits)

    @property
    def loops(self) -> set[int]:
        return {i for (i, j) in self.pair_counts if i == j}

    def adjacency(self) -> set[tuple[int, int]]:
        return {(i, j) for (i, j) in self.pair_counts if i != j}


def quotient_graph(graph: ExchangeGraph, partition: Partition) -> QuotientGraph:
    graph.require_complete()
    counts: Counter[tuple[int, int]] = Counter()
    for edge in graph.undirected_edges():
        a = partition.orbit_of(edge.source)
        b = partition.orbit_of(edge.target)
        counts[(min(a, b), max(a, b))] += 1
    return QuotientGraph(partition, dict(sorted(counts.items())))


def neighbor_orbits(graph: ExchangeGraph, partition: Partition, key: bytes) -> list[int]:
    """Orbit index of each neighbor of ``key``, slot by slot."""
    return [partition.orbit_of(edge.target) for edge in graph.edges[key]]


def search_index_reflection(
    equations: Sequence[Polynomial],
    rotation: LabelAction,
) -> LabelAction:
    """Find an index reflection forming a dihedral group with ``rotation``.

    Candidates map a_i to a_{ca-i} and x_i to x_{cx-i} (indices mod the
    family size), and z_k to z_{d-k} when a z family exists; they are scanned
    in lexicographic (ca, cx, d) order.  A candidate wins when it permutes
    the equation set (up to sign) and conjugates the rotation to its inverse.
    Raises SymmetryError when none exists.
    """
    table = rotation.table
    families = _index_families(table)
    if "a" not in families or "x" not in families:
        raise SymmetryError("reflection search needs 'a' and 'x' index families")
    ha, hx = len(families["a"]), len(families["x"])
    hz = len(families.get("z", ()))
    sigma_inv = rotation.inverse()
    z_offsets = range(1, hz + 1) if hz else (0,)
    for ca in range(1, ha + 1):
        for cx in range(1, hx + 1):
            for d in z_offsets:
                names: dict[str, str] = {}
                for idx in range(1, ha + 1):
                    names[f"a{idx}"] = f"a{_wrap(ca - idx, ha)}"
                for idx in range(1, hx + 1):
                    names[f"x{idx}"] = f"x{_wrap(cx - idx, hx)}"
                for idx in range(1, hz + 1):
                    names[f"z{idx}"] = f"z{_wrap(d - idx, hz)}"
                try:
                    cand = LabelAction.from_names(table, names)
                except SymmetryError:
                    continue
                if not permutes_equation_set(equations, cand):
                    continue
                conj = cand.compose(rotation).compose(cand)
                if conj.mapping != sigma_inv.mapping:
                    continue
                return cand
    raise SymmetryError("no index reflection permutes the equation set")


def _index_families(table: VariableTable) -> dict[str, list[str]]:
    families: dict[str, list[str]] = {}
    for name in table.names:
        prefix = name.rstrip("0123456789")
        families.setdefault(prefix, []).append(name)
    return families


def _wrap(i: int, modulus: int) -> int:
    return (i - 1) % modulus + 1
