"""Seeds and their mutation.

A seed of rank n pairs each of n cluster variables with an exchange
polynomial.  Cluster variables are stored as reduced Laurent expansions over
the *initial* cluster of the mutation class; exchange polynomials are written
in per-slot symbols which, by convention, are the initial cluster names used
positionally (slot k's symbol is the k-th cluster name, whatever variable
currently sits in that slot).

Mutation at slot i follows the three-step procedure: replace the slot-i
variable through the exchange relation x_i * x_i' = Fhat_i (using the
exchange *Laurent* polynomial, i.e. F_i over its canonical monomial
denominator), substitute into every other exchange polynomial that depends
on slot i, cancel common factors, and normalize by stripping the monomial
factor with unit coefficient 1.

Seeds are identified up to sign of each entry and up to slot permutation;
:func:`canonical_key` realizes that equivalence as a byte digest.  The pure
index-wise comparison (signs only, no permutation) is exposed as
:func:`strictly_equivalent`.
"""

from __future__ import annotations

import hashlib
import logging
from typing import NamedTuple, Sequence

from .poly import (
    LaurentExpansion,
    Polynomial,
    StructuralError,
    VariableTable,
    evaluate_at_expansions,
    gcd,
)

logger = logging.getLogger(__name__)


class SeedError(ValueError):
    """Seed data violates a contract."""


class MutationEscape(SeedError):
    """Mutation produced a value that is not a Laurent expansion in the
    initial cluster; the starting seed does not define a valid class."""


class SeedEntry(NamedTuple):
    expansion: LaurentExpansion
    exchange: Polynomial


class Seed:
    """Immutable rank-n seed.  ``entries[k]`` is the (expansion, exchange)
    pair of slot k; hat denominators are computed lazily and cached."""

    __slots__ = ("table", "entries", "name", "_hat", "_canon")

    def __init__(
        self,
        table: VariableTable,
        entries: Sequence[SeedEntry],
        name: str = "",
        hat_dens: tuple[int, ...] | None = None,
    ):
        if len(entries) != table.rank:
            raise SeedError("seed must have one entry per cluster variable")
        self.table = table
        self.entries = tuple(entries)
        self.name = name
        self._hat = hat_dens
        self._canon: tuple[Seed, tuple[int, ...], bytes] | None = None

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def hat_denominators(self) -> tuple[int, ...]:
        """Denominator monomials (in slot symbols) of the exchange Laurent
        polynomials; Fhat_i = F_i / monomial."""
        if self._hat is None:
            self._hat = compute_hat_denominators(self.table, self.entries)
        return self._hat

    def expansions(self) -> list[LaurentExpansion]:
        return [e.expansion for e in self.entries]

    def exchanges(self) -> list[Polynomial]:
        return [e.exchange for e in self.entries]

    def __repr__(self) -> str:
        label = self.name or f"rank-{self.rank} seed"
        return f"Seed({label})"

    def text(self) -> str:
        """Entry list in canonical text form (one slot per line)."""
        lines = []
        for entry in self.entries:
            lines.append(f"{entry.expansion.text()} :: {entry.exchange.text()}")
        return "\n".join(lines)


def exchange_laurent(seed: Seed) -> tuple[int, ...]:
    """Denominator monomials of the exchange Laurent polynomials, slot by
    slot (packed keys over the slot symbols)."""
    return seed.hat_denominators


def initial_seed(table: VariableTable, exchanges: Sequence[Polynomial], name: str = "") -> Seed:
    """Seed whose cluster is the initial cluster itself."""
    entries = [
        SeedEntry(LaurentExpansion.for_variable(table, cname), exchange)
        for cname, exchange in zip(table.cluster_names, exchanges, strict=True)
    ]
    return Seed(table, entries, name=name)


def validate_seed(seed: Seed) -> list[str]:
    """Check the slot conditions; returns a list of violations (empty = ok).

    Checks: each exchange polynomial is nonzero, not a unit, independent of
    its own slot, and carries no monomial factor (hence no cluster-variable
    divisor).  Full irreducibility is not decided.  Never raises.
    """
    table = seed.table
    violations: list[str] = []
    for i, entry in enumerate(seed.entries):
        slot = table.cluster_names[i]
        f = entry.exchange
        if f.is_zero:
            violations.append(f"slot {i + 1} ({slot}): exchange polynomial is zero")
            continue
        if f.is_unit:
            violations.append(f"slot {i + 1} ({slot}): exchange polynomial is a unit")
            continue
        if f.depends_on(table.cluster_index(i)):
            violations.append(
                f"slot {i + 1} ({slot}): exchange polynomial depends on its own cluster variable"
            )
        mono, _ = f.strip_monomial()
        if mono:
            violations.append(
                f"slot {i + 1} ({slot}): exchange polynomial is divisible by the"
                f" cluster monomial {table.mono_text(mono)}"
            )
        if entry.expansion.is_zero:
            violations.append(f"slot {i + 1} ({slot}): cluster variable expansion is zero")
    return violations


def compute_hat_denominators(
    table: VariableTable, entries: Sequence[SeedEntry]
) -> tuple[int, ...]:
    """For each slot i and each j != i, the slot-j exponent of the hat
    denominator is the largest m with F_j**m dividing F_i after substituting
    slot j's symbol by F_j / x_j (denominators cleared)."""
    n = len(entries)
    dens = []
    for i in range(n):
        fi = entries[i].exchange
        den = 0
        for j in range(n):
            if j == i:
                continue
            fj = entries[j].exchange
            vj = table.cluster_index(j)
            slot_key = table.monomial({table.cluster_names[j]: 1})
            if fi.depends_on(vj):
                cleared = fi.substitute_rational(vj, fj, slot_key).num
                m = cleared.divisibility_order(fj)
            else:
                m = fi.divisibility_order(fj)
            if m:
                den += m * slot_key
        dens.append(den)
    return tuple(dens)


def mutate(seed: Seed, i: int) -> Seed:
    """Mutate at slot i (0-based); returns a fresh seed.

    The mutated slot keeps its exchange polynomial verbatim; every other
    exchange polynomial that depends on slot i goes through substitution,
    cancellation against Fhat_i |_{x_j <- 0}, and monomial normalization with
    unit coefficient 1 (realized as sign normalization after stripping).
    """
    table = seed.table
    n = seed.rank
    if not 0 <= i < n:
        raise SeedError(f"slot index {i} out of range for rank {n}")
    entries = seed.entries
    fi = entries[i].exchange
    hat_den = seed.hat_denominators[i]
    vi = table.cluster_index(i)

    images = [e.expansion for e in entries]
    try:
        value = evaluate_at_expansions(fi, images)
        for k in range(n):
            e = table.exponent(hat_den, table.cluster_index(k))
            if e:
                value = value / (images[k] ** e)
        new_expansion = (value / images[i]).sign_normalized()
    except StructuralError as exc:
        raise MutationEscape(
            f"mutation at slot {i + 1} escaped the mutation class: {exc}"
        ) from exc
    if new_expansion.is_zero:
        raise MutationEscape(f"mutation at slot {i + 1} produced the zero expansion")

    new_entries: list[SeedEntry] = []
    for j in range(n):
        if j == i:
            new_entries.append(SeedEntry(new_expansion, fi))
            continue
        fj = entries[j].exchange
        if not fj.depends_on(vi):
            new_entries.append(entries[j])
            continue
        vj = table.cluster_index(j)
        if table.exponent(hat_den, vj):
            raise StructuralError(
                "hat denominator involves a slot whose exchange polynomial"
                " depends on the mutated slot"
            )
        restricted = fi.specialize_zero(vj)
        if restricted.is_zero:
            # Unreachable for valid seeds (it would mean a cluster variable
            # divides the exchange polynomial); substitute zero and flag.
            logger.warning(
                "degenerate substitution at slots (%d, %d): restricted hat is zero",
                i + 1,
                j + 1,
            )
            q = fj.specialize_zero(vi)
        else:
            den = hat_den + table.monomial({table.cluster_names[i]: 1})
            q = fj.substitute_rational(vi, restricted, den).num
            while True:
                g = gcd(q, restricted)
                _, core = g.strip_monomial()
                if core.is_unit:
                    break
                divided = q.exact_divide(core)
                if divided is None:
                    raise SeedError("cancellation failed to divide exactly")
                q = divided
        if q.is_zero:
            raise MutationEscape(f"exchange update at slot {j + 1} vanished")
        _, q = q.strip_monomial()
        new_entries.append(SeedEntry(entries[j].expansion, q.sign_normalized()))
    return Seed(table, new_entries, name=seed.name)


# -- equivalence and canonical form ---------------------------------------


def canonical_form(seed: Seed) -> tuple[Seed, tuple[int, ...]]:
    """Canonical representative and the slot map taking original slot s to
    its canonical position.

    Entries are sign-normalized and sorted by expansion; exchange polynomials
    have their slot symbols relabeled consistently and are sign-normalized.
    Expansions within a seed are distinct, so the order is total.
    """
    canon, slotmap, _ = _canonical(seed)
    return canon, slotmap


def canonical_key(seed: Seed) -> bytes:
    """Digest that is equal exactly for equivalent seeds (sign normalization
    plus slot permutation)."""
    _, _, key = _canonical(seed)
    return key


def _canonical(seed: Seed) -> tuple[Seed, tuple[int, ...], bytes]:
    if seed._canon is not None:
        return seed._canon
    table = seed.table
    n = seed.rank
    norm = [entry.expansion.sign_normalized() for entry in seed.entries]
    order = sorted(range(n), key=lambda s: norm[s].sort_key())
    slotmap = [0] * n
    for pos, s in enumerate(order):
        slotmap[s] = pos
    entries = []
    hat = seed.hat_denominators
    new_hat = []
    for pos, s in enumerate(order):
        f = seed.entries[s].exchange
        relabeled = Polynomial(
            table, {table.permute_cluster(k, slotmap): c for k, c in f.terms.items()}
        ).sign_normalized()
        entries.append(SeedEntry(norm[s], relabeled))
        new_hat.append(table.permute_cluster(hat[s], slotmap))

    h = hashlib.blake2b(digest_size=16)
    for entry in entries:
        h.update(b"|x%d" % entry.expansion.den)
        for k in sorted(entry.expansion.num.terms, reverse=True):
            h.update(b"%d:%d;" % (k, entry.expansion.num.terms[k]))
        h.update(b"|F")
        for k in sorted(entry.exchange.terms, reverse=True):
            h.update(b"%d:%d;" % (k, entry.exchange.terms[k]))
    key = h.digest()

    canon = Seed(table, entries, name=seed.name, hat_dens=tuple(new_hat))
    canon._canon = (canon, tuple(range(n)), key)
    seed._canon = (canon, tuple(slotmap), key)
    return seed._canon


def equivalent(a: Seed, b: Seed) -> bool:
    return canonical_key(a) == canonical_key(b)


def strictly_equivalent(a: Seed, b: Seed) -> bool:
    """Index-wise equivalence: entries match slot by slot up to sign, with no
    permutation allowed."""
    if a.rank != b.rank or a.table != b.table:
        return False
    for ea, eb in zip(a.entries, b.entries):
        if ea.expansion.sign_normalized() != eb.expansion.sign_normalized():
            return False
        if ea.exchange.sign_normalized() != eb.exchange.sign_normalized():
            return False
    return True
