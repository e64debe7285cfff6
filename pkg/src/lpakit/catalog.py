"""Built-in seeds, defining equations, and cluster-variable classification.

The four built-in seeds (``a2-toy``, ``e4``, ``e5``, ``e6``) ship as seed
files under ``lpakit/data`` and parse through the ordinary seed-file path.
For each of the three variety-backed seeds this module also knows:

- the quadratic equations cutting out the variety, generated from one
  printed representative per index orbit by the index-shift action;
- how to expand every ambient coordinate (and the derived quadratic/cubic/
  quartic cluster variables) as a Laurent expansion in the initial cluster,
  which classifies the variables discovered by exploration;
- the rotation symmetry, realized both as a label action on coordinate
  names and as an ambient-field automorphism acting on seeds.

Reflections are not hard-coded: they are searched from the equation set
(:func:`lpakit.symmetry.search_index_reflection`) and then extended to the
derived variable names empirically, by mapping each defining formula through
the label action and looking the resulting expansion up in the name table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

from .explore import ExchangeGraph
from .parser import parse_polynomial, parse_seed_file
from .poly import LaurentExpansion, Polynomial, VariableTable
from .seed import Seed, mutate
from .symmetry import LabelAction, SymmetryMap

BUILTIN_NAMES = ("a2-toy", "e4", "e5", "e6")


class CatalogError(ValueError):
    pass


def builtin_seed(name: str) -> Seed:
    """Load a built-in seed by name (validated on parse)."""
    if name not in BUILTIN_NAMES:
        raise CatalogError(f"unknown built-in seed {name!r}; choose from {BUILTIN_NAMES}")
    src = resources.files("lpakit.data").joinpath(f"{name}.json").read_text("utf-8")
    return parse_seed_file(src)


def seed_file_text(name: str) -> str:
    if name not in BUILTIN_NAMES:
        raise CatalogError(f"unknown built-in seed {name!r}")
    return resources.files("lpakit.data").joinpath(f"{name}.json").read_text("utf-8")


# -- numerical profiles -----------------------------------------------------


@dataclass(frozen=True)
class VarietyProfile:
    name: str
    dim: int
    coxeter: int
    gammas: tuple[int, int, int]
    seeds: int
    variables: int
    rank: int


PROFILES: dict[str, VarietyProfile] = {
    "e4": VarietyProfile("e4", dim=6, coxeter=5, gammas=(10, 5, 5), seeds=5, variables=5, rank=2),
    "e5": VarietyProfile("e5", dim=10, coxeter=8, gammas=(16, 10, 16), seeds=16, variables=10, rank=3),
    "e6": VarietyProfile("e6", dim=16, coxeter=12, gammas=(27, 27, 72), seeds=264, variables=32, rank=5),
}

EXPECTED_COUNTS: dict[str, tuple[int, int]] = {
    "a2-toy": (5, 5),
    "e4": (5, 5),
    "e5": (16, 10),
    "e6": (264, 32),
}

E6_FAMILY_SIZES = {"x": 12, "z": 3, "y": 12, "t": 3, "u": 2}
E5_FAMILY_SIZES = {"x": 8, "q": 2}
E6_MEMBERSHIP = {"x": 60, "y": 32, "z": 40, "t": 8, "u": 36}


def rank_check(profile: VarietyProfile) -> bool:
    """Ambient dimension + 1 - Coxeter number must equal the seed rank."""
    return profile.dim + 1 - profile.coxeter == profile.rank


# -- ambient coordinate tables and equations --------------------------------


def spinor_table(name: str) -> VariableTable:
    """Table of the ambient projective coordinates (frozen + non-frozen)."""
    if name == "e4":
        return VariableTable([f"a{i}" for i in range(1, 6)], [f"x{i}" for i in range(1, 6)])
    if name == "e5":
        return VariableTable([f"a{i}" for i in range(1, 9)], [f"x{i}" for i in range(1, 9)])
    if name == "e6":
        return VariableTable(
            [f"a{i}" for i in range(1, 13)],
            [f"x{i}" for i in range(1, 13)] + [f"z{i}" for i in range(1, 4)],
        )
    raise CatalogError(f"no ambient coordinate table for {name!r}")


@dataclass(frozen=True)
class EquationTemplate:
    """One defining quadric: lhs = rhs, tagged by index orbit and shift."""

    lhs: Polynomial
    rhs: Polynomial
    orbit: str
    shift: int

    def residual_poly(self) -> Polynomial:
        return self.lhs - self.rhs

    def text(self) -> str:
        return f"{self.lhs.text()} = {self.rhs.text()}"


def _am(table: VariableTable, i: int, m: int) -> Polynomial:
    return Polynomial.variable(table, f"a{(i - 1) % m + 1}")


def _xm(table: VariableTable, i: int, m: int) -> Polynomial:
    return Polynomial.variable(table, f"x{(i - 1) % m + 1}")


def _zm(table: VariableTable, i: int) -> Polynomial:
    return Polynomial.variable(table, f"z{(i - 1) % 3 + 1}")


def e4_equations() -> list[EquationTemplate]:
    """Five quadrics x_i x_{i+2} = a_{i+1} x_{i+1} + a_{i+3} a_{i+4}."""
    t = spinor_table("e4")
    out = []
    for s in range(5):
        a = lambda i: _am(t, i + s, 5)
        x = lambda i: _xm(t, i + s, 5)
        out.append(
            EquationTemplate(x(1) * x(3), a(2) * x(2) + a(4) * a(5), orbit="a", shift=s)
        )
    return out


def e5_equations() -> list[EquationTemplate]:
    """Eight quadrics of orbit (a) and two of orbit (b)."""
    t = spinor_table("e5")
    out = []
    for s in range(8):
        a = lambda i: _am(t, i + s, 8)
        x = lambda i: _xm(t, i + s, 8)
        out.append(
            EquationTemplate(
                x(1) * x(4), a(5) * x(2) + a(8) * x(3) + a(2) * a(3), orbit="a", shift=s
            )
        )
    for s in range(2):
        a = lambda i: _am(t, i + s, 8)
        x = lambda i: _xm(t, i + s, 8)
        out.append(
            EquationTemplate(
                x(2) * x(6) - a(2) * a(6),
                x(4) * x(8) - a(4) * a(8),
                orbit="b",
                shift=s,
            )
        )
    return out


def e6_equations() -> list[EquationTemplate]:
    """The 27 quadrics: 12 of orbit (a), 12 of orbit (b), 3 of orbit (c),
    generated from the printed representatives by the index shift (a and x
    indices step mod 12, z indices mod 3)."""
    t = spinor_table("e6")
    out = []
    for s in range(12):
        a = lambda i: _am(t, i + s, 12)
        x = lambda i: _xm(t, i + s, 12)
        z = lambda i: _zm(t, i + s)
        out.append(
            EquationTemplate(
                x(1) * x(6),
                a(6) * x(3) + a(1) * z(2) + a(8) * x(4) + a(3) * a(11),
                orbit="a",
                shift=s,
            )
        )
    for s in range(12):
        a = lambda i: _am(t, i + s, 12)
        x = lambda i: _xm(t, i + s, 12)
        z = lambda i: _zm(t, i + s)
        out.append(
            EquationTemplate(
                x(1) * x(5),
                x(3) * z(3) - a(3) * x(2) - a(10) * x(4) + a(1) * a(12),
                orbit="b",
                shift=s,
            )
        )
    for s in range(3):
        a = lambda i: _am(t, i + s, 12)
        x = lambda i: _xm(t, i + s, 12)
        z = lambda i: _zm(t, i + s)
        out.append(
            EquationTemplate(
                z(1) * z(2),
                x(3) * x(9) + x(6) * x(12) + a(2) * a(8) + a(5) * a(11),
                orbit="c",
                shift=s,
            )
        )
    return out


def equations_for(name: str) -> list[EquationTemplate]:
    if name == "e4":
        return e4_equations()
    if name == "e5":
        return e5_equations()
    if name == "e6":
        return e6_equations()
    raise CatalogError(f"no defining equations for {name!r}")


def rotation_label_action(name: str) -> LabelAction:
    """Index-shift action on the ambient coordinates."""
    t = spinor_table(name)
    m = {"e4": 5, "e5": 8, "e6": 12}[name]
    names = {}
    for i in range(1, m + 1):
        names[f"a{i}"] = f"a{i % m + 1}"
        names[f"x{i}"] = f"x{i % m + 1}"
    if name == "e6":
        for k in range(1, 4):
            names[f"z{k}"] = f"z{k % 3 + 1}"
    return LabelAction.from_names(t, names)


def verify_on_variety(
    expansions: Mapping[str, LaurentExpansion],
    equations: Sequence[EquationTemplate],
) -> list[tuple[EquationTemplate, LaurentExpansion]]:
    """Substitute the expansions into every equation; returns the residuals
    (one per equation; all zero exactly when the expansions satisfy the
    variety's equations).  Frozen names map to themselves."""
    out = []
    for eq in equations:
        residual = evaluate_names(eq.residual_poly(), expansions)
        out.append((eq, residual))
    return out


def evaluate_names(p: Polynomial, images: Mapping[str, LaurentExpansion]) -> LaurentExpansion:
    """Evaluate a polynomial over one table at named expansions over another.

    Every variable occurring in p must have an image; images share a common
    target table.
    """
    src = p.table
    if not images:
        raise CatalogError("no images given")
    target = next(iter(images.values())).table
    pows: dict[tuple[str, int], tuple[Polynomial, int]] = {}

    def power(name: str, e: int) -> tuple[Polynomial, int]:
        got = pows.get((name, e))
        if got is None:
            img = images.get(name)
            if img is None:
                raise CatalogError(f"no expansion supplied for {name!r}")
            got = (img.num**e, img.den * e)
            pows[(name, e)] = got
        return got

    parts: list[tuple[Polynomial, int, int]] = []
    for key, c in p.terms.items():
        num = Polynomial.constant(target, 1)
        den = 0
        for v, e in enumerate(src.unpack(key)):
            if e:
                pn, pd = power(src.names[v], e)
                num = num * pn
                den += pd
        parts.append((num, den, c))
    lcm = 0
    for _, den, _ in parts:
        lcm = target.mono_lcm(lcm, den) if lcm else den
    total: dict[int, int] = {}
    for num, den, c in parts:
        lift = lcm - den
        for k, cc in num.terms.items():
            kk = k + lift
            nc = total.get(kk, 0) + cc * c
            if nc:
                total[kk] = nc
            else:
                del total[kk]
    return LaurentExpansion.make(Polynomial(target, total), lcm)


# -- derived-variable formulas (in ambient coordinate names) ----------------


def e6_y_formula(i: int) -> Polynomial:
    """y_i = x_i z_i - a_i x_{i-1} - a_{i+7} x_{i+1} (z index mod 3)."""
    t = spinor_table("e6")
    a = lambda j: _am(t, j, 12)
    x = lambda j: _xm(t, j, 12)
    return x(i) * _zm(t, i) - a(i) * x(i - 1) - a(i + 7) * x(i + 1)


def e6_t_formula(i: int) -> Polynomial:
    """t_i = x_i x_{i+3} x_{i+6} x_{i+9} - a_{i+2} a_{i+5} a_{i+8} a_{i+11}."""
    t = spinor_table("e6")
    a = lambda j: _am(t, j, 12)
    x = lambda j: _xm(t, j, 12)
    return x(i) * x(i + 3) * x(i + 6) * x(i + 9) - a(i + 2) * a(i + 5) * a(i + 8) * a(i + 11)


def e6_u_formula(i: int) -> Polynomial:
    """u_i = x_i x_{i+4} x_{i+8} - a_{i+3} a_{i+4} x_i - a_{i+7} a_{i+8} x_{i+4}
    - a_{i+11} a_i x_{i+8} - a_i a_{i+4} a_{i+8} - a_{i+3} a_{i+7} a_{i+11}."""
    t = spinor_table("e6")
    a = lambda j: _am(t, j, 12)
    x = lambda j: _xm(t, j, 12)
    return (
        x(i) * x(i + 4) * x(i + 8)
        - a(i + 3) * a(i + 4) * x(i)
        - a(i + 7) * a(i + 8) * x(i + 4)
        - a(i + 11) * a(i) * x(i + 8)
        - a(i) * a(i + 4) * a(i + 8)
        - a(i + 3) * a(i + 7) * a(i + 11)
    )


def e5_q_formula(i: int) -> Polynomial:
    """q_i = x_i x_{i+4} - a_i a_{i+4}."""
    t = spinor_table("e5")
    return _xm(t, i, 8) * _xm(t, i + 4, 8) - _am(t, i, 8) * _am(t, i + 4, 8)


def derived_formulas(name: str) -> dict[str, Polynomial]:
    """Formulas of the non-coordinate cluster variables, keyed by name."""
    if name == "e6":
        out = {f"y{i}": e6_y_formula(i) for i in range(1, 13)}
        out.update({f"t{i}": e6_t_formula(i) for i in range(1, 4)})
        out.update({f"u{i}": e6_u_formula(i) for i in range(1, 3)})
        return out
    if name == "e5":
        return {f"q{i}": e5_q_formula(i) for i in range(1, 3)}
    return {}


# -- named expansions and classification ------------------------------------


@dataclass(frozen=True)
class Labeling:
    """Total labeling of a class's cluster variables.

    ``by_name`` maps names to sign-normalized expansions over the initial
    cluster; ``name_of`` is the exact inverse.
    """

    by_name: Mapping[str, LaurentExpansion]
    name_of: Mapping[LaurentExpansion, str]

    def family_sizes(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for name in self.by_name:
            out[name.rstrip("0123456789")] = out.get(name.rstrip("0123456789"), 0) + 1
        return dict(sorted(out.items()))

    def names_of_seed(self, seed: Seed) -> list[str]:
        return [self.name_of[e.expansion.sign_normalized()] for e in seed.entries]


def _rotation_seed_map(name: str, seed: Seed) -> SymmetryMap:
    """The rotation as an ambient-field automorphism.

    Images of the last cluster slots come from explicit mutations: for the
    rank-2/rank-3 seeds one mutation at the first slot realizes the index
    shift; fifth-slot images for e6 take the two-step mutation path (first
    slot, then the last)."""
    table = seed.table
    h = len(table.frozen_names)
    frozen_map = {f"a{i}": f"a{i % h + 1}" for i in range(1, h + 1)} if h else {}
    cluster = table.cluster_names
    images: dict[str, LaurentExpansion] = {}
    first = mutate(seed, 0)
    if name == "e6":
        for k in range(3):
            images[cluster[k]] = LaurentExpansion.for_variable(table, cluster[k + 1])
        images["x4"] = first.entries[0].expansion
        second = mutate(first, 4)
        images["y3"] = second.entries[4].expansion
        order = 12
    else:
        for k in range(len(cluster) - 1):
            images[cluster[k]] = LaurentExpansion.for_variable(table, cluster[k + 1])
        images[cluster[-1]] = first.entries[0].expansion
        order = {"a2-toy": 5, "e4": 5, "e5": 8}[name]
    return SymmetryMap(frozen_map, images, order_hint=order, name=f"{name}-rotation")


@lru_cache(maxsize=None)
def named_expansions(name: str) -> dict[str, LaurentExpansion]:
    """Expansions of every expected cluster variable of a built-in class in
    its initial cluster, keyed by variable name; all sign-normalized.

    Coordinates are derived from the defining equations (plus, for e6, the
    rotation automorphism); derived variables come from their formulas.
    Internal consistency (each rotation orbit closes into a cycle) is
    asserted.
    """
    from .symmetry import apply_to_expansion

    seed = builtin_seed(name)
    table = seed.table

    def var(n: str) -> LaurentExpansion:
        return LaurentExpansion.for_variable(table, n)

    def over(src: str, den_name: str) -> LaurentExpansion:
        return LaurentExpansion.make(
            parse_polynomial(src, table), table.monomial({den_name: 1})
        )

    if name == "a2-toy":
        named = {"x1": var("x1"), "x2": var("x2"), "x3": over("1 + x2", "x1")}
        one = LaurentExpansion.from_polynomial(Polynomial.constant(table, 1))
        named["x4"] = (one + named["x3"]) / named["x2"]
        named["x5"] = (one + named["x4"]) / named["x3"]
        if (one + named["x5"]) / named["x4"] != named["x1"]:
            raise CatalogError("a2-toy coordinate cycle failed to close")
    elif name == "e4":
        named = {
            "x1": var("x1"),
            "x2": var("x2"),
            "x3": over("a2*x2 + a4*a5", "x1"),
            "x5": over("a1*x1 + a3*a4", "x2"),
        }
        named["x4"] = LaurentExpansion.make(
            parse_polynomial("a1*a5*x1 + a2*a3*x2 + a3*a4*a5", table),
            table.monomial({"x1": 1, "x2": 1}),
        )
    elif name == "e5":
        named = {f"x{i}": var(f"x{i}") for i in range(1, 4)}
        equations = e5_equations()
        # Walk the orbit-(a) equations: x_{s+4} = rhs(s) / x_{s+1}.
        for s in range(5):
            rhs = evaluate_names(equations[s].rhs, {**_frozen_images(table), **named})
            named[f"x{s + 4}"] = rhs / named[f"x{s + 1}"]
        for qname, formula in derived_formulas("e5").items():
            named[qname] = evaluate_names(formula, {**_frozen_images(table), **named})
    elif name == "e6":
        named = {f"x{i}": var(f"x{i}") for i in range(1, 5)}
        named["y3"] = var("y3")
        named["z3"] = over("y3 + a3*x2 + a10*x4", "x3")
        rot = _rotation_seed_map("e6", seed)
        named["x5"] = rot.cluster_images["x4"]
        for i in range(5, 12):
            named[f"x{i + 1}"] = apply_to_expansion(rot, named[f"x{i}"]).sign_normalized()
        if apply_to_expansion(rot, named["x12"]).sign_normalized() != named["x1"]:
            raise CatalogError("e6 coordinate cycle failed to close")
        named["y4"] = rot.cluster_images["y3"]
        cur = 4
        for _ in range(10):
            nxt = cur % 12 + 1
            named[f"y{nxt}"] = apply_to_expansion(rot, named[f"y{cur}"]).sign_normalized()
            cur = nxt
        if apply_to_expansion(rot, named["y2"]).sign_normalized() != named["y3"]:
            raise CatalogError("e6 quadratic-variable cycle failed to close")
        named["z1"] = apply_to_expansion(rot, named["z3"]).sign_normalized()
        named["z2"] = apply_to_expansion(rot, named["z1"]).sign_normalized()
        if apply_to_expansion(rot, named["z2"]).sign_normalized() != named["z3"]:
            raise CatalogError("e6 z cycle failed to close")
        images = {**_frozen_images(table), **named}
        for dname, formula in derived_formulas("e6").items():
            if dname.startswith("y"):
                continue  # already derived through the rotation
            named[dname] = evaluate_names(formula, images)
    else:
        raise CatalogError(f"unknown built-in seed {name!r}")
    return {n: e.sign_normalized() for n, e in named.items()}


def _frozen_images(table: VariableTable) -> dict[str, LaurentExpansion]:
    return {n: LaurentExpansion.for_variable(table, n) for n in table.frozen_names}


def classify_variables(variables: Sequence[LaurentExpansion], name: str) -> Labeling:
    """Match every discovered expansion against the expected named ones.

    Raises with the offending expansions when the match is not a bijection.
    """
    named = named_expansions(name)
    name_of = {exp: n for n, exp in named.items()}
    unmatched = [v for v in variables if v.sign_normalized() not in name_of]
    if unmatched:
        raise CatalogError(
            f"{len(unmatched)} cluster variable(s) do not match any expected"
            f" variable of {name}: {[v.text() for v in unmatched[:3]]}"
        )
    found = {name_of[v.sign_normalized()] for v in variables}
    missing = sorted(set(named) - found)
    if missing:
        raise CatalogError(f"expected variables never discovered for {name}: {missing}")
    return Labeling(by_name=named, name_of=name_of)


# -- symmetries extended to whole classes ------------------------------------


@dataclass(frozen=True)
class VarietySymmetry:
    """A symmetry in all three guises: coordinate-label action, action on
    every named cluster variable, and ambient-field automorphism."""

    name: str
    label_action: LabelAction
    variable_map: Mapping[str, str]
    seed_map: SymmetryMap

    def frozen_name_map(self) -> dict[str, str]:
        return dict(self.seed_map.frozen_map)


def extend_label_action(
    name: str, action: LabelAction, labeling: Labeling
) -> dict[str, str]:
    """Action of an ambient label permutation on every named cluster
    variable: coordinates map by their labels; derived variables map by
    pushing their defining formula through the action and looking up the
    resulting expansion."""
    table = builtin_seed(name).table
    images = {**_frozen_images(table), **dict(labeling.by_name)}
    amb_names = action.name_map()
    out: dict[str, str] = {}
    for vname in labeling.by_name:
        if vname in amb_names:
            out[vname] = amb_names[vname]
        else:
            formula = derived_formulas(name)[vname]
            mapped = action.apply(formula)
            exp = evaluate_names(mapped, images).sign_normalized()
            target = labeling.name_of.get(exp)
            if target is None:
                raise CatalogError(f"image of {vname} is not a cluster variable")
            out[vname] = target
    return out


def symmetry_from_label_action(
    name: str, tag: str, action: LabelAction, labeling: Labeling
) -> VarietySymmetry:
    seed = builtin_seed(name)
    table = seed.table
    variable_map = extend_label_action(name, action, labeling)
    amb_names = action.name_map()
    frozen_map = {n: amb_names[n] for n in table.frozen_names}
    cluster_images = {
        cname: labeling.by_name[variable_map[cname]] for cname in table.cluster_names
    }
    seed_map = SymmetryMap(frozen_map, cluster_images, name=f"{name}-{tag}")
    return VarietySymmetry(f"{name}-{tag}", action, variable_map, seed_map)


def seed_image_by_names(
    sym: VarietySymmetry, labeling: Labeling, seed: Seed
) -> Seed:
    """Fast seed image: swap each entry's expansion for the image variable's
    expansion and relabel frozen names in the exchange polynomials."""
    from .symmetry import permute_variables

    table = seed.table
    perm = sym.seed_map.frozen_perm(table)
    relabel = any(v != w for v, w in enumerate(perm))
    entries = []
    for entry in seed.entries:
        vname = labeling.name_of[entry.expansion.sign_normalized()]
        image = labeling.by_name[sym.variable_map[vname]]
        f = permute_variables(entry.exchange, perm) if relabel else entry.exchange
        entries.append((image, f.sign_normalized()))
    from .seed import SeedEntry

    return Seed(table, [SeedEntry(e, f) for e, f in entries], name=seed.name)


def class_key_map(
    graph: ExchangeGraph, labeling: Labeling, sym: VarietySymmetry
) -> dict[bytes, bytes]:
    """Canonical-key bijection induced by a symmetry on a fully classified
    class (raises if the image of any seed is not in the class)."""
    from .seed import canonical_key

    out = {}
    for key, seed in graph.nodes.items():
        image = seed_image_by_names(sym, labeling, seed)
        ik = canonical_key(image)
        if ik not in graph.nodes:
            raise CatalogError("symmetry image escapes the mutation class")
        out[key] = ik
    return out


# -- orbit labels (e6) -------------------------------------------------------

# Per-orbit representative data: cluster variables, the new variable obtained
# by mutating at each cluster variable, and the orbit label of the target.
E6_ORBIT_TABLE: dict[str, tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]] = {
    "A": (("x1", "x2", "x3", "x4", "y2"), ("y4", "z2", "y12", "x12", "y3"), ("D", "B", "C", "A", "A")),
    "B": (("x1", "x2", "x4", "y3", "z3"), ("x5", "x7", "x11", "y12", "x3"), ("B", "E", "F", "F", "A")),
    "C": (("x1", "x2", "x4", "y12", "y2"), ("u2", "x10", "x12", "x3", "z3"), ("H", "G", "D", "A", "F")),
    "D": (("x1", "x2", "x3", "y1", "y3"), ("x5", "u1", "x11", "x4", "x12"), ("C", "I", "C", "A", "A")),
    "E": (("x1", "x4", "x7", "y3", "z3"), ("x5", "y9", "x2", "t1", "y5"), ("F", "K", "B", "J", "G")),
    "F": (("x1", "x2", "x4", "y12", "z3"), ("y6", "x10", "x11", "y3", "y2"), ("L", "E", "B", "B", "C")),
    "G": (("x1", "x4", "x7", "y3", "y5"), ("x5", "u1", "x3", "z2", "z3"), ("C", "N", "C", "E", "E")),
    "H": (("x1", "x3", "y3", "y5", "u1"), ("x5", "x7", "y11", "y1", "x4"), ("I", "N", "M", "I", "C")),
    "I": (("x1", "x3", "y1", "y3", "u1"), ("x5", "x11", "y5", "y11", "x2"), ("H", "H", "H", "H", "D")),
    "J": (("x1", "x4", "x7", "z2", "t1"), ("x10", "x10", "x10", "z3", "y5"), ("J", "J", "J", "J", "E")),
    # Row K's z2 entry is u1, forced by involutivity against row O (whose u1
    # slot mutates back to z2 in orbit K).
    "K": (("x1", "x7", "y5", "y11", "z2"), ("x9", "x3", "x10", "x4", "u1"), ("L", "L", "E", "E", "O")),
    "L": (("x1", "x3", "y5", "y11", "z2"), ("x9", "x7", "x12", "x4", "u1"), ("K", "K", "F", "F", "M")),
    "M": (("x1", "x3", "y5", "y11", "u1"), ("x9", "x7", "y1", "y3", "z2"), ("O", "O", "H", "H", "L")),
    "N": (("x1", "x7", "y3", "y5", "u1"), ("x5", "x3", "y11", "y9", "x4"), ("H", "H", "O", "O", "G")),
    "O": (("x1", "x7", "y5", "y11", "u1"), ("x9", "x3", "y9", "y3", "z2"), ("M", "M", "N", "N", "K")),
}

# Quotient-graph structure: adjacent orbit pairs and looped orbits.
E6_QUOTIENT_EDGES = {
    ("A", "B"), ("A", "C"), ("A", "D"), ("B", "E"), ("B", "F"), ("C", "D"),
    ("C", "F"), ("C", "G"), ("C", "H"), ("D", "I"), ("E", "F"), ("E", "G"),
    ("E", "J"), ("E", "K"), ("F", "L"), ("G", "N"), ("H", "I"), ("H", "M"),
    ("H", "N"), ("K", "L"), ("K", "O"), ("L", "M"), ("M", "O"), ("N", "O"),
}
E6_QUOTIENT_LOOPS = {"A", "B", "J"}


def find_seed_by_cluster(
    graph: ExchangeGraph, labeling: Labeling, cluster: Sequence[str]
) -> bytes:
    """Canonical key of the unique seed whose cluster is the given name set."""
    want = frozenset(cluster)
    found = []
    for key in graph.sorted_keys():
        names = frozenset(labeling.names_of_seed(graph.nodes[key]))
        if names == want:
            found.append(key)
    if len(found) != 1:
        raise CatalogError(
            f"cluster {sorted(want)} matched {len(found)} seeds (expected exactly 1)"
        )
    return found[0]
