"""Built-in data: seeds, equations, classification, rank bookkeeping."""

from __future__ import annotations

import pytest

from lpakit.catalog import (
    BUILTIN_NAMES,
    CatalogError,
    PROFILES,
    VarietyProfile,
    builtin_seed,
    classify_variables,
    e6_equations,
    equations_for,
    evaluate_names,
    named_expansions,
    rank_check,
    rotation_label_action,
    verify_on_variety,
    _frozen_images,
)
from lpakit.parser import parse_polynomial
from lpakit.seed import validate_seed
from lpakit.symmetry import apply_to_expansion, permutes_equation_set


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtin_seeds_validate(name):
    seed = builtin_seed(name)
    assert validate_seed(seed) == []


def test_builtin_shapes():
    expected = {"a2-toy": (0, 2), "e4": (5, 2), "e5": (8, 3), "e6": (12, 5)}
    for name, (frozen, rank) in expected.items():
        seed = builtin_seed(name)
        assert len(seed.table.frozen_names) == frozen
        assert seed.rank == rank


def test_unknown_builtin():
    with pytest.raises(CatalogError):
        builtin_seed("e7")


def test_e4_exchange_polynomials():
    seed = builtin_seed("e4")
    table = seed.table
    assert seed.entries[0].exchange == parse_polynomial("a2*x2 + a4*a5", table)
    assert seed.entries[1].exchange == parse_polynomial("a1*x1 + a3*a4", table)


def test_e6_exchange_polynomials_verbatim():
    seed = builtin_seed("e6")
    t = seed.table
    printed = [
        "y3 + a12*a1",
        "a2*x1*(y3 + a10*x4) + a9*x3*(y3 + a1*a12) + x1*x3*(a7*x4 + a4*a12)",
        "y3 + a3*x2 + a10*x4",
        "a11*(y3 + a3*x2) + x3*(a4*x1 + a6*x2 + a1*a9)",
        "x1*x4*(a5*x2 + a7*x3 + a2*a10) + a12*x3*(a4*x1 + a1*a9)"
        " + a12*x2*(a6*x3 + a8*x4 + a3*a11)",
    ]
    for entry, src in zip(seed.entries, printed):
        assert entry.exchange == parse_polynomial(src, t)


def test_e6_equation_counts_and_representatives():
    eqs = e6_equations()
    assert len(eqs) == 27
    by_orbit = {}
    for eq in eqs:
        by_orbit.setdefault(eq.orbit, []).append(eq)
    assert {k: len(v) for k, v in by_orbit.items()} == {"a": 12, "b": 12, "c": 3}
    # Printed representative of orbit (a) at shift 0.
    t = eqs[0].lhs.table
    rep = by_orbit["a"][0]
    assert rep.lhs == parse_polynomial("x1*x6", t)
    assert rep.rhs == parse_polynomial("a6*x3 + a1*z2 + a8*x4 + a3*a11", t)
    # The z-orbit has size three: shifting (c) by 3 reproduces shift 0.
    c0 = by_orbit["c"][0].residual_poly()
    shift = rotation_label_action("e6")
    shifted = c0
    for _ in range(3):
        shifted = shift.apply(shifted)
    assert shifted == c0


def test_equations_closed_under_rotation():
    for name in ("e4", "e5", "e6"):
        eqs = [eq.residual_poly() for eq in equations_for(name)]
        assert permutes_equation_set(eqs, rotation_label_action(name))


@pytest.mark.parametrize("name", ["e4", "e5", "e6"])
def test_all_residuals_vanish(name):
    seed = builtin_seed(name)
    images = {**_frozen_images(seed.table), **named_expansions(name)}
    residuals = verify_on_variety(images, equations_for(name))
    assert all(r.is_zero for _, r in residuals)


def test_e4_printed_expansions():
    named = named_expansions("e4")
    assert named["x4"].text() == "(a1*a5*x1 + a2*a3*x2 + a3*a4*a5)/(x1*x2)"
    assert named["x3"].text() == "(a2*x2 + a4*a5)/x1"
    assert named["x5"].text() == "(a1*x1 + a3*a4)/x2"


def test_perturbed_equation_has_residual():
    # Negative control: flipping one coefficient sign must break a residual.
    seed = builtin_seed("e4")
    images = {**_frozen_images(seed.table), **named_expansions("e4")}
    eqs = equations_for("e4")
    t = eqs[0].lhs.table
    wrong = parse_polynomial("a2*x2 - a4*a5", t)
    residual = evaluate_names(eqs[0].lhs - wrong, images)
    assert not residual.is_zero


def test_classification_family_sizes(ctx_e5, ctx_e6):
    assert ctx_e5.labeling.family_sizes() == {"q": 2, "x": 8}
    assert ctx_e6.labeling.family_sizes() == {"t": 3, "u": 2, "x": 12, "y": 12, "z": 3}


def test_classification_rejects_unknown(ctx_e5):
    from lpakit.poly import LaurentExpansion, Polynomial

    fake = LaurentExpansion.from_polynomial(
        Polynomial.constant(ctx_e5.seed.table, 7)
    )
    with pytest.raises(CatalogError, match="do not match"):
        classify_variables(list(ctx_e5.variables) + [fake], "e5")


def test_e5_q_identities(ctx_e5):
    by = ctx_e5.labeling.by_name
    frozen = _frozen_images(ctx_e5.seed.table)
    q1_alt = by["x3"] * by["x7"] - frozen["a3"] * frozen["a7"]
    assert q1_alt == by["q1"]
    # q1 is the middle exchange polynomial divided by its cluster variable.
    f2 = ctx_e5.seed.entries[1].exchange
    from lpakit.poly import LaurentExpansion

    q1_def = LaurentExpansion.make(f2, ctx_e5.seed.table.monomial({"x2": 1}))
    assert q1_def.sign_normalized() == by["q1"]


def test_u1_invariant_under_double_shift(ctx_e6):
    rot = ctx_e6.rotation.seed_map
    u1 = ctx_e6.labeling.by_name["u1"]
    image = apply_to_expansion(rot, apply_to_expansion(rot, u1)).sign_normalized()
    assert image == u1
    assert ctx_e6.rotation.variable_map["u1"] == "u2"
    assert ctx_e6.rotation.variable_map["u2"] == "u1"


def test_rank_checks():
    assert all(rank_check(p) for p in PROFILES.values())
    broken = VarietyProfile("x", dim=16, coxeter=13, gammas=(0, 0, 0), seeds=0, variables=0, rank=5)
    assert not rank_check(broken)


def test_profile_values():
    assert PROFILES["e4"].rank == 2 and PROFILES["e4"].dim == 6 and PROFILES["e4"].coxeter == 5
    assert PROFILES["e5"].rank == 3 and PROFILES["e5"].dim == 10 and PROFILES["e5"].coxeter == 8
    assert PROFILES["e6"].rank == 5 and PROFILES["e6"].dim == 16 and PROFILES["e6"].coxeter == 12
    assert PROFILES["e6"].gammas == (27, 27, 72)
