from __future__ import annotations

import random

import pytest

from lpakit.context import ClassContext, get_context
from lpakit.poly import Polynomial, VariableTable


@pytest.fixture(scope="session")
def ctx_a2() -> ClassContext:
    return get_context("a2-toy")


@pytest.fixture(scope="session")
def ctx_e4() -> ClassContext:
    return get_context("e4")


@pytest.fixture(scope="session")
def ctx_e5() -> ClassContext:
    return get_context("e5")


@pytest.fixture(scope="session")
def ctx_e6() -> ClassContext:
    return get_context("e6")


@pytest.fixture()
def small_table() -> VariableTable:
    return VariableTable(["a1", "a2", "a3"], ["x1", "x2", "x3"])


def random_polynomial(
    rng: random.Random,
    table: VariableTable,
    max_terms: int = 4,
    max_exp: int = 3,
    max_coeff: int = 9,
    allow_zero: bool = False,
) -> Polynomial:
    terms = []
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        mono = {
            name: rng.randint(0, max_exp)
            for name in table.names
            if rng.random() < 0.5
        }
        coeff = rng.randint(-max_coeff, max_coeff)
        if coeff:
            terms.append((table.monomial(mono), coeff))
    return Polynomial.from_terms(table, terms)
