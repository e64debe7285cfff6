"""Exact engine for Laurent phenomenon algebra seeds.

Submodules:

- ``poly``      exact sparse integer polynomials and Laurent expansions
- ``parser``    expression grammar and seed-file parsing
- ``seed``      seeds, mutation, equivalence, canonical keys
- ``explore``   mutation-class enumeration, exchange graphs, face census
- ``symmetry``  group actions on seeds, orbit partitions, quotient graphs
- ``catalog``   built-in seeds, defining equations, variable classification
- ``cli``       command-line interface (also exposed as the ``lpakit`` script)
- ``server``    JSON-over-HTTP session API for the interactive explorer
"""

from .poly import LaurentExpansion, Polynomial, VariableTable
from .seed import Seed, canonical_key, equivalent, mutate, validate_seed

__all__ = [
    "LaurentExpansion",
    "Polynomial",
    "VariableTable",
    "Seed",
    "canonical_key",
    "equivalent",
    "mutate",
    "validate_seed",
]

__version__ = "0.1.0"
