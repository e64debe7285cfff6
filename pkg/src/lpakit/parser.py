"""Expression and seed-file parsing.

Grammar for polynomial expressions (whitespace insensitive, no implicit
multiplication, nonnegative integer exponents only):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ['^' uint]
    base   := uint | ident | '(' expr ')'
    ident  := letter (letter | digit | '_')*

Seed files are UTF-8 JSON objects with keys ``name``, ``frozen``, ``cluster``
and ``exchange`` (one expression per cluster variable); duplicate keys are
rejected.  Parsing a seed file also validates the seed conditions.
"""

from __future__ import annotations

import json
from typing import Iterator

from .poly import LaurentExpansion, Polynomial, VariableTable
from .seed import Seed, initial_seed, validate_seed


class ParseError(ValueError):
    """Syntax or name error; ``position`` is the 1-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SeedFileError(ValueError):
    """Seed file violates the schema or the seed conditions."""


_TOKEN_KINDS = {"+", "-", "*", "^", "(", ")"}


def _tokenize(src: str) -> Iterator[tuple[str, str, int]]:
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        pos = i + 1
        if ch in _TOKEN_KINDS:
            yield ch, ch, pos
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and (src[j].isalpha() or src[j] == "_" or src[j] == "."):
                raise ParseError(f"malformed number {src[i:j + 1]!r}", pos)
            yield "uint", src[i:j], pos
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            yield "ident", src[i:j], pos
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    yield "end", "", n + 1


class _Parser:
    def __init__(self, src: str, table: VariableTable):
        self.tokens = list(_tokenize(src))
        self.pos = 0
        self.table = table

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        p = self.term()
        if negate:
            p = -p
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] == "-" or tok[0] != "uint":
                raise ParseError("exponent must be a nonnegative integer", tok[2])
            p = p ** int(tok[1])
        return p

    def base(self) -> Polynomial:
        kind, text, pos = self.advance()
        if kind == "uint":
            return Polynomial.constant(self.table, int(text))
        if kind == "ident":
            if text not in self.table._index:
                raise ParseError(f"unknown identifier {text!r}", pos)
            return Polynomial.variable(self.table, text)
        if kind == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"expected a value, found {text or 'end of input'!r}", pos)


def parse_polynomial(src: str, table: VariableTable) -> Polynomial:
    """Parse an expression to an exact polynomial over the given table."""
    return _Parser(src, table).parse()


def serialize_polynomial(p: Polynomial) -> str:
    """Canonical text; ``parse_polynomial`` round-trips it exactly."""
    return p.text()


def parse_expansion(src: str, table: VariableTable) -> LaurentExpansion:
    """Parse ``num``, ``num/mono`` or ``(num)/(mono)`` into an expansion.

    The denominator must parse to a single monomial in cluster variables.
    """
    depth = 0
    split = -1
    for i, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split != -1:
                raise ParseError("more than one '/' in expansion", i + 1)
            split = i
    if split == -1:
        return LaurentExpansion.from_polynomial(parse_polynomial(src, table))
    num = parse_polynomial(src[:split], table)
    den = parse_polynomial(src[split + 1 :], table)
    if not den.is_monomial or den.leading_coeff() != 1:
        raise ParseError("expansion denominator must be a monomial", split + 2)
    key = den.leading_key()
    if not table.mono_is_cluster_only(key):
        raise ParseError("expansion denominator must use cluster variables only", split + 2)
    return LaurentExpansion.make(num, key)


def _reject_duplicate_keys(pairs: list[tuple[str, object]]) -> dict:
    out: dict = {}
    for key, value in pairs:
        if key in out:
            raise SeedFileError(f"duplicate key {key!r} in seed file")
        out[key] = value
    return out


def parse_seed_file(src: str) -> Seed:
    """Parse and validate a seed definition; raises SeedFileError on any
    schema violation or seed-condition failure (with the offending slot)."""
    try:
        data = json.loads(src, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise SeedFileError(f"seed file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SeedFileError("seed file must be a JSON object")
    required = {"name", "frozen", "cluster", "exchange"}
    missing = required - data.keys()
    if missing:
        raise SeedFileError(f"seed file missing keys: {sorted(missing)}")
    extra = data.keys() - required
    if extra:
        raise SeedFileError(f"seed file has unknown keys: {sorted(extra)}")
    name = data["name"]
    frozen = data["frozen"]
    cluster = data["cluster"]
    exchange = data["exchange"]
    if not isinstance(name, str):
        raise SeedFileError("'name' must be a string")
    for field, value in (("frozen", frozen), ("cluster", cluster)):
        if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
            raise SeedFileError(f"'{field}' must be a list of identifiers")
    if not isinstance(exchange, dict):
        raise SeedFileError("'exchange' must be an object")
    if not cluster:
        raise SeedFileError("seed must declare at least one cluster variable")
    if set(exchange) != set(cluster):
        raise SeedFileError(
            "'exchange' must have exactly one entry per cluster variable;"
            f" got {sorted(exchange)} for cluster {sorted(cluster)}"
        )
    table = VariableTable(frozen, cluster)
    exchanges = []
    for cname in cluster:
        expr = exchange[cname]
        if not isinstance(expr, str):
            raise SeedFileError(f"exchange entry for {cname!r} must be a string")
        try:
            exchanges.append(parse_polynomial(expr, table))
        except ParseError as exc:
            raise SeedFileError(f"exchange entry for {cname!r}: {exc}") from exc
    seed = initial_seed(table, exchanges, name=name)
    violations = validate_seed(seed)
    if violations:
        raise SeedFileError("invalid seed: " + "; ".join(violations))
    return seed


def parse_symmetry_file(src: str, table: VariableTable):
    """Parse a symmetry definition: a frozen-name permutation plus an image
    expression (polynomial or polynomial/monomial) for every initial cluster
    variable."""
    from .symmetry import SymmetryMap

    try:
        data = json.loads(src, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise SeedFileError(f"symmetry file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SeedFileError("symmetry file must be a JSON object")
    frozen_map = data.get("frozen_map", {})
    images_src = data.get("cluster_images")
    if not isinstance(frozen_map, dict) or not isinstance(images_src, dict):
        raise SeedFileError("symmetry file needs 'frozen_map' and 'cluster_images' objects")
    if set(images_src) != set(table.cluster_names):
        raise SeedFileError(
            "cluster_images must cover exactly the cluster variables"
            f" {sorted(table.cluster_names)}"
        )
    images = {}
    for cname, expr in images_src.items():
        if not isinstance(expr, str):
            raise SeedFileError(f"image for {cname!r} must be a string")
        images[cname] = parse_expansion(expr, table)
    name = data.get("name", "")
    return SymmetryMap(frozen_map, images, name=name if isinstance(name, str) else "")


def serialize_seed_file(seed: Seed) -> str:
    """Seed-file JSON for an initial seed (expansions must be plain names)."""
    table = seed.table
    exchange = {}
    for cname, entry in zip(table.cluster_names, seed.entries):
        exchange[cname] = entry.exchange.text()
    doc = {
        "name": seed.name,
        "frozen": list(table.frozen_names),
        "cluster": list(table.cluster_names),
        "exchange": exchange,
    }
    return json.dumps(doc, indent=2) + "\n"
