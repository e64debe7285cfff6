"""Exact sparse multivariate polynomial arithmetic over the integers.

A polynomial lives over a fixed :class:`VariableTable` that declares two kinds
of variables: *frozen* variables (coefficient-ring generators, never allowed
in denominators) and *cluster* variables.  Terms are stored sparsely as a dict
mapping a packed monomial key to an arbitrary-precision integer coefficient;
the zero polynomial is the empty dict.

Monomial keys pack every exponent into one Python int, 16 bits per field,
laid out most-significant-first as

    [cluster degree][cluster exponents...][frozen degree][frozen exponents...]

so that plain integer comparison of two keys *is* the graded-lexicographic
term order used everywhere (cluster degree, then cluster exponents in
declared order, then frozen degree, then frozen exponents); integer addition
of keys multiplies monomials, and a single mask test decides monomial
divisibility.  Exponents must stay below 2**15; the spare top bit of each
field catches borrows during division.

:class:`LaurentExpansion` represents an element of the ambient field that is
a polynomial numerator over a monomial denominator in the cluster variables
only, kept reduced (no variable of the denominator divides the numerator).
"""

from __future__ import annotations

import heapq
import math
from typing import Iterable, Iterator, Mapping, Sequence

_WIDTH = 16
_FIELD_MASK = (1 << _WIDTH) - 1
_GUARD = 1 << (_WIDTH - 1)
MAX_EXPONENT = _GUARD - 1


class PolynomialError(ValueError):
    """Contract violation in a polynomial operation."""


class StructuralError(ValueError):
    """Input data violates a structural requirement (e.g. a frozen variable
    would end up in a denominator)."""


class VariableTable:
    """Immutable registry of frozen and cluster variable names.

    Fixes the total term order used for canonical serialization: cluster
    degree first, then cluster exponents in declared order, then frozen
    degree and frozen exponents.  Within a printed term, factors appear
    frozen-first in declared order.
    """

    __slots__ = (
        "frozen_names",
        "cluster_names",
        "names",
        "_index",
        "_shift",
        "_cdeg_shift",
        "_fdeg_shift",
        "_guard_mask",
        "_frozen_mask",
        "_cluster_lo",
    )

    def __init__(self, frozen_names: Iterable[str], cluster_names: Iterable[str]):
        frozen = tuple(frozen_names)
        cluster = tuple(cluster_names)
        names = frozen + cluster
        if len(set(names)) != len(names):
            raise PolynomialError("variable names must be unique")
        for name in names:
            if not name or not name[0].isalpha() or not all(
                ch.isalnum() or ch == "_" for ch in name
            ):
                raise PolynomialError(f"invalid variable name {name!r}")
        self.frozen_names = frozen
        self.cluster_names = cluster
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}
        self._cluster_lo = len(frozen)

        # Field layout, most significant first:
        #   [cluster degree][cluster vars][frozen degree][frozen vars]
        h, n = len(frozen), len(cluster)
        nfields = 2 + h + n
        shift = [0] * len(names)
        for v in range(len(names)):
            if v >= self._cluster_lo:
                field = 1 + (v - self._cluster_lo)
            else:
                field = 2 + n + v
            shift[v] = (nfields - 1 - field) * _WIDTH
        self._shift = tuple(shift)
        self._cdeg_shift = (nfields - 1) * _WIDTH
        self._fdeg_shift = h * _WIDTH
        guard = (_GUARD << self._cdeg_shift) | (_GUARD << self._fdeg_shift)
        for s in shift:
            guard |= _GUARD << s
        self._guard_mask = guard
        frozen_mask = _FIELD_MASK << self._fdeg_shift
        for v in range(self._cluster_lo):
            frozen_mask |= _FIELD_MASK << shift[v]
        self._frozen_mask = frozen_mask

    @property
    def rank(self) -> int:
        return len(self.cluster_names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableTable) and self.names == other.names and (
            self.frozen_names == other.frozen_names
        )

    def __hash__(self) -> int:
        return hash((self.frozen_names, self.cluster_names))

    def __repr__(self) -> str:
        return f"VariableTable(frozen={self.frozen_names!r}, cluster={self.cluster_names!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolynomialError(f"unknown variable {name!r}") from None

    def is_cluster(self, v: int) -> bool:
        return v >= self._cluster_lo

    def cluster_index(self, slot: int) -> int:
        """Variable index of the slot-th cluster variable."""
        return self._cluster_lo + slot

    # -- packed monomial helpers ------------------------------------------

    def _pack(self, exps: Iterable[tuple[int, int]]) -> int:
        key = 0
        cdeg = fdeg = 0
        for v, e in exps:
            if e == 0:
                continue
            if e < 0 or e > MAX_EXPONENT:
                raise PolynomialError(f"exponent {e} out of range")
            key += e << self._shift[v]
            if v >= self._cluster_lo:
                cdeg += e
            else:
                fdeg += e
        return key + (cdeg << self._cdeg_shift) + (fdeg << self._fdeg_shift)

    def monomial(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]]) -> int:
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        return self._pack((self.index(name), e) for name, e in items)

    def monomial_from_vector(self, exps: Sequence[int]) -> int:
        return self._pack(enumerate(exps))

    def slot_key(self, slot: int) -> int:
        return (1 << self._shift[self._cluster_lo + slot]) + (1 << self._cdeg_shift)

    def exponent(self, key: int, v: int) -> int:
        return (key >> self._shift[v]) & _FIELD_MASK

    def unpack(self, key: int) -> tuple[int, ...]:
        """Exponent vector in storage order (frozen first, then cluster)."""
        return tuple((key >> s) & _FIELD_MASK for s in self._shift)

    def degree(self, key: int) -> int:
        return (key >> self._cdeg_shift) + ((key >> self._fdeg_shift) & _FIELD_MASK)

    def cluster_degree(self, key: int) -> int:
        return key >> self._cdeg_shift

    def mono_divides(self, a: int, b: int) -> bool:
        """True when monomial ``a`` divides ``b`` (fieldwise a <= b)."""
        return a <= b and (b - a) & self._guard_mask == 0

    def mono_gcd(self, a: int, b: int) -> int:
        if a == b:
            return a
        return self._pack(
            (v, min((a >> s) & _FIELD_MASK, (b >> s) & _FIELD_MASK))
            for v, s in enumerate(self._shift)
        )

    def mono_lcm(self, a: int, b: int) -> int:
        if a == b:
            return a
        return self._pack(
            (v, max((a >> s) & _FIELD_MASK, (b >> s) & _FIELD_MASK))
            for v, s in enumerate(self._shift)
        )

    def mono_is_cluster_only(self, key: int) -> bool:
        return key & self._frozen_mask == 0

    def mono_text(self, key: int) -> str:
        if key == 0:
            return "1"
        parts = []
        for v, name in enumerate(self.names):
            e = (key >> self._shift[v]) & _FIELD_MASK
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def permute_cluster(self, key: int, perm: Sequence[int]) -> int:
        """Relabel cluster exponent fields: slot s moves to slot perm[s]."""
        lo = self._cluster_lo
        out = key
        for s, t in enumerate(perm):
            if s == t:
                continue
            e = (key >> self._shift[lo + s]) & _FIELD_MASK
            out += (e << self._shift[lo + t]) - (e << self._shift[lo + s])
        return out


class Polynomial:
    """Sparse polynomial with integer coefficients over a VariableTable.

    Instances are immutable in practice: no method mutates ``terms`` after
    construction, so values are safe to share across threads.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table: VariableTable, terms: dict[int, int]):
        self.table = table
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, table: VariableTable) -> Polynomial:
        return cls(table, {})

    @classmethod
    def constant(cls, table: VariableTable, c: int) -> Polynomial:
        return cls(table, {0: c} if c else {})

    @classmethod
    def variable(cls, table: VariableTable, name: str) -> Polynomial:
        return cls(table, {table.monomial({name: 1}): 1})

    @classmethod
    def from_terms(cls, table: VariableTable, items: Iterable[tuple[int, int]]) -> Polynomial:
        terms: dict[int, int] = {}
        for key, c in items:
            nc = terms.get(key, 0) + c
            if nc:
                terms[key] = nc
            else:
                terms.pop(key, None)
        return cls(table, terms)

    @classmethod
    def monomial_term(cls, table: VariableTable, key: int, c: int = 1) -> Polynomial:
        return cls(table, {key: c} if c else {})

    # -- basic predicates ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    @property
    def is_unit(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) in (1, -1)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def leading_key(self) -> int:
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading term")
        return max(self.terms)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_key()]

    def sign(self) -> int:
        return 1 if self.leading_coeff() > 0 else -1

    def sign_normalized(self) -> Polynomial:
        if not self.terms or self.leading_coeff() > 0:
            return self
        return Polynomial(self.table, {k: -c for k, c in self.terms.items()})

    def total_degree(self) -> int:
        return max((self.table.degree(k) for k in self.terms), default=0)

    def degree_in(self, v: int) -> int:
        shift = self.table._shift[v]
        d = 0
        for key in self.terms:
            e = (key >> shift) & _FIELD_MASK
            if e > d:
                d = e
        return d

    def depends_on(self, v: int) -> bool:
        shift = self.table._shift[v]
        return any((key >> shift) & _FIELD_MASK for key in self.terms)

    def max_coeff_abs(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    # -- ring operations ----------------------------------------------------

    def _check_table(self, other: Polynomial) -> None:
        if self.table is not other.table and self.table != other.table:
            raise PolynomialError("operands use different variable tables")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_table(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            nc = out.get(key, 0) + c
            if nc:
                out[key] = nc
            else:
                del out[key]
        return Polynomial(self.table, out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check_table(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            nc = out.get(key, 0) - c
            if nc:
                out[key] = nc
            else:
                del out[key]
        return Polynomial(self.table, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.table, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check_table(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.table, {})
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            ((ka, ca),) = a.items()
            return Polynomial(self.table, {kb + ka: cb * ca for kb, cb in b.items()})
        out: dict[int, int] = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                c = get(k, 0) + ca * cb
                if c:
                    out[k] = c
                else:
                    del out[k]
        return Polynomial(self.table, out)

    def term_scaled(self, key: int, c: int) -> Polynomial:
        """Multiply by the single term c * monomial(key)."""
        if not c:
            return Polynomial(self.table, {})
        return Polynomial(self.table, {k + key: cc * c for k, cc in self.terms.items()})

    def int_scaled(self, c: int) -> Polynomial:
        if not c:
            return Polynomial(self.table, {})
        return Polynomial(self.table, {k: cc * c for k, cc in self.terms.items()})

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise PolynomialError("negative polynomial power")
        result = Polynomial.constant(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- division -----------------------------------------------------------

    def exact_divide(self, d: Polynomial) -> Polynomial | None:
        """Return q with self == q * d over the integers, else None.

        Sparse long division by the leading term; the live remainder keys sit
        in a max-heap with lazy deletion (every key created during division is
        strictly below the leading key being eliminated, so no key is ever
        processed twice).
        """
        self._check_table(d)
        if d.is_zero:
            raise PolynomialError("division by the zero polynomial")
        if not self.terms:
            return Polynomial(self.table, {})
        dk = max(d.terms)
        dc = d.terms[dk]
        if dk == 0:
            out = {}
            for k, c in self.terms.items():
                q, rem = divmod(c, dc)
                if rem:
                    return None
                out[k] = q
            return Polynomial(self.table, out)
        divides = self.table.mono_divides
        rest = [(k, c) for k, c in d.terms.items() if k != dk]
        r = dict(self.terms)
        heap = [-k for k in r]
        heapq.heapify(heap)
        q: dict[int, int] = {}
        while r:
            while heap:
                rk = -heap[0]
                if rk in r:
                    break
                heapq.heappop(heap)
            if not heap:
                break
            if not divides(dk, rk):
                return None
            qc, rem = divmod(r[rk], dc)
            if rem:
                return None
            qk = rk - dk
            q[qk] = qc
            del r[rk]
            heapq.heappop(heap)
            for k, c in rest:
                kk = k + qk
                if kk in r:
                    nc = r[kk] - c * qc
                    if nc:
                        r[kk] = nc
                    else:
                        del r[kk]
                else:
                    r[kk] = -c * qc
                    heapq.heappush(heap, -kk)
        return Polynomial(self.table, q)

    def divisibility_order(self, q: Polynomial) -> int:
        """Largest m with q**m dividing self exactly."""
        if self.is_zero:
            raise PolynomialError("divisibility order of the zero polynomial")
        if q.is_zero or q.is_unit:
            raise PolynomialError("divisibility order by a zero or unit polynomial")
        m = 0
        cur = self
        while True:
            nxt = cur.exact_divide(q)
            if nxt is None:
                return m
            cur = nxt
            m += 1

    # -- structure ----------------------------------------------------------

    def strip_monomial(self) -> tuple[int, Polynomial]:
        """Split self as m * q where m is the largest common monomial factor.

        The quotient keeps the original sign; sign-normalize separately when
        a positive leading coefficient is required.
        """
        if not self.terms:
            raise PolynomialError("cannot strip the zero polynomial")
        if 0 in self.terms:
            return 0, self
        table = self.table
        keys = self.terms.keys()
        first = next(iter(keys))
        pairs = []
        # The common factor divides the first key, so only its support matters.
        for v, s in enumerate(table._shift):
            if not (first >> s) & _FIELD_MASK:
                continue
            e = min((k >> s) & _FIELD_MASK for k in keys)
            if e:
                pairs.append((v, e))
        if not pairs:
            return 0, self
        m = table._pack(pairs)
        return m, Polynomial(table, {k - m: c for k, c in self.terms.items()})

    def specialize_zero(self, v: int) -> Polynomial:
        """Set variable v to zero: drop all terms with positive v-exponent."""
        shift = self.table._shift[v]
        return Polynomial(
            self.table,
            {k: c for k, c in self.terms.items() if not (k >> shift) & _FIELD_MASK},
        )

    def coefficients_in(self, v: int) -> dict[int, Polynomial]:
        """View self as univariate in v: exponent -> coefficient polynomial."""
        table = self.table
        shift = table._shift[v]
        deg_shift = table._cdeg_shift if table.is_cluster(v) else table._fdeg_shift
        out: dict[int, dict[int, int]] = {}
        for key, c in self.terms.items():
            e = (key >> shift) & _FIELD_MASK
            out.setdefault(e, {})[key - (e << shift) - (e << deg_shift)] = c
        return {e: Polynomial(table, terms) for e, terms in out.items()}

    def substitute_rational(self, v: int, num: Polynomial, den: int) -> LaurentExpansion:
        """Substitute variable v by num/den (den a cluster monomial key) and
        clear denominators by the v-degree, returning a reduced expansion."""
        if not self.table.mono_is_cluster_only(den):
            raise StructuralError("substitution denominator contains a frozen variable")
        num._check_table(self)
        by_deg = self.coefficients_in(v)
        d = max(by_deg) if by_deg else 0
        if d == 0:
            return LaurentExpansion.from_polynomial(self)
        table = self.table
        num_pows: dict[int, Polynomial] = {0: Polynomial.constant(table, 1), 1: num}

        def npow(e: int) -> Polynomial:
            p = num_pows.get(e)
            if p is None:
                p = npow(e - 1) * num
                num_pows[e] = p
            return p

        acc = Polynomial.zero(table)
        for e, coeff in by_deg.items():
            # term c*v^e  ->  c * num^e * den^(d-e)   over den^d
            part = coeff * npow(e)
            if e != d:
                part = part.term_scaled(den * (d - e), 1)
            acc = acc + part
        return LaurentExpansion.make(acc, den * d)

    # -- text ----------------------------------------------------------------

    def text(self) -> str:
        """Canonical text: descending graded-lex terms, explicit '*' and '^'."""
        if not self.terms:
            return "0"
        table = self.table
        parts: list[str] = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            mono = table.mono_text(key) if key else ""
            mag = abs(c)
            if not mono or mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Polynomial({self.text()})"


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact multivariate GCD over the integers, sign-normalized.

    Monomial content and integer content split off first; the polynomial part
    uses a primitive pseudo-remainder sequence.  Correctness is enforced by
    the divide-back property, not by the algorithm choice.
    """
    p._check_table(q)
    if p.is_zero and q.is_zero:
        raise PolynomialError("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.sign_normalized()
    if q.is_zero:
        return p.sign_normalized()
    table = p.table
    mp, pp = p.strip_monomial()
    mq, qq = q.strip_monomial()
    mono = table.mono_gcd(mp, mq)
    ic = math.gcd(_int_content(pp), _int_content(qq))
    a = _int_divided(pp).sign_normalized()
    b = _int_divided(qq).sign_normalized()
    g = _gcd_primitive(a, b)
    return g.term_scaled(mono, ic).sign_normalized()


def _int_content(p: Polynomial) -> int:
    c = 0
    for v in p.terms.values():
        c = math.gcd(c, v)
        if c == 1:
            return 1
    return c


def _int_divided(p: Polynomial) -> Polynomial:
    c = _int_content(p)
    if c <= 1:
        return p
    return Polynomial(p.table, {k: cc // c for k, cc in p.terms.items()})


def _common_variables(a: Polynomial, b: Polynomial) -> list[int]:
    return [
        v
        for v in range(len(a.table))
        if a.depends_on(v) and b.depends_on(v)
    ]


def _gcd_primitive(a: Polynomial, b: Polynomial) -> Polynomial:
    """GCD of monomial-free, integer-content-free, sign-normalized inputs.

    Contents with respect to the main variable split off first; the core is
    the subresultant pseudo-remainder sequence, whose tracked division
    factors keep the intermediate coefficients bounded without per-step
    content computations.
    """
    table = a.table
    one = Polynomial.constant(table, 1)
    if a.is_constant or b.is_constant:
        return one
    if a.terms == b.terms:
        return a
    common = _common_variables(a, b)
    if not common:
        return one
    v = min(common, key=lambda u: a.degree_in(u) + b.degree_in(u))

    ca, pa = _content_wrt(a, v)
    cb, pb = _content_wrt(b, v)
    cont = gcd(ca, cb)

    f, g = pa, pb
    if f.degree_in(v) < g.degree_in(v):
        f, g = g, f
    gg = one
    hh = one
    while True:
        delta = f.degree_in(v) - g.degree_in(v)
        r = _pseudo_rem(f, g, v, delta)
        if r.is_zero:
            break
        if r.degree_in(v) == 0:
            g = one
            break
        denom = gg * hh**delta
        divided = r.exact_divide(denom)
        assert divided is not None, "subresultant division must be exact"
        f, g = g, divided
        gg = f.coefficients_in(v)[f.degree_in(v)]
        if delta == 1:
            hh = gg
        elif delta > 1:
            scaled = (gg**delta).exact_divide(hh ** (delta - 1))
            assert scaled is not None, "subresultant factor must divide exactly"
            hh = scaled
    if g.is_constant:
        return cont.sign_normalized()
    _, g = _content_wrt(g, v)
    return (cont * _int_divided(g)).sign_normalized()


def _content_wrt(p: Polynomial, v: int) -> tuple[Polynomial, Polynomial]:
    """Content and primitive part of p viewed as univariate in v."""
    coeffs = list(p.coefficients_in(v).values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_unit:
            break
        cont = gcd(cont, c)
    cont = cont.sign_normalized()
    if cont.is_unit:
        return Polynomial.constant(p.table, 1), p
    prim = p.exact_divide(cont)
    assert prim is not None
    return cont, prim


def _pseudo_rem(f: Polynomial, g: Polynomial, v: int, delta: int) -> Polynomial:
    """Pseudo-remainder lc(g)^(delta+1) * f mod g with respect to v."""
    table = f.table
    n = g.degree_in(v)
    lc_g = g.coefficients_in(v)[n]
    shift = table._shift[v]
    deg_shift = table._cdeg_shift if table.is_cluster(v) else table._fdeg_shift
    r = f
    steps = 0
    while not r.is_zero:
        m = r.degree_in(v)
        if m < n:
            break
        lc_r = r.coefficients_in(v)[m]
        vpow = ((m - n) << shift) + ((m - n) << deg_shift)
        r = lc_g * r - (lc_r * g).term_scaled(vpow, 1)
        steps += 1
    # Scale to the exact textbook power so subresultant divisions stay exact.
    if steps < delta + 1 and not r.is_zero:
        r = r * lc_g ** (delta + 1 - steps)
    return r


class LaurentExpansion:
    """Polynomial numerator over a cluster-variable monomial denominator.

    Always reduced: no variable occurring in the denominator divides the
    numerator.  Field arithmetic keeps exactness; division raises
    StructuralError when the quotient would leave this form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: int):
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num: Polynomial, den: int) -> LaurentExpansion:
        table = num.table
        if not table.mono_is_cluster_only(den):
            raise StructuralError("expansion denominator contains a frozen variable")
        if num.is_zero:
            return cls(num, 0)
        if den:
            keys = num.terms.keys()
            pairs = []
            for v, s in enumerate(table._shift):
                de = (den >> s) & _FIELD_MASK
                if not de:
                    continue
                e = min((k >> s) & _FIELD_MASK for k in keys)
                if e:
                    pairs.append((v, min(e, de)))
            if pairs:
                common = table._pack(pairs)
                num = Polynomial(table, {k - common: c for k, c in num.terms.items()})
                den -= common
        return cls(num, den)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> LaurentExpansion:
        return cls(p, 0)

    @classmethod
    def for_variable(cls, table: VariableTable, name: str) -> LaurentExpansion:
        return cls(Polynomial.variable(table, name), 0)

    @property
    def table(self) -> VariableTable:
        return self.num.table

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentExpansion):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        return hash((self.den, frozenset(self.num.terms.items())))

    def sign_normalized(self) -> LaurentExpansion:
        num = self.num.sign_normalized()
        return self if num is self.num else LaurentExpansion(num, self.den)

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.num.terms.values())

    def __add__(self, other: LaurentExpansion) -> LaurentExpansion:
        lcm = self.table.mono_lcm(self.den, other.den)
        a = self.num.term_scaled(lcm - self.den, 1) if lcm != self.den else self.num
        b = other.num.term_scaled(lcm - other.den, 1) if lcm != other.den else other.num
        return LaurentExpansion.make(a + b, lcm)

    def __sub__(self, other: LaurentExpansion) -> LaurentExpansion:
        lcm = self.table.mono_lcm(self.den, other.den)
        a = self.num.term_scaled(lcm - self.den, 1) if lcm != self.den else self.num
        b = other.num.term_scaled(lcm - other.den, 1) if lcm != other.den else other.num
        return LaurentExpansion.make(a - b, lcm)

    def __neg__(self) -> LaurentExpansion:
        return LaurentExpansion(-self.num, self.den)

    def __mul__(self, other: LaurentExpansion) -> LaurentExpansion:
        return LaurentExpansion.make(self.num * other.num, self.den + other.den)

    def __pow__(self, n: int) -> LaurentExpansion:
        return LaurentExpansion.make(self.num**n, self.den * n)

    def __truediv__(self, other: LaurentExpansion) -> LaurentExpansion:
        """Exact division; fails if the result is not a Laurent expansion."""
        if other.is_zero:
            raise PolynomialError("division by a zero expansion")
        mono, core = other.num.strip_monomial()
        num = self.num.term_scaled(other.den, 1)
        if not core.is_unit:
            quot = num.exact_divide(core)
            if quot is None:
                raise StructuralError("quotient is not a Laurent expansion")
            num = quot
        elif core.terms.get(0) == -1:
            num = -num
        return LaurentExpansion.make(num, self.den + mono)

    def text(self) -> str:
        num = self.num.text()
        if self.den == 0:
            return num
        den = self.table.mono_text(self.den)
        if len(self.num.terms) > 1 or self.num.leading_coeff() < 0:
            num = f"({num})"
        if "*" in den or "^" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"LaurentExpansion({self.text()})"

    def sort_key(self) -> tuple:
        """Deterministic comparison key (used for canonical seed ordering)."""
        return (
            self.den,
            len(self.num.terms),
            tuple(sorted(self.num.terms.items(), reverse=True)),
        )


def evaluate_at_expansions(
    p: Polynomial, images: Sequence[LaurentExpansion | None]
) -> LaurentExpansion:
    """Evaluate p with cluster variable of slot k replaced by images[k].

    A None image leaves that cluster variable untouched.  Frozen variables
    always map to themselves.  All expansions share p's table.  Terms are
    accumulated over a common monomial denominator and reduced once.
    """
    table = p.table
    lo = table._cluster_lo
    n = table.rank
    shifts = [table._shift[lo + s] for s in range(n)]
    cdeg_shift = table._cdeg_shift
    one_poly = Polynomial.constant(table, 1)
    pows: list[dict[int, tuple[Polynomial, int]]] = [{} for _ in range(n)]

    def power(s: int, e: int) -> tuple[Polynomial, int]:
        img = images[s]
        assert img is not None
        cache = pows[s]
        got = cache.get(e)
        if got is None:
            got = (img.num**e, img.den * e)
            cache[e] = got
        return got

    parts: list[tuple[Polynomial, int, int, int]] = []  # (num, den, mono, coeff)
    for key, c in p.terms.items():
        rest = key
        num = one_poly
        den = 0
        for s in range(n):
            e = (key >> shifts[s]) & _FIELD_MASK
            if e and images[s] is not None:
                rest -= (e << shifts[s]) + (e << cdeg_shift)
                pn, pd = power(s, e)
                num = num * pn if num is not one_poly else pn
                den += pd
        parts.append((num, den, rest, c))

    lcm = 0
    for _, den, _, _ in parts:
        lcm = table.mono_lcm(lcm, den) if lcm else den
    total: dict[int, int] = {}
    get = total.get
    for num, den, rest, c in parts:
        lift = rest + (lcm - den)
        for k, cc in num.terms.items():
            kk = k + lift
            nc = get(kk, 0) + cc * c
            if nc:
                total[kk] = nc
            else:
                del total[kk]
    return LaurentExpansion.make(Polynomial(table, total), lcm)


def iter_terms_desc(p: Polynomial) -> Iterator[tuple[int, int]]:
    for key in sorted(p.terms, reverse=True):
        yield key, p.terms[key]
