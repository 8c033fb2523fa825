"""Exact multivariate polynomials over Q and prime fields.

Coefficients over Q are ``gmpy2.mpq`` values (always in lowest terms with a
positive denominator); over F_p they are Python ints in ``[0, p)``.  A
polynomial is a finite map from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from gmpy2 import is_prime, mpq

__all__ = [
    "CoefficientField",
    "QQ",
    "GF",
    "PolyRing",
    "Polynomial",
    "MonomialOrder",
    "PolynomialParseError",
    "parse_polynomial",
    "jacobian_matrix",
    "substitute_linear",
    "determinant",
    "minors",
]


class PolynomialParseError(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientField:
    """The rationals (characteristic 0) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p >= 2**31 or not is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    def __call__(self, value) -> object:
        """Coerce an int, mpq, Fraction or ``"a/b"`` string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = mpq(value)
        if p == 0:
            return mpq(value)
        if isinstance(value, int):
            return value % p
        q = mpq(value)
        num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
        return num * pow(den, -1, p) % p

    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)


class MonomialOrder:
    """lex, grevlex or a two-block order.

    ``block(k, first, second)`` compares the first ``k`` variables with
    ``first`` and breaks ties on the remaining ones with ``second``, so it
    eliminates the first ``k`` variables.  ``weights`` give the grading used by
    grevlex blocks (all ones by default).
    """

    __slots__ = ("kind", "split", "inner", "weights")

    def __init__(self, kind: str, split: int = 0, inner=None, weights=None):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order {kind!r}")
        if kind == "block":
            if split < 1 or inner is None or len(inner) != 2:
                raise ValueError("block order needs a split index and two inner orders")
            inner = tuple(inner)
        self.kind = kind
        self.split = split
        self.inner = inner
        self.weights = tuple(weights) if weights is not None else None

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls, weights=None):
        return cls("grevlex", weights=weights)

    @classmethod
    def block(cls, k: int, first=None, second=None):
        return cls("block", k, (first or cls.grevlex(), second or cls.grevlex()))

    def weight_rows(self, n: int) -> list[list[int]]:
        """Nonnegative integer matrix whose rows compare lexicographically."""
        if self.kind == "lex":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        if self.kind == "grevlex":
            w = list(self.weights) if self.weights else [1] * n
            if len(w) != n or min(w, default=1) <= 0:
                raise ValueError("grevlex weights must be positive, one per variable")
            rows = [w[:]]
            # with equal weighted degree, a smaller last exponent wins
            for cut in range(n - 1, 0, -1):
                rows.append([w[j] if j < cut else 0 for j in range(n)])
            return rows
        k = self.split
        if k >= n:
            raise ValueError("block split must leave a nonempty second block")
        first, second = self.inner
        rows = [r + [0] * (n - k) for r in first.weight_rows(k)]
        rows += [[0] * k + r for r in second.weight_rows(n - k)]
        return rows

    def sort_key(self, n: int):
        rows = self.weight_rows(n)

        def key(exps):
            return tuple(sum(r[i] * exps[i] for i in range(n)) for r in rows)

        return key

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.split == other.split
            and self.inner == other.inner
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.kind, self.split, self.inner, self.weights))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.split}, {self.inner[0]!r}, {self.inner[1]!r})"
        if self.weights:
            return f"{self.kind}(weights={list(self.weights)})"
        return self.kind


class PolyRing:
    """Polynomial ring over a coefficient field in named variables."""

    __slots__ = ("variables", "field", "_index", "_key")

    def __init__(self, variables: Sequence[str], field: CoefficientField = QQ):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.variables = variables
        self.field = field
        self._index = {v: i for i, v in enumerate(variables)}
        self._key = MonomialOrder.grevlex().sort_key(len(variables))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_field(self, field: CoefficientField) -> "PolyRing":
        return PolyRing(self.variables, field)

    def extend(self, before: Sequence[str] = (), after: Sequence[str] = ()) -> "PolyRing":
        return PolyRing(tuple(before) + self.variables + tuple(after), self.field)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)}; {self.field})"


class Polynomial:
    """Immutable polynomial; terms map exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object] | None = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            n = ring.nvars
            clean = {}
            coerce = ring.field
            for e, c in (terms or {}).items():
                e = tuple(int(a) for a in e)
                if len(e) != n or min(e, default=0) < 0:
                    raise ValueError(f"monomial {e} does not fit a ring with {n} variables")
                c = coerce(c)
                if c:
                    clean[e] = c
            self._terms = clean
        self._hash = None

    # -- inspection -------------------------------------------------------
    def terms(self) -> list[tuple[tuple, object]]:
        """Terms sorted by grevlex, largest first."""
        key = self.ring._key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def as_dict(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, exps) -> object:
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self, weights=None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self._terms}
        else:
            degs = {sum(w * a for w, a in zip(weights, e)) for e in self._terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d}, _trusted=True)

    def lowest_form(self) -> "Polynomial":
        return self.homogeneous_part(self.min_degree()) if self else self

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, a in enumerate(e) if a}

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            p = self.ring.field.characteristic
            if p:
                return Polynomial(self.ring, {e: v * c % p for e, v in self._terms.items()}, _trusted=True)
            return Polynomial(self.ring, {e: v * c for e, v in self._terms.items()}, _trusted=True)
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_monic(self) -> "Polynomial":
        """Divide by the grevlex-leading coefficient."""
        if not self:
            return self
        return self * self.ring.field.inv(self.terms()[0][1])

    def primitive(self) -> "Polynomial":
        """Over Q: scale to coprime integer coefficients, positive leading one."""
        if not self or self.ring.field.characteristic:
            return self.scale_monic()
        from math import gcd, lcm

        den = 1
        for c in self._terms.values():
            den = lcm(den, int(c.denominator))
        ints = {e: int(c * den) for e, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[self.terms()[0][0]]
        if lead < 0:
            g = -g
        return Polynomial(self.ring, {e: mpq(v, g) for e, v in ints.items()}, _trusted=True)

    def derivative(self, i: int) -> "Polynomial":
        p = self.ring.field.characteristic
        out = {}
        for e, c in self._terms.items():
            a = e[i]
            if a:
                v = c * a
                if p:
                    v %= p
                if v:
                    e2 = list(e)
                    e2[i] -= 1
                    out[tuple(e2)] = v
        return Polynomial(self.ring, out, _trusted=True)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(i) for i in range(self.ring.nvars)]

    def evaluate(self, point: Sequence) -> object:
        """Value at a point given as a sequence of field elements."""
        F = self.ring.field
        pt = [F(a) for a in point]
        if len(pt) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        p = F.characteristic
        total = F.zero
        for e, c in self._terms.items():
            v = c
            for a, k in zip(pt, e):
                if k:
                    v = v * a**k
                    if p:
                        v %= p
            total = total + v
        return total % p if p else total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        return substitute_linear(self, images)

    def partial_substitute(self, values: Mapping[int, object]) -> "Polynomial":
        """Set some variables to field constants, staying in the same ring."""
        F = self.ring.field
        vals = {i: F(v) for i, v in values.items()}
        p = F.characteristic
        out: dict = {}
        for e, c in self._terms.items():
            v = c
            e2 = list(e)
            for i, a in vals.items():
                if e2[i]:
                    v = v * a ** e2[i]
                    e2[i] = 0
            if p:
                v %= p
            if v:
                t = tuple(e2)
                out[t] = out.get(t, 0) + v
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out, _trusted=True)

    def to_ring(self, ring: PolyRing, positions: Sequence[int] | None = None) -> "Polynomial":
        """Embed into ``ring``; variable i goes to position ``positions[i]``.

        By default variables are matched by name.  Coefficients are coerced
        into the target field, which allows reduction Q -> F_p.
        """
        if positions is None:
            positions = [ring.index(v) for v in self.ring.variables]
        n = ring.nvars
        out: dict = {}
        for e, c in self._terms.items():
            t = [0] * n
            for i, a in enumerate(e):
                if a:
                    t[positions[i]] += a
            out[tuple(t)] = c
        return Polynomial(ring, out)

    # -- comparison, hashing, printing -------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, mpq)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _format_coeff(c, field: CoefficientField) -> str:
    if field.characteristic:
        return str(c)
    q = mpq(c)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if not p:
        return "0"
    names = p.ring.variables
    field = p.ring.field
    parts = []
    for e, c in p.terms():
        mono = "*".join(
            names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
        )
        neg = field.characteristic == 0 and c < 0
        cs = _format_coeff(-c if neg else c, field)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        parts.append(("- " if neg else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``c*x^e*...`` terms joined by ``+``/``-`` into ``ring``.

    Coefficients are integers or ``a/b`` fractions.  Whitespace is ignored.
    """
    tokens = []
    for m in _TOKEN.finditer(text):
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif sym is not None and not sym.isspace():
            tokens.append(("sym", sym))
    if not tokens:
        raise PolynomialParseError("empty polynomial")
    pos = 0
    F = ring.field

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_factor(exps: list[int]) -> object:
        kind, val = take()
        if kind == "num":
            c = mpq(val)
            if peek() == ("sym", "/"):
                take()
                k2, den = take()
                if k2 != "num":
                    raise PolynomialParseError("expected denominator after '/'")
                if den == 0:
                    raise PolynomialParseError("division by zero in coefficient")
                c = c / den
            if peek() == ("sym", "^"):
                take()
                k2, e = take()
                if k2 != "num":
                    raise PolynomialParseError("expected exponent after '^'")
                c = c**e
            return c
        if kind == "var":
            try:
                i = ring.index(val)
            except KeyError:
                raise PolynomialParseError(f"unknown variable {val!r}") from None
            e = 1
            if peek() == ("sym", "^"):
                take()
                k2, e = take()
                if k2 != "num":
                    raise PolynomialParseError("expected exponent after '^'")
            exps[i] += e
            return mpq(1)
        raise PolynomialParseError(f"unexpected token {val!r}")

    terms: dict = {}
    first = True
    while pos < len(tokens):
        sign = 1
        kind, val = peek()
        if kind == "sym" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise PolynomialParseError(f"expected '+' or '-' before {val!r}")
        first = False
        exps = [0] * ring.nvars
        coeff = mpq(sign) * parse_factor(exps)
        while peek() == ("sym", "*"):
            take()
            coeff *= parse_factor(exps)
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
    try:
        return Polynomial(ring, {e: F(c) for e, c in terms.items()})
    except ZeroDivisionError as exc:
        raise PolynomialParseError(str(exc)) from None


def jacobian_matrix(gens: Sequence[Polynomial]) -> list[list[Polynomial]]:
    """Rows are the gradients of ``gens``."""
    if not gens:
        raise ValueError("jacobian of an empty generator list")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    return [g.gradient() for g in gens]


def substitute_linear(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace variable i of ``p`` by ``images[i]`` and expand."""
    if len(images) != p.ring.nvars:
        raise ValueError(f"need {p.ring.nvars} images, got {len(images)}")
    if not images:
        raise ValueError("no images")
    target = images[0].ring
    if any(q.ring != target for q in images):
        raise ValueError("images live in different rings")
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = images[i] ** k
        return powers[key]

    out = target.zero()
    for e, c in p._terms.items():
        term = target.constant(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(matrix)
    if n == 0 or any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    ms = minors(matrix, n)
    return ms[0] if ms else matrix[0][0].ring.zero()


def minors(matrix: Sequence[Sequence[Polynomial]], k: int) -> list[Polynomial]:
    """All nonzero k x k minors, sharing sub-determinants between them."""
    from itertools import combinations

    nrows, ncols = len(matrix), len(matrix[0])
    if k > min(nrows, ncols):
        return []
    cache: dict = {}

    def det(rows: tuple, cols: tuple) -> Polynomial:
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        key = (rows, cols)
        hit = cache.get(key)
        if hit is not None:
            return hit
        r0, rest = rows[0], rows[1:]
        total = None
        for j, c in enumerate(cols):
            entry = matrix[r0][c]
            if not entry:
                continue
            term = entry * det(rest, cols[:j] + cols[j + 1 :])
            total = term if total is None else (total - term if j % 2 else total + term)
        if total is None:
            total = matrix[r0][cols[0]].ring.zero()
        cache[key] = total
        return total

    out = []
    seen = set()
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            m = det(rows, cols)
            if m and m not in seen:
                seen.add(m)
                out.append(m)
    return out
