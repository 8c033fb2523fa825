"""Ideals and the Groebner-based primitives built on them.

Everything here is exact.  Saturation by a single homogeneous element uses
Bayer's trick (adjoin ``y - h`` with ``y`` weighted by ``deg h`` and last in a
weighted grevlex order, divide the basis by powers of ``y``, substitute
back), which keeps the computation homogeneous.  Inhomogeneous input falls
back to the Rabinowitsch variable ``w*h - 1``.
"""

from __future__ import annotations

import functools
import logging
from fractions import Fraction
from typing import Iterable, Sequence

from .groebner import BudgetExhausted, Encoder, buchberger, reduce_full
from .hilbert import (
    HilbertData,
    hilbert_data_from_monomials,
    hilbert_polynomial_from_monomials,
    reduced_numerator,
)
from .poly import MonomialOrder, PolyRing, Polynomial

log = logging.getLogger(__name__)

__all__ = [
    "Ideal",
    "GroebnerBasis",
    "BudgetExhausted",
    "OriginNotOnVariety",
    "groebner_basis",
    "normal_form",
    "eliminate",
    "saturate",
    "saturate_by_element",
    "intersect",
    "quotient",
    "hilbert_data",
    "hilbert_polynomial",
    "krull_dimension",
    "initial_forms_at_origin",
    "flat_limit",
    "radical_membership",
    "radical_contains",
    "ideal_equal_up_to_radical",
    "fresh_name",
]


class OriginNotOnVariety(ValueError):
    pass


class Ideal:
    """Ideal given by generators; zero generators are dropped.

    An ideal with no generators is the zero ideal.
    """

    __slots__ = ("ring", "generators", "_hash")

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring(g) if isinstance(g, str) else ring.constant(g)
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._hash = None

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring(t) for t in texts])

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_weighted_homogeneous(self, weights) -> bool:
        return all(g.is_homogeneous(weights) for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise ValueError("ideals live in different rings")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def map(self, fn) -> "Ideal":
        gens = [fn(g) for g in self.generators]
        ring = gens[0].ring if gens else self.ring
        return Ideal(ring, gens)

    def to_ring(self, ring: PolyRing, positions=None) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring, positions) for g in self.generators])

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.generators))
        return self._hash

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def summary(self) -> list[str]:
        return [str(g) for g in self.generators]


class GroebnerBasis:
    """Reduced Groebner basis: monic, minimal, inter-reduced elements."""

    __slots__ = ("ring", "order", "elements", "reduced", "_enc", "_packed")

    def __init__(self, ring, order, elements, enc, packed):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.reduced = True
        self._enc = enc
        self._packed = packed

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.elements

    def leading_exponents(self) -> list[tuple]:
        return [self._enc.decode(t[0][0]) for t in self._packed]

    def leading_terms(self) -> list[Polynomial]:
        return [Polynomial(self.ring, {e: 1}) for e in self.leading_exponents()]

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise ValueError("polynomial lives in a different ring")
        enc = self._enc
        f = {enc.encode(e): c for e, c in p._terms.items()}
        lows = [t[0][0] & enc.emask for t in self._packed]
        r = reduce_full(f, lows, list(self._packed), enc, self.ring.field.characteristic)
        return Polynomial(self.ring, {enc.decode(m): c for m, c in r.items()}, _trusted=True)

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({self.order!r}: {', '.join(map(str, self.elements))})"


def _grading_for(order: MonomialOrder, n: int):
    if order.kind == "grevlex" and order.weights:
        return order.weights
    return None


@functools.lru_cache(maxsize=256)
def _gb_cached(ideal: Ideal, order: MonomialOrder) -> GroebnerBasis:
    ring = ideal.ring
    n = ring.nvars
    enc = Encoder(n, order, _grading_for(order, n))
    inputs = [{enc.encode(e): c for e, c in g._terms.items()} for g in ideal.generators]
    packed = buchberger(inputs, enc, ring.field.characteristic)
    elements = [
        Polynomial(ring, {enc.decode(m): c for m, c in terms}, _trusted=True) for terms in packed
    ]
    return GroebnerBasis(ring, order, elements, enc, tuple(packed))


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` (grevlex by default).

    Raises :class:`BudgetExhausted` when the active budget is exceeded.
    """
    return _gb_cached(I, order or MonomialOrder.grevlex())


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(p)


def fresh_name(ring: PolyRing, stem: str) -> str:
    name = stem
    k = 0
    while name in ring.variables:
        k += 1
        name = f"{stem}{k}"
    return name


def eliminate(I: Ideal, k: int, weights: Sequence[int] | None = None) -> Ideal:
    """I intersected with the subring of the last ``nvars - k`` variables.

    The result lives in a ring over those variables.  ``weights`` (one per
    variable) grade the two grevlex blocks, which keeps weighted-homogeneous
    input homogeneous during the computation.
    """
    ring = I.ring
    n = ring.nvars
    if not 1 <= k < n:
        raise ValueError(f"can only eliminate 1..{n - 1} variables, got {k}")
    first = MonomialOrder.grevlex(weights[:k] if weights else None)
    second = MonomialOrder.grevlex(weights[k:] if weights else None)
    G = groebner_basis(I, MonomialOrder.block(k, first, second))
    sub = PolyRing(ring.variables[k:], ring.field)
    keep = []
    for g in G.elements:
        if all(not any(e[:k]) for e in g._terms):
            keep.append(Polynomial(sub, {e[k:]: c for e, c in g._terms.items()}, _trusted=True))
    return Ideal(sub, keep)


def _homogeneity_weights(I: Ideal, h: Polynomial):
    if I.homogeneous and h.is_homogeneous():
        return [1] * I.ring.nvars
    return None


def saturate_by_element(I: Ideal, h: Polynomial, weights: Sequence[int] | None = None) -> Ideal:
    """I : h^infinity.

    With (weighted) homogeneous input this is one homogeneous GB; otherwise
    it is the Rabinowitsch elimination.
    """
    ring = I.ring
    if h.ring != ring:
        raise ValueError("h lives in a different ring")
    if not h:
        return Ideal(ring, [ring.one()])
    if h.is_constant():
        return I
    if I.is_zero():
        return I
    if weights is None:
        weights = _homogeneity_weights(I, h)
    elif not (I.is_weighted_homogeneous(weights) and h.is_homogeneous(weights)):
        weights = None
    if weights is None:
        return _saturate_rabinowitsch(I, h)
    y = fresh_name(ring, "y_sat")
    big = ring.extend(after=[y])
    dh = sum(w * a for w, a in zip(weights, next(iter(h._terms))))
    yvar = big.gen(big.nvars - 1)
    gens = [g.to_ring(big) for g in I.generators] + [yvar - h.to_ring(big)]
    G = groebner_basis(Ideal(big, gens), MonomialOrder.grevlex(list(weights) + [dh]))
    images = ring.gens() + [h]
    out = []
    n = ring.nvars
    for g in G.elements:
        k = min(e[n] for e in g._terms)
        if k:
            g = Polynomial(
                big, {e[:n] + (e[n] - k,): c for e, c in g._terms.items()}, _trusted=True
            )
        if g.is_constant():
            return Ideal(ring, [ring.one()])
        out.append(g.substitute(images))
    return _interreduce(Ideal(ring, out))


def _interreduce(I: Ideal) -> Ideal:
    if I.is_zero():
        return I
    return groebner_basis(I).ideal()


def _saturate_rabinowitsch(I: Ideal, h: Polynomial) -> Ideal:
    ring = I.ring
    w = fresh_name(ring, "w_sat")
    big = ring.extend(before=[w])
    wv = big.gen(0)
    gens = [g.to_ring(big) for g in I.generators] + [wv * h.to_ring(big) - 1]
    out = eliminate(Ideal(big, gens), 1)
    return Ideal(ring, [g.to_ring(ring) for g in out.generators])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1 - t)*J with t eliminated."""
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    t = fresh_name(ring, "t_int")
    big = ring.extend(before=[t])
    tv = big.gen(0)
    gens = [tv * g.to_ring(big) for g in I.generators]
    gens += [(1 - tv) * g.to_ring(big) for g in J.generators]
    out = eliminate(Ideal(big, gens), 1)
    return Ideal(ring, [g.to_ring(ring) for g in out.generators])


def quotient(I: Ideal, h: Polynomial) -> Ideal:
    """I : h = (I ∩ (h)) / h."""
    ring = I.ring
    inter = intersect(I, Ideal(ring, [h]))
    out = []
    for g in inter.generators:
        q = _exact_divide(g, h)
        out.append(q)
    return Ideal(ring, out)


def _exact_divide(g: Polynomial, h: Polynomial) -> Polynomial:
    """g / h, assuming h divides g."""
    ring = g.ring
    F = ring.field
    key = MonomialOrder.lex().sort_key(ring.nvars)
    he, hc = max(h._terms.items(), key=lambda t: key(t[0]))
    inv = F.inv(hc)
    q = ring.zero()
    r = g
    while r:
        re_, rc = max(r._terms.items(), key=lambda t: key(t[0]))
        diff = tuple(a - b for a, b in zip(re_, he))
        if min(diff) < 0:
            raise ValueError("inexact division")
        mono = Polynomial(ring, {diff: F(rc * inv)})
        q = q + mono
        r = r - mono * h
    return q


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity, generator by generator, intersected."""
    if J.ring != I.ring:
        raise ValueError("ideals live in different rings")
    if J.is_zero():
        return Ideal(I.ring, [I.ring.one()])
    result = None
    for g in J.generators:
        part = saturate_by_element(I, g)
        result = part if result is None else intersect(result, part)
    return _interreduce(result)


def hilbert_data(I: Ideal) -> HilbertData:
    """Projective dimension and degree of the scheme cut out by ``I``."""
    if not I.homogeneous:
        raise ValueError("hilbert_data needs a homogeneous ideal")
    n = I.ring.nvars
    if I.is_zero():
        return HilbertData(n - 1, 1)
    G = groebner_basis(I)
    return hilbert_data_from_monomials(G.leading_exponents(), n)


def hilbert_polynomial(I: Ideal) -> list[Fraction]:
    """Hilbert polynomial coefficients, constant term first."""
    if not I.homogeneous:
        raise ValueError("hilbert_polynomial needs a homogeneous ideal")
    n = I.ring.nvars
    if I.is_zero():
        return hilbert_polynomial_from_monomials([], n)
    G = groebner_basis(I)
    return hilbert_polynomial_from_monomials(G.leading_exponents(), n)


def krull_dimension(I: Ideal) -> int:
    """Dimension of k[x]/I (-1 for the unit ideal); any ideal."""
    n = I.ring.nvars
    if I.is_zero():
        return n
    G = groebner_basis(I)
    if G.is_unit():
        return -1
    num, d = reduced_numerator(G.leading_exponents(), n)
    return d


def initial_forms_at_origin(I: Ideal) -> Ideal:
    """Ideal of lowest-degree forms of I at the origin (the tangent cone).

    Homogenize with an auxiliary variable t, saturate by t, then take a GB in
    the order comparing t-exponents first; the terms of highest t-degree of
    the basis elements, with t set to 1, generate the cone.
    """
    ring = I.ring
    for g in I.generators:
        if g.coefficient((0,) * ring.nvars):
            raise OriginNotOnVariety(f"generator {g} does not vanish at the origin")
    if I.is_zero():
        return I
    if len(I.generators) == 1:
        return Ideal(ring, [I.generators[0].lowest_form()])
    n = ring.nvars
    t = fresh_name(ring, "t_tc")
    tail = ring.extend(after=[t])
    hom = []
    for g in I.generators:
        D = g.total_degree()
        hom.append(
            Polynomial(tail, {e + (D - sum(e),): c for e, c in g._terms.items()}, _trusted=True)
        )
    sat = saturate_by_element(Ideal(tail, hom), tail.gen(n))
    head = ring.extend(before=[t])
    moved = Ideal(head, [g.to_ring(head) for g in sat.generators])
    G = groebner_basis(moved, MonomialOrder.block(1, MonomialOrder.grevlex(), MonomialOrder.grevlex()))
    forms = []
    for g in G.elements:
        top = max(e[0] for e in g._terms)
        forms.append(
            Polynomial(ring, {e[1:]: c for e, c in g._terms.items() if e[0] == top}, _trusted=True)
        )
    return _interreduce(Ideal(ring, forms))


def flat_limit(F: Ideal, t: str | None = None) -> Ideal:
    """Fiber at t = 0 of the t-saturated family ``F``.

    ``t`` names the parameter (default: the last variable).  The result
    lives in the ring of the remaining variables.
    """
    ring = F.ring
    name = t if t is not None else ring.variables[-1]
    ti = ring.index(name)
    tv = ring.gen(ti)
    sat = saturate_by_element(F, tv)
    rest = [v for v in ring.variables if v != name]
    sub = PolyRing(rest, ring.field)
    keep = [i for i in range(ring.nvars) if i != ti]
    out = []
    for g in sat.generators:
        g0 = g.partial_substitute({ti: 0})
        out.append(
            Polynomial(sub, {tuple(e[i] for i in keep): c for e, c in g0._terms.items()}, _trusted=True)
        )
    return _interreduce(Ideal(sub, out))


def radical_membership(p: Polynomial, I: Ideal) -> bool:
    """True iff ``p`` vanishes on V(I) (over the algebraic closure)."""
    ring = I.ring
    if p.ring != ring:
        raise ValueError("p lives in a different ring")
    if not p:
        return True
    if I.is_zero():
        return False
    G = groebner_basis(I)
    if G.is_unit() or G.contains(p):
        return True
    if p.is_constant():
        return False
    weights = _homogeneity_weights(I, p)
    if weights is not None:
        sat = saturate_by_element(I, p, weights)
        return len(sat.generators) == 1 and sat.generators[0].is_constant()
    w = fresh_name(ring, "w_rad")
    big = ring.extend(before=[w])
    gens = [g.to_ring(big) for g in I.generators] + [big.gen(0) * p.to_ring(big) - 1]
    return groebner_basis(Ideal(big, gens)).is_unit()


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """True iff V(I) ⊆ V(J), i.e. J ⊆ rad(I)."""
    return all(radical_membership(g, I) for g in J.generators)


def ideal_equal_up_to_radical(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return radical_contains(I, J) and radical_contains(J, I)
