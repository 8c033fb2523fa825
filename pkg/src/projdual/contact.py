"""Tangency schemes, contact loci and shadows."""

from __future__ import annotations

import logging

from .ideal import (
    Ideal,
    eliminate,
    groebner_basis,
    hilbert_data,
    radical_contains,
    saturate_by_element,
)
from .linear import LinearSubspace, PointP, RandomSource, linear_form
from .poly import MonomialOrder, PolyRing, Polynomial, minors, substitute_linear
from .sampling import known_points, sample_point
from .variety import ProjectiveVariety, generic_jacobian, tangent_space

log = logging.getLogger(__name__)

__all__ = [
    "ContactCheckFailed",
    "tangency_scheme",
    "contact_locus",
    "shadow_membership",
    "shadow_covers",
    "ShadowResult",
    "DefectiveVariety",
    "tangency_dimension",
]


class ContactCheckFailed(RuntimeError):
    """The random-fibre cross-check disagreed with the computed contact locus."""


def _hyperplane_vector(H) -> tuple:
    if isinstance(H, PointP):
        return H.coords
    if isinstance(H, LinearSubspace):
        if H.dim != H.ambient_dim - 1:
            raise ValueError("tangency_scheme needs a hyperplane")
        return H.cut[0]
    return tuple(H)


def tangency_scheme(X: ProjectiveVariety, H, rng: RandomSource | None = None) -> Ideal:
    """Scheme of points where the hyperplane H is tangent to X.

    ``H`` is a hyperplane (LinearSubspace of dimension N-1) or its point in
    the dual space.  I(X) plus the (c+1)-minors of the compressed Jacobian
    with the row h, saturated by a generic c-minor.
    """
    rng = rng or RandomSource(0)
    h = _hyperplane_vector(H)
    ring = X.ring
    rows, hs = generic_jacobian(X, rng)
    hrow = [ring.constant(c) for c in h]
    gens = list(X.generators) + minors(list(rows) + [hrow], len(rows) + 1)
    return saturate_by_element(Ideal(ring, gens), hs)


def contact_locus(
    X: ProjectiveVariety,
    L: LinearSubspace,
    rng: RandomSource | None = None,
    check: bool = True,
) -> Ideal:
    """Tan(L, X): the part of X swept by tangency loci of hyperplanes through L.

    L^perp is parametrized by lambda; the incidence ideal in (x, lambda) is
    saturated by a generic Jacobian minor and a generic lambda-form, then by
    the leading coefficients (in lambda) of a Groebner basis over k(lambda),
    which removes every component not dominating L^perp.  Eliminating lambda
    gives the answer, which is cross-checked against the tangency schemes of
    two random hyperplanes through L.
    """
    rng = rng or RandomSource(0)
    if L.ambient_dim != X.ambient_dim:
        raise ValueError("L lives in a different ambient space")
    if L.is_whole():
        raise ValueError("L must be a proper subspace")
    Lp = L.perp()
    ring = X.ring
    if Lp.dim == 0:
        return tangency_scheme(X, Lp.points()[0], rng.split())
    n = ring.nvars
    r = len(Lp.span)
    lam_names = [f"_m{i}" for i in range(r)]
    big = PolyRing(ring.variables + tuple(lam_names), ring.field)
    lam = [big.gen(n + i) for i in range(r)]
    rows, hs = generic_jacobian(X, rng.split())
    hrow = []
    for j in range(n):
        acc = big.zero()
        for i in range(r):
            if Lp.span[i][j]:
                acc = acc + lam[i] * Lp.span[i][j]
        hrow.append(acc)
    emb = [[e.to_ring(big) for e in row] for row in rows]
    gens = [g.to_ring(big) for g in X.generators] + minors(emb + [hrow], len(rows) + 1)
    K = Ideal(big, gens)
    K = saturate_by_element(K, hs.to_ring(big))
    K = saturate_by_element(K, linear_form(big, [0] * n + rng.vector(r)))
    K = _dominant_part(K, n)
    # eliminate lambda: move it to the front
    front = PolyRing(tuple(lam_names) + ring.variables, ring.field)
    pos = list(range(r, r + n)) + list(range(r))
    E = eliminate(K.to_ring(front, pos), r)
    E = Ideal(ring, [g.to_ring(ring) for g in E.generators])
    if check:
        _cross_check(X, L, E, rng.split())
    return E


def _dominant_part(K: Ideal, n: int) -> Ideal:
    """Saturate away components of V(K) lying over a proper subset of the
    parameter space (the variables after the first n).

    Over the complement of the leading coefficients of a Groebner basis in
    an order eliminating the first n variables, the family is flat, so no
    component can live there without dominating.
    """
    big = K.ring
    order = MonomialOrder.block(n, MonomialOrder.grevlex(), MonomialOrder.grevlex())
    G = groebner_basis(K, order)
    if G.is_unit():
        return K
    lcs = {}
    for g in G.elements:
        terms = g.as_dict()
        lead = max((sum(e[:n]), _revkey(e[:n])) for e in terms)
        coeff = {
            (0,) * n + e[n:]: c
            for e, c in terms.items()
            if (sum(e[:n]), _revkey(e[:n])) == lead
        }
        lc = Polynomial(big, coeff)
        if not lc.is_constant():
            lcs[lc.scale_monic()] = None
    for lc in lcs:
        K = saturate_by_element(K, lc)
    return K


def _revkey(e: tuple) -> tuple:
    # grevlex tie-break on a fixed-degree block
    return tuple(-a for a in reversed(e))


def _cross_check(X, L, E, rng):
    Lp = L.perp()
    for _ in range(2):
        h = Lp.random_point(rng)
        T = tangency_scheme(X, h, rng.split())
        if not radical_contains(T, E):
            raise ContactCheckFailed("a random tangency locus escapes the contact locus")


class DefectiveVariety(ValueError):
    """Shadow operations need a hypersurface dual; slice X first."""


def tangency_dimension(X: ProjectiveVariety, rng: RandomSource | None = None, pool=None) -> int:
    """def(X), read off as the dimension of the tangency locus of a random
    hyperplane tangent at a random point."""
    rng = rng or RandomSource(0)
    x = sample_point(X, rng, pool=pool if pool is not None else known_points(X))
    h = tangent_space(X, x).perp().random_point(rng)
    return hilbert_data(tangency_scheme(X, h, rng.split())).proj_dimension


def _require_no_defect(X, rng, pool=None):
    d = tangency_dimension(X, rng, pool)
    if d > 0:
        raise DefectiveVariety(f"def(X) = {d} > 0 is not supported; use slice_variety first")


class ShadowResult:
    """Outcome of a shadow test; ``witness`` is a point outside the shadow."""

    def __init__(self, covers: bool, points: list, witness: PointP | None):
        self.covers = covers
        self.points = points
        self.witness = witness

    def __bool__(self):
        return self.covers


def shadow_membership(
    X: ProjectiveVariety,
    L: LinearSubspace,
    x: PointP,
    rng: RandomSource | None = None,
    contact: Ideal | None = None,
) -> bool:
    """Is x on a line of X meeting Tan(L, X) at a point other than x?

    Only the case def(X) = 0 is supported; slice X first otherwise.
    """
    rng = rng or RandomSource(0)
    if not X.contains_point(x):
        raise ValueError(f"{x} is not on the variety")
    if contact is None:
        _require_no_defect(X, rng.split())
        contact = contact_locus(X, L, rng.split())
    ring = X.ring
    ST = PolyRing(("_s", "_t") + ring.variables, ring.field)
    s, t = ST.gen(0), ST.gen(1)
    images = [s * c + t * ST.gen(2 + j) for j, c in enumerate(x.coords)]
    gens = list(contact.generators)
    for g in X.generators:
        line = substitute_linear(g, images)
        coeffs: dict = {}
        for e, c in line.as_dict().items():
            coeffs.setdefault(e[:2], {})[(0, 0) + e[2:]] = c
        for part in coeffs.values():
            q = Polynomial(ST, part)
            gens.append(Polynomial(ring, {e[2:]: c for e, c in q.as_dict().items()}))
    ell = rng.vector(ring.nvars)
    # make ell vanish at x
    piv = x.pivot()
    ell[piv] = 0
    val = sum(a * b for a, b in zip(ell, x.coords))
    form = [ring.field(a) for a in ell]
    form[piv] = ring.field(-val)
    if not any(form):
        form[(piv + 1) % ring.nvars] = ring.field.one
    I = saturate_by_element(Ideal(ring, gens), linear_form(ring, form))
    return not hilbert_data(I).is_empty


def shadow_covers(
    X: ProjectiveVariety,
    L: LinearSubspace,
    rng: RandomSource | None = None,
    trials: int = 3,
) -> ShadowResult:
    """Probabilistic test of Sh_X(L) = X.

    A False answer is certified by ``witness``; True is evidence only.
    """
    rng = rng or RandomSource(0)
    pool = known_points(X)
    _require_no_defect(X, rng.split(), pool)
    E = contact_locus(X, L, rng.split())
    pts = []
    for _ in range(trials):
        x = sample_point(X, rng, pool=pool)
        pts.append(x)
        if not shadow_membership(X, L, x, rng, contact=E):
            return ShadowResult(False, pts, x)
    return ShadowResult(True, pts, None)
