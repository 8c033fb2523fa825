"""Rational points on projective varieties, and generic hyperplane slicing.

A random point is produced by cutting X with a linear space M of
complementary dimension that passes through ``codim X`` points already
known to lie on X.  When deg X = codim X + 1 (varieties of minimal degree)
the residual intersection is a single rational point.  Cubic hypersurfaces
use a tangent line at a known point instead.  Anything else falls back to
finding a rational root of an eliminant of the residual scheme.
"""

from __future__ import annotations

import itertools
import logging

from .ideal import Ideal, eliminate, groebner_basis, hilbert_data, saturate_by_element
from .linear import LinearSubspace, PointP, RandomSource, kernel, linear_form
from .poly import PolyRing, Polynomial, substitute_linear
from .variety import ProjectiveVariety, tangent_space

log = logging.getLogger(__name__)

__all__ = [
    "SamplingError",
    "known_points",
    "sample_point",
    "sample_points",
    "sample_dual_point",
    "restrict_to_span",
    "slice_variety",
]


class SamplingError(RuntimeError):
    pass


def known_points(X: ProjectiveVariety, limit: int = 64, extra=()) -> list[PointP]:
    """Points of X with coordinates in {-1, 0, 1} (or {0, 1} in large ambient spaces)."""
    n = X.ring.nvars
    vals = (0, 1, -1) if n <= 7 else (0, 1)
    out = [p for p in extra if X.contains_point(p)]
    seen = {p.coords for p in out}
    for v in itertools.product(vals, repeat=n):
        if not any(v) or next(a for a in v if a) != 1:
            continue
        p = PointP(v, X.field)
        if p.coords in seen:
            continue
        if X.contains_point(p):
            out.append(p)
            seen.add(p.coords)
            if len(out) >= limit:
                break
    return out


def restrict_to_span(X: ProjectiveVariety, rows) -> Ideal:
    """Pull back I(X) to P^k along s -> sum s_i rows[i]."""
    k = len(rows)
    S = PolyRing([f"s{i}" for i in range(k)], X.field)
    s = S.gens()
    images = []
    for j in range(X.ring.nvars):
        acc = S.zero()
        for i in range(k):
            if rows[i][j]:
                acc = acc + s[i] * rows[i][j]
        images.append(acc)
    return Ideal(S, [substitute_linear(g, images) for g in X.generators])


def _vanishing_form(S: PolyRing, at: int, rng: RandomSource) -> Polynomial:
    """Random linear form on P^k vanishing at the coordinate point e_at."""
    v = rng.vector(S.nvars)
    v[at] = 0
    if not any(v):
        v[(at + 1) % S.nvars] = 1
    return linear_form(S, v)


def _solve_point(K: Ideal) -> list | None:
    """The unique point of a degree-one zero-dimensional scheme, else None."""
    hd = hilbert_data(K)
    if hd.proj_dimension != 0 or hd.degree != 1:
        return None
    lin = [g for g in groebner_basis(K).elements if g.total_degree() == 1]
    n = K.ring.nvars
    rows = [[g.coefficient(tuple(int(i == j) for i in range(n))) for j in range(n)] for g in lin]
    ker = kernel(rows, n, K.ring.field)
    return ker[0] if len(ker) == 1 else None


def _to_ambient(rows, s) -> list:
    n = len(rows[0])
    return [sum(s[i] * rows[i][j] for i in range(len(rows))) for j in range(n)]


def _residual_attempt(X, pool, rng) -> PointP | None:
    c = X.codim
    d = X.degree
    n = X.ring.nvars
    F = X.field
    smooth = [p for p in pool if X.is_smooth_point(p)]
    if d - 1 <= c and len(smooth) >= d - 1:
        chosen = _pick(smooth, d - 1, rng)
        rows = [list(p.coords) for p in chosen]
        while len(rows) < c + 1:
            rows.append(rng.vector(n))
        if LinearSubspace.from_span(rows, n - 1, F).dim != c:
            return None
        K = restrict_to_span(X, rows)
        for i in range(len(chosen)):
            K = saturate_by_element(K, _vanishing_form(K.ring, i, rng))
        s = _solve_point(K)
        return PointP(_to_ambient(rows, s), F) if s else None
    if c == 1 and d == 3 and smooth:
        p = rng.choice(smooth)
        T = tangent_space(X, p)
        v = T.random_point(rng)
        rows = [list(p.coords), list(v.coords)]
        if LinearSubspace.from_span(rows, n - 1, F).dim != 1:
            return None
        K = restrict_to_span(X, rows)
        K = saturate_by_element(K, K.ring.gen(1))
        s = _solve_point(K)
        return PointP(_to_ambient(rows, s), F) if s else None
    return None


def _pick(pool, k, rng):
    idx = list(range(len(pool)))
    out = []
    for _ in range(k):
        j = rng.choice(idx)
        idx.remove(j)
        out.append(pool[j])
    return out


def _rational_root_attempt(X, pool, rng) -> PointP | None:
    """Cut by a random complementary space and look for a rational point of
    the residual scheme through a linear factor of a binary eliminant."""
    import sympy

    c = X.codim
    n = X.ring.nvars
    F = X.field
    smooth = [p for p in pool if X.is_smooth_point(p)]
    a = min(len(smooth), c)
    chosen = _pick(smooth, a, rng) if a else []
    rows = [list(p.coords) for p in chosen]
    while len(rows) < c + 1:
        rows.append(rng.vector(n))
    if LinearSubspace.from_span(rows, n - 1, F).dim != c:
        return None
    K = restrict_to_span(X, rows)
    for i in range(len(chosen)):
        K = saturate_by_element(K, _vanishing_form(K.ring, i, rng))
    hd = hilbert_data(K)
    if hd.proj_dimension != 0:
        return None
    S = K.ring
    if S.nvars == 2:
        binary = K
    else:
        order = list(range(2, S.nvars)) + [0, 1]
        moved = PolyRing([S.variables[i] for i in order], F)
        binary = eliminate(K.to_ring(moved), S.nvars - 2)
    if binary.is_zero() or not binary.generators:
        return None
    g = min(binary.generators, key=lambda q: q.total_degree())
    s0, s1 = sympy.symbols("s0 s1")
    expr = sum(
        sympy.Rational(int(c_.numerator), int(c_.denominator)) * s0 ** e[0] * s1 ** e[1]
        if not F.characteristic
        else int(c_) * s0 ** e[0] * s1 ** e[1]
        for e, c_ in g.as_dict().items()
    )
    kw = {"modulus": F.characteristic} if F.characteristic else {}
    _, factors = sympy.factor_list(expr, s0, s1, **kw)
    for fac, _ in factors:
        P = sympy.Poly(fac, s0, s1)
        if P.total_degree() != 1:
            continue
        a0 = P.coeff_monomial(s0)
        a1 = P.coeff_monomial(s1)
        lin = linear_form(S, [F(str(a0)), F(str(a1))] + [0] * (S.nvars - 2))
        s = _solve_point(K + Ideal(S, [lin]))
        if s:
            return PointP(_to_ambient(rows, s), F)
    return None


def sample_point(
    X: ProjectiveVariety,
    rng: RandomSource,
    pool=None,
    attempts: int = 24,
    smooth: bool = True,
) -> PointP:
    """A seeded random rational point of X (smooth unless ``smooth=False``)."""
    if X.is_empty():
        raise SamplingError("the variety is empty")
    if X.dim == 0 and X.degree == 1:
        s = _solve_point(X.ideal)
        if s:
            return PointP(s, X.field)
    if pool is None:
        pool = known_points(X)
    taken = {p.coords for p in pool}
    for k in range(attempts):
        try:
            p = _residual_attempt(X, pool, rng)
            if p is None and k >= attempts // 3:
                p = _rational_root_attempt(X, pool, rng)
        except ZeroDivisionError:
            p = None
        if p is None or p.coords in taken or not X.contains_point(p):
            continue
        if smooth and not X.is_smooth_point(p):
            continue
        return p
    raise SamplingError(f"no rational point found after {attempts} attempts")


def sample_points(X: ProjectiveVariety, k: int, rng: RandomSource, **kw) -> list[PointP]:
    pool = known_points(X)
    return [sample_point(X, rng, pool=pool, **kw) for _ in range(k)]


def sample_dual_point(X: ProjectiveVariety, rng: RandomSource) -> PointP:
    """A general point of X^*: a random hyperplane containing T_{X,x}."""
    x = sample_point(X, rng)
    return tangent_space(X, x).perp().random_point(rng)


def slice_variety(X: ProjectiveVariety, count: int, rng: RandomSource) -> ProjectiveVariety:
    """X cut by ``count`` random hyperplanes, as a subvariety of the same P^N."""
    forms = [linear_form(X.ring, rng.vector(X.ring.nvars)) for _ in range(count)]
    return ProjectiveVariety(X.ideal + Ideal(X.ring, forms), "slice")
