"""Projective varieties and the Jacobian-based constructions on them."""

from __future__ import annotations

import functools
import logging
from typing import Sequence

from .hilbert import HilbertData
from .ideal import (
    Ideal,
    eliminate,
    groebner_basis,
    hilbert_data,
    saturate_by_element,
)
from .linear import LinearSubspace, PointP, RandomSource, kernel, rank
from .poly import PolyRing, Polynomial, jacobian_matrix, minors

log = logging.getLogger(__name__)

__all__ = [
    "ProjectiveVariety",
    "PointNotOnVariety",
    "SingularPoint",
    "dual_ring",
    "tangent_space",
    "singular_locus",
    "generic_jacobian",
    "conormal_variety",
    "dual_variety",
]


class PointNotOnVariety(ValueError):
    pass


class SingularPoint(ValueError):
    pass


class ProjectiveVariety:
    """A subscheme of P^N given by a homogeneous ideal.

    Dimension, degree and the singular-locus ideal are computed lazily and
    cached.  The zero ideal stands for all of P^N.
    """

    def __init__(self, ideal: Ideal, name: str | None = None):
        if not ideal.homogeneous:
            raise ValueError("a projective variety needs a homogeneous ideal")
        self.ideal = ideal
        self.ring = ideal.ring
        self.ambient_dim = ideal.ring.nvars - 1
        self.name = name
        self._hilbert: HilbertData | None = None
        self._singular: Ideal | None = None

    @classmethod
    def from_strings(cls, variables: Sequence[str], gens: Sequence[str], field=None, name=None):
        ring = PolyRing(variables, field) if field is not None else PolyRing(variables)
        return cls(Ideal.parse(ring, gens), name)

    @property
    def field(self):
        return self.ring.field

    @property
    def generators(self) -> tuple:
        return self.ideal.generators

    @property
    def hilbert(self) -> HilbertData:
        if self._hilbert is None:
            self._hilbert = hilbert_data(self.ideal)
        return self._hilbert

    @property
    def dim(self) -> int:
        return self.hilbert.proj_dimension

    @property
    def degree(self) -> int:
        return self.hilbert.degree

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def is_empty(self) -> bool:
        return self.hilbert.is_empty

    def is_whole_space(self) -> bool:
        return self.ideal.is_zero() or groebner_basis(self.ideal).is_zero()

    def is_hypersurface(self) -> bool:
        return self.codim == 1 and len(self.reduced_generators()) == 1

    def is_linear(self) -> bool:
        return all(g.total_degree() == 1 for g in self.reduced_generators())

    def reduced_generators(self) -> tuple:
        return groebner_basis(self.ideal).elements

    def defining_polynomial(self) -> Polynomial:
        if len(self.generators) == 1:
            return self.generators[0]
        G = self.reduced_generators()
        if len(G) != 1 or G[0].is_constant():
            raise ValueError("not a hypersurface")
        return G[0]

    @functools.cached_property
    def jacobian(self) -> list[list[Polynomial]]:
        return jacobian_matrix(list(self.generators))

    def contains_point(self, x: PointP) -> bool:
        if len(x) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        return all(not g.evaluate(x.coords) for g in self.generators)

    def jacobian_at(self, x: PointP) -> list[list]:
        return [[e.evaluate(x.coords) for e in row] for row in self.jacobian]

    def is_smooth_point(self, x: PointP) -> bool:
        return rank(self.jacobian_at(x), self.field) == self.codim

    @property
    def singular_ideal(self) -> Ideal:
        if self._singular is None:
            self._singular = singular_locus(self)
        return self._singular

    def is_smooth(self) -> bool:
        return hilbert_data(self.singular_ideal).is_empty

    def linear_span(self) -> LinearSubspace:
        """Smallest linear space containing X (from the degree-1 part of I)."""
        lin = [g for g in self.reduced_generators() if g.total_degree() == 1]
        return LinearSubspace.from_cut(lin, self.ambient_dim, self.field)

    def with_ideal(self, ideal: Ideal, name=None) -> "ProjectiveVariety":
        return ProjectiveVariety(ideal, name)

    def to_field(self, F) -> "ProjectiveVariety":
        ring = self.ring.with_field(F)
        return ProjectiveVariety(self.ideal.to_ring(ring), self.name)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"ProjectiveVariety({label}{', '.join(map(str, self.generators))})"


def dual_ring(ring: PolyRing, stem: str = "u") -> PolyRing:
    """Ring of the dual projective space, with variables u0..uN."""
    n = ring.nvars
    for s in (stem, "v", "w", "y", "z"):
        names = [f"{s}{i}" for i in range(n)]
        if not set(names) & set(ring.variables):
            return PolyRing(names, ring.field)
    raise ValueError("no free variable stem for the dual ring")


def tangent_space(X: ProjectiveVariety, x: PointP) -> LinearSubspace:
    """Embedded tangent space at a smooth point: the kernel of J(x)."""
    if not X.contains_point(x):
        raise PointNotOnVariety(f"{x} is not on the variety")
    Jx = X.jacobian_at(x)
    r = rank(Jx, X.field)
    if r != X.codim:
        raise SingularPoint(f"Jacobian rank {r} at {x}, codimension is {X.codim}")
    return LinearSubspace(X.ambient_dim, tuple(map(tuple, kernel(Jx, X.ring.nvars, X.field))), X.field)


def singular_locus(X: ProjectiveVariety) -> Ideal:
    """I(X) plus the c x c minors of the Jacobian, c = codim X."""
    c = X.codim
    if c == 0:
        return Ideal(X.ring, [X.ring.one()])
    ms = minors(X.jacobian, c)
    return X.ideal + Ideal(X.ring, ms)


def generic_jacobian(X: ProjectiveVariety, rng: RandomSource) -> tuple[list[list[Polynomial]], Polynomial]:
    """A c-row compression R1*J of the Jacobian and a generic c x c minor.

    The minor ``det(R1 * J * R2)`` vanishes on the singular locus, and on
    the smooth part it cuts out a proper hypersurface section; saturating by
    it stands in for saturating by the full minors ideal.
    """
    c = X.codim
    J = X.jacobian
    r = len(J)
    n = X.ring.nvars
    if c > r:
        raise ValueError("fewer generators than the codimension")
    if c == r:
        rows = J
    else:
        R1 = rng.matrix(c, r)
        rows = [
            _lin_comb(J, R1[i]) for i in range(c)
        ]
    R2 = rng.matrix(n, c)
    ring = X.ring
    sq = [[sum((rows[i][k] * R2[k][j] for k in range(n) if R2[k][j]), ring.zero()) for j in range(c)] for i in range(c)]
    h = minors(sq, c)
    return rows, (h[0] if h else ring.zero())


def _lin_comb(J, coeffs):
    ring = J[0][0].ring
    n = len(J[0])
    out = []
    for k in range(n):
        acc = ring.zero()
        for a, row in zip(coeffs, J):
            if a and row[k]:
                acc = acc + row[k] * a
        out.append(acc)
    return out


def _product_ring(X: ProjectiveVariety, target: PolyRing | None) -> tuple[PolyRing, PolyRing]:
    U = target if target is not None else dual_ring(X.ring)
    if U.nvars != X.ring.nvars:
        raise ValueError("dual ring has the wrong arity")
    if set(U.variables) & set(X.ring.variables):
        U = dual_ring(X.ring)
    return PolyRing(X.ring.variables + U.variables, X.field), U


def conormal_variety(X: ProjectiveVariety, rng: RandomSource | None = None) -> Ideal:
    """Bihomogeneous ideal of the conormal variety in P^N x (P^N)^*.

    I(X) plus the (c+1)-minors of the compressed Jacobian with the row u
    appended, saturated by a generic c-minor (which removes the singular
    locus and the degeneracy locus of the compression).
    """
    if X.is_linear():
        raise ValueError("the conormal construction needs a non-linear variety")
    rng = rng or RandomSource(0)
    big, U = _product_ring(X, None)
    rows, h = generic_jacobian(X, rng)
    n = X.ring.nvars
    emb = [[e.to_ring(big) for e in row] for row in rows]
    urow = [big.gen(n + j) for j in range(n)]
    c = len(rows)
    gens = [g.to_ring(big) for g in X.generators] + minors(emb + [urow], c + 1)
    return saturate_by_element(Ideal(big, gens), h.to_ring(big))


def dual_variety(
    X: ProjectiveVariety,
    rng: RandomSource | None = None,
    method: str = "auto",
    target: PolyRing | None = None,
) -> ProjectiveVariety:
    """X^* in the dual projective space.

    ``method``:
      * ``"gauss"``: closure of the image of the affine cone under
        (x, lambda) -> sum lambda_i grad(g_i)(x); exact for hypersurfaces
        and for smooth X, and needs no saturation.
      * ``"conormal"``: eliminate x from the conormal ideal.
      * ``"auto"``: linear X by perp, hypersurfaces by ``gauss``, everything
        else by ``conormal`` (faster than ``gauss`` once there are several
        generators).
    """
    rng = rng or RandomSource(0)
    U = target if target is not None else dual_ring(X.ring)
    if X.is_linear():
        Lp = X.linear_span().perp()
        return ProjectiveVariety(Ideal(U, Lp.cut_forms(U)), "dual")
    if method == "auto":
        method = "gauss" if len(X.generators) == 1 or X.is_hypersurface() else "conormal"
    if method == "gauss":
        J = _gauss_dual(X, rng, U)
    elif method == "conormal":
        K = conormal_variety(X, rng)
        J = eliminate(K, X.ring.nvars)
    else:
        raise ValueError(f"unknown method {method!r}")
    J = Ideal(U, [g.to_ring(U, list(range(U.nvars))) for g in J.generators])
    Xd = ProjectiveVariety(J, "dual")
    return Xd


def _gauss_dual(X: ProjectiveVariety, rng: RandomSource, U: PolyRing) -> Ideal:
    n = X.ring.nvars
    if len(X.generators) == 1 or X.is_hypersurface():
        f = X.defining_polynomial()
        d = f.total_degree()
        big = PolyRing(X.ring.variables + tuple(f"_u{i}" for i in range(n)), X.field)
        fb = f.to_ring(big)
        gens = [fb] + [big.gen(n + i) - fb.derivative(i) for i in range(n)]
        weights = [1] * n + [d - 1] * n
        return eliminate(Ideal(big, gens), n, weights)
    rows, _ = generic_jacobian(X, rng)
    gens_used = list(X.generators)
    c = len(rows)
    if c == len(gens_used):
        degs = [g.total_degree() for g in gens_used]
    else:
        degs = [gens_used[0].total_degree()] * c
        if len({g.total_degree() for g in gens_used}) != 1:
            rows = X.jacobian
            c = len(rows)
            degs = [g.total_degree() for g in gens_used]
    top = max(degs)
    lam = [f"_l{i}" for i in range(c)]
    big = PolyRing(tuple(lam) + X.ring.variables + tuple(f"_u{i}" for i in range(n)), X.field)
    pos = list(range(c, c + n))
    gens = [g.to_ring(big, pos) for g in X.generators]
    for j in range(n):
        acc = big.gen(c + n + j)
        for i in range(c):
            if rows[i][j]:
                acc = acc - big.gen(i) * rows[i][j].to_ring(big, pos)
        gens.append(acc)
    # lambda_i has weight top - deg g_i, shifted so every weight is positive
    weights = [top - d + 1 for d in degs] + [1] * n + [top] * n
    return eliminate(Ideal(big, gens), c + n, weights)
