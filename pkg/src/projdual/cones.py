"""Tangent cones, multiplicities, polar varieties and multiplicity strata."""

from __future__ import annotations

from dataclasses import dataclass
from .ideal import Ideal, hilbert_data, initial_forms_at_origin, saturate_by_element
from .linear import LinearSubspace, PointP, RandomSource, rref
from .poly import PolyRing, Polynomial, substitute_linear
from .variety import PointNotOnVariety, ProjectiveVariety

__all__ = [
    "TangentCone",
    "tangent_cone",
    "multiplicity_at",
    "polar_variety",
    "multiplicity_stratum",
    "move_to_origin",
]


@dataclass(frozen=True)
class TangentCone:
    """C_z(Z): ``moved`` is the cone with z at (1:0:...:0) after x = A y;
    ``ideal`` is the same cone in the original coordinates."""

    moved: Ideal
    ideal: Ideal
    matrix: tuple

    @property
    def variety(self) -> ProjectiveVariety:
        return ProjectiveVariety(self.ideal, "tangent cone")

    @property
    def degree(self) -> int:
        return hilbert_data(self.moved).degree


def move_to_origin(z: PointP) -> tuple[list[list], list[list]]:
    """Matrix A with A e_0 = z (columns z and e_j, j != pivot) and its inverse."""
    n = len(z)
    p = z.pivot()
    cols = [list(z.coords)] + [[int(i == j) for i in range(n)] for j in range(n) if j != p]
    A = [[cols[c][r] for c in range(n)] for r in range(n)]
    F = z.field
    aug = [A[r] + [int(r == k) for k in range(n)] for r in range(n)]
    R, _ = rref(aug, F)
    Ainv = [row[n:] for row in R]
    return A, Ainv


def _apply(I: Ideal, M: list[list], ring: PolyRing) -> Ideal:
    """Substitute x = M y into the generators (y written in ``ring``)."""
    y = ring.gens()
    n = ring.nvars
    images = []
    for r in range(n):
        acc = ring.zero()
        for c in range(n):
            if M[r][c]:
                acc = acc + y[c] * M[r][c]
        images.append(acc)
    return Ideal(ring, [substitute_linear(g, images) for g in I.generators])


def tangent_cone(Z: ProjectiveVariety, z: PointP) -> TangentCone:
    """Embedded tangent cone of Z at z via initial forms in the chart at z."""
    if not Z.contains_point(z):
        raise PointNotOnVariety(f"{z} is not on the variety")
    ring = Z.ring
    A, Ainv = move_to_origin(z)
    moved = _apply(Z.ideal, A, ring)
    aff = PolyRing(ring.variables[1:], ring.field)
    local = Ideal(aff, [Polynomial(aff, _dehom(g)) for g in moved.generators])
    cone_aff = initial_forms_at_origin(local)
    cone_moved = Ideal(ring, [g.to_ring(ring) for g in cone_aff.generators])
    back = _apply(cone_moved, Ainv, ring)
    return TangentCone(cone_moved, back, tuple(map(tuple, A)))


def _dehom(g: Polynomial) -> dict:
    out: dict = {}
    for e, c in g.as_dict().items():
        t = e[1:]
        out[t] = out.get(t, 0) + c
    return out


def multiplicity_at(Z: ProjectiveVariety, z: PointP) -> int:
    """Hilbert-Samuel multiplicity of Z at z (degree of the tangent cone).

    A principal ideal takes the shortcut through the order of vanishing.
    """
    if not Z.contains_point(z):
        raise PointNotOnVariety(f"{z} is not on the variety")
    if len(Z.generators) == 1:
        A, _ = move_to_origin(z)
        g = _apply(Z.ideal, A, Z.ring).generators[0]
        return min(sum(e[1:]) for e in g.as_dict())
    return tangent_cone(Z, z).degree


def polar_variety(Z: ProjectiveVariety, D: LinearSubspace, rng: RandomSource | None = None) -> ProjectiveVariety:
    """P(Z, D) for a hypersurface Z = V(f).

    (f) plus the directional derivatives along the spanning points of D,
    saturated by a generic combination of the partials of f (which cuts
    out the singular locus of Z together with a proper section of Z).
    """
    if D.is_empty():
        return Z
    if D.ambient_dim != Z.ambient_dim:
        raise ValueError("D lives in a different ambient space")
    f = _hypersurface_equation(Z)
    rng = rng or RandomSource(0)
    ring = Z.ring
    grad = f.gradient()
    gens = [f]
    for u in D.span:
        acc = ring.zero()
        for c, d in zip(u, grad):
            if c and d:
                acc = acc + d * c
        gens.append(acc)
    r = rng.vector(ring.nvars)
    h = ring.zero()
    for c, d in zip(r, grad):
        if c and d:
            h = h + d * c
    ideal = saturate_by_element(Ideal(ring, gens), h)
    return ProjectiveVariety(ideal, "polar variety")


def _hypersurface_equation(Z: ProjectiveVariety) -> Polynomial:
    try:
        f = Z.defining_polynomial()
    except ValueError:
        raise ValueError("polar varieties are defined here for hypersurfaces only") from None
    if f.total_degree() < 1:
        raise ValueError("polar varieties are defined here for hypersurfaces only")
    return f


def multiplicity_stratum(Z: ProjectiveVariety, m: int) -> Ideal:
    """Points of multiplicity >= m on the hypersurface Z: all partials of
    the equation of order <= m - 1."""
    f = _hypersurface_equation(Z)
    if m < 1:
        raise ValueError("multiplicity must be positive")
    n = Z.ring.nvars
    gens = [f]
    layer = {f}
    for _ in range(m - 1):
        nxt = set()
        for g in layer:
            for i in range(n):
                d = g.derivative(i)
                if d:
                    nxt.add(d)
        gens.extend(sorted(nxt, key=str))
        layer = nxt
    return Ideal(Z.ring, gens)

