"""Secant varieties, Gauss fibres, secant defects and Terracini's lemma."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideal import Ideal, eliminate, hilbert_data, saturate_by_element
from .linear import LinearSubspace, PointP, RandomSource
from .poly import PolyRing, substitute_linear
from .report import VerificationReport
from .sampling import known_points, sample_point
from .variety import (
    ProjectiveVariety,
    SingularPoint,
    dual_variety,
    generic_jacobian,
    tangent_space,
)

__all__ = [
    "secant_variety",
    "secant_dimension",
    "gauss_fiber_dim",
    "SecantProfile",
    "secant_profile",
    "terracini_check",
]


def secant_variety(X: ProjectiveVariety, k: int) -> ProjectiveVariety:
    """S^k(X), closure of the union of k-planes through k+1 points of X.

    Join on affine cones: points a^(0..k-1) on the cone and u with
    u - sum a^(i) on the cone too; the a-blocks are eliminated.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ring = X.ring
    n = ring.nvars
    names = [f"_a{i}_{j}" for i in range(k) for j in range(n)]
    big = PolyRing(tuple(names) + ring.variables, ring.field)
    blocks = [[big.gen(i * n + j) for j in range(n)] for i in range(k)]
    u = [big.gen(k * n + j) for j in range(n)]
    gens = []
    for b in blocks:
        gens += [substitute_linear(g, b) for g in X.generators]
    last = []
    for j in range(n):
        acc = u[j]
        for b in blocks:
            acc = acc - b[j]
        last.append(acc)
    gens += [substitute_linear(g, last) for g in X.generators]
    S = eliminate(Ideal(big, gens), k * n)
    return ProjectiveVariety(Ideal(ring, [g.to_ring(ring) for g in S.generators]), f"S^{k}")


def _span_point(points: list[PointP], rng: RandomSource) -> PointP:
    return LinearSubspace.from_span(points).random_point(rng)


def secant_dimension(X: ProjectiveVariety, k: int, rng: RandomSource, pool=None) -> int:
    """dim S^k(X) by Terracini: rank of the join of k+1 random tangent spaces."""
    pool = pool if pool is not None else known_points(X)
    pts = [sample_point(X, rng, pool=pool) for _ in range(k + 1)]
    spaces = [tangent_space(X, p) for p in pts]
    J = spaces[0]
    for T in spaces[1:]:
        J = J.join(T)
    return J.dim


def gauss_fiber_dim(Z: ProjectiveVariety, z: PointP, rng: RandomSource | None = None) -> int:
    """Dimension of the locus of points of Z sharing the tangent space T_{Z,z}."""
    rng = rng or RandomSource(0)
    T = tangent_space(Z, z)
    rows, h = generic_jacobian(Z, rng)
    ring = Z.ring
    gens = list(Z.generators)
    for r in rows:
        for v in T.span:
            acc = ring.zero()
            for e, c in zip(r, v):
                if c and e:
                    acc = acc + e * c
            if acc:
                gens.append(acc)
    I = saturate_by_element(Ideal(ring, gens), h)
    return hilbert_data(I).proj_dimension


@dataclass
class SecantProfile:
    """ord(X), the secant defects delta_1.., def(X) and dim S^k(X), k >= 1."""

    order: int
    defects: tuple
    dual_defect: int
    secant_dims: tuple
    dual_k_defective: dict = field(default_factory=dict)
    gauss_fibers: dict = field(default_factory=dict)
    secant_dual_defects: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {
            "order": self.order,
            "defects": list(self.defects),
            "dual_defect": self.dual_defect,
            "secant_dims": list(self.secant_dims),
            "dual_k_defective": {str(k): v for k, v in sorted(self.dual_k_defective.items())},
            "gauss_fibers": {str(k): v for k, v in sorted(self.gauss_fibers.items())},
            "secant_dual_defects": {str(k): v for k, v in sorted(self.secant_dual_defects.items())},
        }


def secant_profile(
    X: ProjectiveVariety,
    rng: RandomSource | None = None,
    dual_defectivity: bool = True,
) -> SecantProfile:
    """Secant dimensions (via Terracini), defects and order of X.

    With ``dual_defectivity`` every proper S^k(X) is also computed by
    elimination, and def(S^k) is compared with its Gauss fibre dimension.
    """
    rng = rng or RandomSource(0)
    N = X.ambient_dim
    n = X.dim
    pool = known_points(X)
    dims = [n]
    k = 0
    while dims[-1] < N:
        k += 1
        dims.append(secant_dimension(X, k, rng, pool))
        if k > N + 1:
            raise RuntimeError("secant dimensions failed to reach the ambient space")
    order = len(dims)
    defects = tuple(n + dims[j - 1] + 1 - dims[j] for j in range(1, order))
    Xd = dual_variety(X, rng.split())
    prof = SecantProfile(order, defects, Xd.codim - 1, tuple(dims[1:]))
    if dual_defectivity:
        for j in range(1, order - 1):
            S = secant_variety(X, j)
            Sd = dual_variety(S, rng.split())
            prof.secant_dual_defects[j] = Sd.codim - 1
            u = _span_point([sample_point(X, rng, pool=pool) for _ in range(j + 1)], rng)
            if not S.is_smooth_point(u):
                raise SingularPoint("sampled point of the secant variety is singular")
            t = gauss_fiber_dim(S, u, rng.split())
            prof.gauss_fibers[j] = t
            prof.dual_k_defective[j] = prof.secant_dual_defects[j] > t
    return prof


def terracini_check(X: ProjectiveVariety, k: int, rng: RandomSource | None = None, attempts: int = 5) -> VerificationReport:
    """Join of tangent spaces at k+1 random points versus T_{S^k(X), u}."""
    rng = rng or RandomSource(0)
    report = VerificationReport("terracini", rng.seed)
    pool = known_points(X)
    S = secant_variety(X, k) if k >= 1 else X
    for _ in range(attempts):
        pts = [sample_point(X, rng, pool=pool) for _ in range(k + 1)]
        u = _span_point(pts, rng)
        if S.is_whole_space():
            TS = LinearSubspace.whole(X.ambient_dim, X.field)
        else:
            if not S.contains_point(u) or not S.is_smooth_point(u):
                continue
            TS = tangent_space(S, u)
        J = tangent_space(X, pts[0])
        for p in pts[1:]:
            J = J.join(tangent_space(X, p))
        report.hypothesis("sampled point is smooth on the secant variety", True)
        report.measure("join_dim", J.dim)
        report.measure("secant_tangent_dim", TS.dim)
        report.measure("points", [p.as_json() for p in pts])
        report.measure("u", u.as_json())
        report.conclude(J == TS)
        return report
    report.hypothesis("sampled point is smooth on the secant variety", False)
    report.conclude(False)
    return report


