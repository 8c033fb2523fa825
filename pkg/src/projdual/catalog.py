"""Standard test varieties."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence

from .ideal import Ideal
from .poly import QQ, PolyRing, Polynomial, minors
from .variety import ProjectiveVariety


def _ring(n: int, F=QQ, stem: str = "x") -> PolyRing:
    return PolyRing([f"{stem}{i}" for i in range(n)], F)


def quadric(A: Sequence[Sequence], F=QQ) -> ProjectiveVariety:
    """V(x^T A x) for a symmetric matrix A."""
    n = len(A)
    R = _ring(n, F)
    x = R.gens()
    q = R.zero()
    for i in range(n):
        for j in range(n):
            if A[i][j]:
                q = q + x[i] * x[j] * A[i][j]
    return ProjectiveVariety(Ideal(R, [q]), "quadric")


def conic(F=QQ) -> ProjectiveVariety:
    R = _ring(3, F)
    return ProjectiveVariety(Ideal.parse(R, ["x0*x2 - x1^2"]), "conic")


def rational_normal_curve(d: int, F=QQ) -> ProjectiveVariety:
    """2x2 minors of [[x0..x_{d-1}], [x1..x_d]]."""
    R = _ring(d + 1, F)
    x = R.gens()
    M = [x[:d], x[1:]]
    return ProjectiveVariety(Ideal(R, minors(M, 2)), f"rational normal curve of degree {d}")


def twisted_cubic(F=QQ) -> ProjectiveVariety:
    R = _ring(4, F)
    return ProjectiveVariety(
        Ideal.parse(R, ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]), "twisted cubic"
    )


def veronese_surface(F=QQ) -> ProjectiveVariety:
    """v_2(P^2) in P^5: 2x2 minors of the generic symmetric 3x3 matrix.

    Coordinates are x0..x5 = a00, a01, a02, a11, a12, a22; the point
    [s_i s_j] is the image of (s0:s1:s2).
    """
    R = _ring(6, F)
    S = symmetric_matrix(R.gens(), 3)
    return ProjectiveVariety(Ideal(R, minors(S, 2)), "veronese surface")


def symmetric_matrix(entries: Sequence[Polynomial], n: int) -> list[list[Polynomial]]:
    idx = {}
    k = 0
    for i in range(n):
        for j in range(i, n):
            idx[(i, j)] = idx[(j, i)] = k
            k += 1
    return [[entries[idx[(i, j)]] for j in range(n)] for i in range(n)]


def veronese_point(s: Sequence) -> list:
    return [a * b for a, b in combinations_with_replacement(list(s), 2)]


def veronese_tangent_hyperplane(a: Sequence) -> list:
    """Dual coordinates of the rank-one hyperplane (a . s)^2 = 0 on v_2(P^2).

    Off-diagonal coordinates carry the factor 2 of the pairing sum u_i x_i.
    """
    out = []
    for i, j in combinations_with_replacement(range(len(a)), 2):
        out.append(a[i] * a[j] * (1 if i == j else 2))
    return out


def rnc_bitangent_hyperplane(roots: Sequence, d: int = 4) -> list:
    """Dual coordinates of the binary form prod (s - r t)^2, a hyperplane
    tangent to the rational normal curve of degree d at every root."""
    coeffs = [1]
    for r in roots:
        for _ in range(2):
            nxt = [0] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k] += c
                nxt[k + 1] -= r * c
            coeffs = nxt
    if len(coeffs) != d + 1:
        raise ValueError("need d/2 roots")
    return coeffs


def cubic_scroll(F=QQ) -> ProjectiveVariety:
    """S(1,2) in P^4: 2x2 minors of [[x0, x1, x3], [x1, x2, x4]].

    The directrix line is V(x0, x1, x2) and the conic part lives in x3 = x4 = 0.
    """
    R = _ring(5, F)
    x = R.gens()
    M = [[x[0], x[1], x[3]], [x[1], x[2], x[4]]]
    return ProjectiveVariety(Ideal(R, minors(M, 2)), "cubic scroll")


def scroll_directrix(F=QQ):
    from .linear import LinearSubspace

    return LinearSubspace.from_span([(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)], 4, F)


def scroll_conic_point(s, t) -> list:
    """Point of the conic C = V(u1^2 - 4 u0 u2, u3, u4) of the dual scroll."""
    return [s * s, 2 * s * t, t * t, 0, 0]


def nodal_cubic(F=QQ) -> ProjectiveVariety:
    R = _ring(3, F)
    return ProjectiveVariety(Ideal.parse(R, ["x2*x1^2 - x0^3 - x0^2*x2"]), "nodal cubic")


def cuspidal_cubic(F=QQ) -> ProjectiveVariety:
    R = _ring(3, F)
    return ProjectiveVariety(Ideal.parse(R, ["x0*x2^2 - x1^3"]), "cuspidal cubic")


__all__ = [
    "quadric",
    "conic",
    "rational_normal_curve",
    "twisted_cubic",
    "veronese_surface",
    "symmetric_matrix",
    "veronese_point",
    "veronese_tangent_hyperplane",
    "rnc_bitangent_hyperplane",
    "cubic_scroll",
    "scroll_conic_point",
    "scroll_directrix",
    "nodal_cubic",
    "cuspidal_cubic",
]
