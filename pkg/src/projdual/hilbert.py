"""Hilbert series of monomial ideals and the data read off from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension and degree of a homogeneous ideal.

    ``proj_dimension == -1`` encodes the empty scheme; ``degree`` is then 0.
    """

    proj_dimension: int
    degree: int

    @property
    def is_empty(self) -> bool:
        return self.proj_dimension < 0

    def as_dict(self) -> dict:
        return {"dim": self.proj_dimension, "degree": self.degree}


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(gens: Sequence[tuple], weights: Sequence[int] | None = None) -> list[int]:
    """Numerator N(t) with HS(S/I) = N(t) / prod(1 - t^w_i).

    Pivot recursion N(I) = N(I + (x)) + t^w N(I : x) on the most frequent
    variable, stopping once the generators have pairwise disjoint supports.
    """
    gens = [tuple(g) for g in gens]
    n = len(gens[0]) if gens else 0
    w = list(weights) if weights is not None else [1] * n
    memo: dict = {}

    def deg(m):
        return sum(a * b for a, b in zip(m, w))

    def rec(G: tuple) -> list[int]:
        hit = memo.get(G)
        if hit is not None:
            return hit
        if not G:
            return [1]
        if any(not any(g) for g in G):
            return [0]
        support_count = [0] * n
        clash = False
        used = [False] * n
        for g in G:
            for i, a in enumerate(g):
                if a:
                    support_count[i] += 1
                    if used[i]:
                        clash = True
            for i, a in enumerate(g):
                if a:
                    used[i] = True
        if not clash:
            out = [1]
            for g in G:
                d = deg(g)
                f = [0] * (d + 1)
                f[0], f[d] = 1, -1
                out = _poly_mul(out, f)
            memo[G] = out
            return out
        x = max(range(n), key=lambda i: support_count[i])
        unit = tuple(int(i == x) for i in range(n))
        plus = _minimalize([g for g in G if not g[x]] + [unit])
        colon = _minimalize([tuple(a - (i == x and a > 0) for i, a in enumerate(g)) for g in G])
        a = rec(tuple(plus))
        b = rec(tuple(colon))
        out = _poly_add(a, [0] * w[x] + b)
        memo[G] = out
        return out

    return rec(tuple(_minimalize(gens)))


def _strip(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def reduced_numerator(gens: Sequence[tuple], nvars: int) -> tuple[list[int], int]:
    """Return (Q, d) with HS = Q(t)/(1-t)^d and Q(1) != 0 (standard grading).

    An ideal containing a power of every variable gives d = 0.
    """
    num = _strip(hilbert_numerator(gens)) if gens else [1]
    if num == [0]:
        return [0], 0
    d = nvars
    while d > 0 and sum(num) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _strip(q) if q else [0]
        d -= 1
    return num, d


def hilbert_data_from_monomials(gens: Sequence[tuple], nvars: int) -> HilbertData:
    num, d = reduced_numerator(gens, nvars)
    if num == [0]:
        return HilbertData(-1, 0)
    if d == 0:
        return HilbertData(-1, 0)
    return HilbertData(d - 1, sum(num))


def hilbert_polynomial_from_monomials(gens: Sequence[tuple], nvars: int) -> list[Fraction]:
    """Coefficients (constant first) of the Hilbert polynomial in s."""
    num, d = reduced_numerator(gens, nvars)
    if num == [0] or d == 0:
        return []
    # HP(s) = sum_j q_j * C(s - j + d - 1, d - 1)
    k = d - 1
    coeffs = [Fraction(0)] * (k + 1)
    for j, q in enumerate(num):
        if not q:
            continue
        # C(s - j + k, k) = prod_{i=1..k} (s - j + i) / k!
        poly = [Fraction(1)]
        for i in range(1, k + 1):
            poly = _frac_mul(poly, [Fraction(i - j), Fraction(1)])
        scale = Fraction(q, _fact(k))
        for i, c in enumerate(poly):
            coeffs[i] += scale * c
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def hilbert_function_value(gens: Sequence[tuple], nvars: int, s: int) -> int:
    """dim_k (S/I)_s by counting standard monomials (small s only)."""
    gens = _minimalize([tuple(g) for g in gens])
    count = 0

    def rec(i: int, left: int, prefix: list):
        nonlocal count
        if i == nvars - 1:
            m = prefix + [left]
            if not any(all(a <= b for a, b in zip(g, m)) for g in gens):
                count += 1
            return
        for a in range(left + 1):
            rec(i + 1, left - a, prefix + [a])

    rec(0, s, [])
    return count


__all__ = [
    "HilbertData",
    "hilbert_numerator",
    "reduced_numerator",
    "hilbert_data_from_monomials",
    "hilbert_polynomial_from_monomials",
    "hilbert_function_value",
]
