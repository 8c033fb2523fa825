"""Exact linear algebra, points, linear subspaces and seeded randomness."""

from __future__ import annotations

import random
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Sequence

from .poly import QQ, CoefficientField, PolyRing, Polynomial

__all__ = [
    "rref",
    "rank",
    "kernel",
    "RandomSource",
    "PointP",
    "LinearSubspace",
]


def rref(rows: Sequence[Sequence], F: CoefficientField) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    M = [[F(c) for c in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    p = F.characteristic
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F(c * inv) for c in M[r]] if p else [c * inv for c in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                if p:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
                else:
                    M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], F: CoefficientField = QQ) -> int:
    return len(rref(rows, F)[0])


def kernel(rows: Sequence[Sequence], ncols: int, F: CoefficientField = QQ) -> list[list]:
    """Basis of {v : M v = 0}."""
    R, pivots = rref(rows, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [F.zero] * ncols
        v[fcol] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[fcol])
        basis.append(v)
    return basis


class RandomSource:
    """Seeded stream of height-bounded integers.

    ``split`` derives an independent child stream, so parallel tasks never
    share state.
    """

    def __init__(self, seed: int = 0, height_bound: int = 20):
        if height_bound <= 0:
            raise ValueError("height bound must be positive")
        self.seed = int(seed) & ((1 << 64) - 1)
        self.height_bound = height_bound
        self._rng = random.Random(self.seed)

    def integer(self, nonzero: bool = False) -> int:
        H = self.height_bound
        while True:
            v = self._rng.randint(-H, H)
            if v or not nonzero:
                return v

    def vector(self, n: int) -> list[int]:
        while True:
            v = [self.integer() for _ in range(n)]
            if any(v):
                return v

    def matrix(self, r: int, c: int) -> list[list[int]]:
        return [[self.integer() for _ in range(c)] for _ in range(r)]

    def choice(self, seq):
        return self._rng.choice(seq)

    def split(self) -> "RandomSource":
        return RandomSource(self._rng.getrandbits(64), self.height_bound)

    def prime(self, bits: int = 30) -> int:
        from .poly import is_prime

        while True:
            q = self._rng.getrandbits(bits) | (1 << (bits - 1)) | 1
            if is_prime(q):
                return q

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, height_bound={self.height_bound})"


@dataclass(frozen=True)
class PointP:
    """A point of projective space, scaled so its first nonzero entry is 1."""

    coords: tuple
    field: CoefficientField = QQ

    def __post_init__(self):
        F = self.field
        c = [F(v) for v in self.coords]
        lead = next((v for v in c if v), None)
        if lead is None:
            raise ValueError("a projective point needs a nonzero coordinate")
        inv = F.inv(lead)
        object.__setattr__(self, "coords", tuple(F(v * inv) for v in c))

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def pivot(self) -> int:
        return next(i for i, v in enumerate(self.coords) if v)

    def to_field(self, F: CoefficientField) -> "PointP":
        return PointP(self.coords, F)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def as_json(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class LinearSubspace:
    """A projective linear subspace of P^N, stored as an RREF spanning basis.

    ``dim == -1`` is the empty subspace.  The cutting forms are the kernel of
    the spanning rows; ``perp`` swaps the two descriptions.
    """

    ambient_dim: int
    span: tuple = ()
    field: CoefficientField = QQ
    cut: tuple = dc_field(default=(), compare=False)

    def __post_init__(self):
        n = self.ambient_dim + 1
        for r in self.span:
            if len(r) != n:
                raise ValueError("spanning row has the wrong length")
        R, _ = rref(self.span, self.field)
        object.__setattr__(self, "span", tuple(tuple(r) for r in R))
        K = kernel(R, n, self.field) if R else [
            [self.field.one if i == j else self.field.zero for j in range(n)] for i in range(n)
        ]
        Kr, _ = rref(K, self.field)
        object.__setattr__(self, "cut", tuple(tuple(r) for r in Kr))

    @classmethod
    def from_span(cls, rows, N: int | None = None, F: CoefficientField = QQ) -> "LinearSubspace":
        rows = [tuple(r.coords) if isinstance(r, PointP) else tuple(r) for r in rows]
        if N is None:
            if not rows:
                raise ValueError("ambient dimension needed for an empty span")
            N = len(rows[0]) - 1
        return cls(N, tuple(rows), F)

    @classmethod
    def from_cut(cls, forms, N: int | None = None, F: CoefficientField = QQ) -> "LinearSubspace":
        vecs = []
        for f in forms:
            if isinstance(f, Polynomial):
                vecs.append(linear_form_vector(f))
            else:
                vecs.append(tuple(f))
        if N is None:
            if not vecs:
                raise ValueError("ambient dimension needed for no cutting forms")
            N = len(vecs[0]) - 1
        if not vecs:
            return cls.whole(N, F)
        return cls(N, tuple(tuple(v) for v in kernel(vecs, N + 1, F)), F)

    @classmethod
    def whole(cls, N: int, F: CoefficientField = QQ) -> "LinearSubspace":
        return cls(N, tuple(tuple(int(i == j) for j in range(N + 1)) for i in range(N + 1)), F)

    @classmethod
    def empty(cls, N: int, F: CoefficientField = QQ) -> "LinearSubspace":
        return cls(N, (), F)

    @classmethod
    def point(cls, p: PointP) -> "LinearSubspace":
        return cls(p.ambient_dim, (p.coords,), p.field)

    @property
    def dim(self) -> int:
        return len(self.span) - 1

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def is_empty(self) -> bool:
        return not self.span

    def is_whole(self) -> bool:
        return len(self.span) == self.ambient_dim + 1

    def perp(self) -> "LinearSubspace":
        return LinearSubspace(self.ambient_dim, self.cut, self.field)

    def join(self, other: "LinearSubspace") -> "LinearSubspace":
        self._check(other)
        return LinearSubspace(self.ambient_dim, self.span + other.span, self.field)

    def intersection(self, other: "LinearSubspace") -> "LinearSubspace":
        self._check(other)
        return self.perp().join(other.perp()).perp()

    def contains_point(self, p) -> bool:
        coords = p.coords if isinstance(p, PointP) else p
        F = self.field
        return all(not F(sum(a * F(b) for a, b in zip(row, coords))) for row in self.cut)

    def contains(self, other: "LinearSubspace") -> bool:
        self._check(other)
        return all(self.contains_point(r) for r in other.span)

    def points(self) -> list[PointP]:
        return [PointP(r, self.field) for r in self.span]

    def cut_forms(self, ring: PolyRing) -> list[Polynomial]:
        if ring.nvars != self.ambient_dim + 1:
            raise ValueError("ring arity does not match the ambient space")
        return [linear_form(ring, row) for row in self.cut]

    def random_point(self, rng: RandomSource) -> PointP:
        if self.is_empty():
            raise ValueError("cannot sample a point of the empty subspace")
        if len(self.span) == 1:
            return PointP(self.span[0], self.field)
        while True:
            c = rng.vector(len(self.span))
            v = [sum(ci * r[j] for ci, r in zip(c, self.span)) for j in range(self.ambient_dim + 1)]
            if any(self.field(x) for x in v):
                return PointP(v, self.field)

    def to_field(self, F: CoefficientField) -> "LinearSubspace":
        return LinearSubspace(self.ambient_dim, self.span, F)

    def _check(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def as_json(self) -> dict:
        return {"dim": self.dim, "span": [[str(c) for c in r] for r in self.span]}

    def __str__(self):
        return "span" + "".join("(" + ":".join(map(str, r)) + ")" for r in self.span) if self.span else "empty"


def linear_form(ring: PolyRing, coeffs: Sequence) -> Polynomial:
    n = ring.nvars
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            terms[tuple(int(j == i) for j in range(n))] = c
    return Polynomial(ring, terms)


def linear_form_vector(f: Polynomial) -> tuple:
    if not f.is_homogeneous() or (f and f.total_degree() != 1):
        raise ValueError(f"{f} is not a linear form")
    n = f.ring.nvars
    return tuple(f.coefficient(tuple(int(j == i) for j in range(n))) for i in range(n))


def random_point_on(L: LinearSubspace, rng: RandomSource) -> PointP:
    return L.random_point(rng)


def perp(L: LinearSubspace) -> LinearSubspace:
    return L.perp()


def join(A: LinearSubspace, B: LinearSubspace) -> LinearSubspace:
    return A.join(B)


__all__ += ["linear_form", "linear_form_vector", "random_point_on", "perp", "join"]
