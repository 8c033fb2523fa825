import functools

import pytest
from hypothesis import HealthCheck, settings

import sympy

from projdual import QQ, Ideal, RandomSource, dual_variety
from projdual import catalog
from projdual.linear import rank

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def variety(name):
    return getattr(catalog, name)()


@functools.lru_cache(maxsize=None)
def dual_of(name):
    return dual_variety(variety(name), RandomSource(0))


@pytest.fixture
def rng():
    return RandomSource(12345)


def random_symmetric(seed, n):
    """Seeded invertible symmetric integer matrix."""
    rng = RandomSource(seed, height_bound=4)
    while True:
        M = rng.matrix(n, n)
        A = [[M[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
        if rank(A, QQ) == n:
            return A


def inverse_quadric(A, U):
    """Ideal of u^T A^-1 u in the ring U, with the inverse taken by sympy."""
    n = len(A)
    Ai = sympy.Matrix(A).inv()
    u = U.gens()
    q = U.zero()
    for i in range(n):
        for j in range(n):
            c = sympy.Rational(Ai[i, j])
            if c:
                q = q + u[i] * u[j] * U.field(f"{c.p}/{c.q}")
    return Ideal(U, [q])
