import pytest

from projdual import (
    QQ,
    Ideal,
    PointP,
    RandomSource,
    gauss_fiber_dim,
    ideal_equal_up_to_radical,
    secant_profile,
    secant_variety,
    terracini_check,
)
from projdual.catalog import conic, quadric, twisted_cubic, veronese_point, veronese_surface
from projdual.secant import secant_dimension
from projdual.sampling import known_points

from conftest import dual_of, variety


def test_veronese_secant_is_determinant_cubic():
    X = veronese_surface()
    S = secant_variety(X, 1)
    assert (S.dim, S.degree) == (4, 3)
    det = Ideal.parse(X.ring, ["x0*x3*x5 + 2*x1*x2*x4 - x0*x4^2 - x1^2*x5 - x2^2*x3"])
    assert ideal_equal_up_to_radical(S.ideal, det)


def test_curves_fill_their_secants():
    assert secant_variety(twisted_cubic(), 1).is_whole_space()
    assert secant_variety(conic(), 1).is_whole_space()


def test_secant_needs_positive_k():
    with pytest.raises(ValueError):
        secant_variety(conic(), 0)


def test_terracini_dimensions():
    rng = RandomSource(1)
    assert secant_dimension(veronese_surface(), 1, rng) == 4
    assert secant_dimension(twisted_cubic(), 1, rng) == 3
    assert secant_dimension(conic(), 0, rng) == 1


def test_gauss_fibres():
    assert gauss_fiber_dim(dual_of("conic"), _point_on(dual_of("conic"))) == 0
    cone = quadric([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]])
    assert gauss_fiber_dim(cone, PointP((1, 0, 1, 5), QQ)) == 1
    X = veronese_surface()
    assert gauss_fiber_dim(X, PointP(veronese_point([1, 2, 3]), QQ)) == 0
    S = secant_variety(X, 1)
    u = PointP([a + b for a, b in zip(veronese_point([1, 2, 3]), veronese_point([1, -1, 1]))], QQ)
    assert gauss_fiber_dim(S, u) == 2


def _point_on(Z):
    return known_points(Z)[0]


@pytest.mark.parametrize("k", [0, 1])
def test_terracini_veronese(k):
    rep = terracini_check(veronese_surface(), k, RandomSource(4))
    assert rep.passed
    assert rep.measurements["join_dim"] == (2 if k == 0 else 4)


def test_terracini_filling_cases():
    assert terracini_check(twisted_cubic(), 1, RandomSource(2)).measurements["join_dim"] == 3
    rep = terracini_check(conic(), 0, RandomSource(2))
    assert rep.passed and rep.measurements["join_dim"] == 1


def test_profile_twisted_cubic():
    p = secant_profile(variety("twisted_cubic"), RandomSource(0))
    assert (p.order, p.defects, p.dual_defect, p.secant_dims) == (2, (0,), 0, (3,))
    assert p.gauss_fibers == {}


def test_profile_veronese():
    p = secant_profile(variety("veronese_surface"), RandomSource(0))
    assert p.order == 3
    assert p.defects == (1, 2)
    assert p.secant_dims == (4, 5)
    assert p.gauss_fibers == {1: 2} and p.secant_dual_defects == {1: 2}
    assert p.dual_k_defective == {1: False}
    # superadditivity delta_k >= delta_{k-1} + delta_1
    assert p.defects[1] >= p.defects[0] + p.defects[0]
    assert p.as_json()["gauss_fibers"] == {"1": 2}
