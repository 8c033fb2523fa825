import pytest
from hypothesis import given, strategies as st

from projdual import (
    QQ,
    Ideal,
    LinearSubspace,
    PointNotOnVariety,
    PointP,
    PolyRing,
    ProjectiveVariety,
    RandomSource,
    hilbert_data,
    multiplicity_at,
    multiplicity_stratum,
    polar_variety,
    tangent_cone,
)
from projdual.catalog import conic, cuspidal_cubic, nodal_cubic, quadric, scroll_conic_point, twisted_cubic
from projdual.cones import move_to_origin
from projdual.verify import gram_rank

from conftest import dual_of


def test_nodal_cone_is_two_lines():
    C = tangent_cone(nodal_cubic(), PointP((0, 0, 1), QQ))
    (g,) = C.ideal.generators
    assert g.total_degree() == 2 and C.degree == 2
    assert gram_rank(g) == 2  # two distinct lines


def test_smooth_cone_is_tangent_line():
    C = tangent_cone(conic(), PointP((1, 0, 0), QQ))
    assert [str(g) for g in C.ideal.generators] == ["x2"]


def test_scroll_dual_cone_is_double_hyperplane():
    Z = dual_of("cubic_scroll")
    z = PointP(scroll_conic_point(1, 3), QQ)
    (g,) = tangent_cone(Z, z).ideal.generators
    assert g.total_degree() == 2 and gram_rank(g) == 1


def test_cone_of_curve_in_space():
    X = twisted_cubic()
    C = tangent_cone(X, PointP((1, 1, 1, 1), QQ))
    hd = hilbert_data(C.ideal)
    assert (hd.proj_dimension, hd.degree) == (1, 1)


def test_multiplicities():
    assert multiplicity_at(conic(), PointP((1, 0, 0), QQ)) == 1
    assert multiplicity_at(cuspidal_cubic(), PointP((1, 0, 0), QQ)) == 2
    assert multiplicity_at(nodal_cubic(), PointP((0, 0, 1), QQ)) == 2


def test_scroll_dual_multiplicity_on_Lperp():
    Z = dual_of("cubic_scroll")
    Lp = LinearSubspace.from_cut([(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)], 4)
    for seed in range(3):
        assert multiplicity_at(Z, Lp.random_point(RandomSource(seed))) == 2


def test_point_off_variety():
    with pytest.raises(PointNotOnVariety):
        tangent_cone(conic(), PointP((1, 1, 2), QQ))
    with pytest.raises(PointNotOnVariety):
        multiplicity_at(conic(), PointP((1, 1, 2), QQ))


def test_move_to_origin_is_inverse_pair():
    z = PointP((0, 2, -1, 3), QQ)
    A, Ai = move_to_origin(z)
    n = 4
    prod = [[sum(A[i][k] * Ai[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]
    assert PointP([row[0] for row in A], QQ) == z


def test_polar_of_empty_space():
    Z = quadric([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    assert polar_variety(Z, LinearSubspace.empty(3)) is Z


def test_polar_of_quadric_is_conic():
    Z = quadric([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    P = polar_variety(Z, LinearSubspace.from_span([(1, 2, 3, 4)]))
    assert (P.dim, P.degree) == (1, 2)
    assert P.is_linear() is False
    assert any(g.total_degree() == 1 for g in P.reduced_generators())


def test_polar_of_scroll_dual():
    Z = dual_of("cubic_scroll")
    P = polar_variety(Z, LinearSubspace.from_span([(1, -2, 3, 5, 7)]), RandomSource(2))
    assert Z.dim - P.dim == 1


def test_polar_needs_hypersurface():
    with pytest.raises(ValueError):
        polar_variety(twisted_cubic(), LinearSubspace.from_span([(1, 0, 0, 0)]))


def test_multiplicity_stratum():
    Z = dual_of("cubic_scroll")
    S2 = ProjectiveVariety(multiplicity_stratum(Z, 2))
    S3 = ProjectiveVariety(multiplicity_stratum(Z, 3))
    assert S2.dim == 2
    assert S3.is_empty()


# --- properties -----------------------------------------------------------


@given(st.integers(1, 3), st.lists(st.integers(-3, 3), min_size=10, max_size=10))
def test_cone_degree_matches_multiplicity(m, c):
    # plane curve with a point of multiplicity >= m at (1:0:0)
    R = PolyRing(["x0", "x1", "x2"])
    x0, x1, x2 = R.gens()
    f = R.zero()
    k = 0
    for d in range(m, 4):
        for a in range(d + 1):
            if k < len(c) and c[k]:
                f = f + R.constant(c[k]) * x1**a * x2 ** (d - a) * x0 ** (3 - d)
            k += 1
    if not f:
        return
    Z = ProjectiveVariety(Ideal(R, [f]))
    z = PointP((1, 0, 0), QQ)
    mult = multiplicity_at(Z, z)
    assert mult >= m
    assert tangent_cone(Z, z).degree == mult
    # the cone is the lowest form, hence homogeneous
    assert all(g.is_homogeneous() for g in tangent_cone(Z, z).ideal.generators)
