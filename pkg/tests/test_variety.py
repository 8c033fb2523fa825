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
    SingularPoint,
    conormal_variety,
    dual_variety,
    hilbert_data,
    ideal_equal_up_to_radical,
    multiplicity_at,
    singular_locus,
    tangent_space,
)
from projdual.catalog import (
    conic,
    cubic_scroll,
    nodal_cubic,
    quadric,
    rational_normal_curve,
    twisted_cubic,
    veronese_point,
    veronese_surface,
)
from projdual.linear import rank

from conftest import dual_of, inverse_quadric, random_symmetric, variety

# discriminant of u0 s^3 + u1 s^2 t + u2 s t^2 + u3 t^3 (sympy, computed once)
DISC3 = "-27*u0^2*u3^2 + 18*u0*u1*u2*u3 - 4*u0*u2^3 - 4*u1^3*u3 + u1^2*u2^2"


def test_tangent_line_of_conic():
    T = tangent_space(conic(), PointP((1, 0, 0), QQ))
    assert T == LinearSubspace.from_cut([(0, 0, 1)], 2)


def test_tangent_line_of_twisted_cubic():
    T = tangent_space(twisted_cubic(), PointP((1, 0, 0, 0), QQ))
    assert T == LinearSubspace.from_span([(1, 0, 0, 0), (0, 1, 0, 0)])


def test_tangent_plane_of_veronese():
    V = veronese_surface()
    x = PointP(veronese_point([1, 0, 0]), QQ)
    assert rank(V.jacobian_at(x), QQ) == 3
    assert tangent_space(V, x).dim == 2


def test_tangent_space_errors():
    with pytest.raises(PointNotOnVariety):
        tangent_space(conic(), PointP((1, 1, 0), QQ))
    with pytest.raises(SingularPoint):
        tangent_space(nodal_cubic(), PointP((0, 0, 1), QQ))


def test_singular_loci():
    assert hilbert_data(singular_locus(conic())).is_empty
    S = singular_locus(nodal_cubic())
    assert ideal_equal_up_to_radical(S, Ideal.parse(S.ring, ["x0", "x1"]))
    assert hilbert_data(singular_locus(cubic_scroll())).is_empty


def test_conormal_of_conic_is_bihomogeneous():
    K = conormal_variety(conic())
    for g in K.generators:
        assert g.is_homogeneous([1, 1, 1, 0, 0, 0])
        assert g.is_homogeneous([0, 0, 0, 1, 1, 1])


def test_conormal_rejects_linear():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    with pytest.raises(ValueError):
        conormal_variety(ProjectiveVariety(Ideal.parse(R, ["x2", "x3"])))


def test_dual_of_linear_space():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    D = dual_variety(ProjectiveVariety(Ideal.parse(R, ["x2", "x3"])))
    assert ideal_equal_up_to_radical(D.ideal, Ideal.parse(D.ring, ["u0", "u1"]))


def test_dual_of_conic():
    D = dual_of("conic")
    assert D.generators[0].scale_monic() == D.ring("u1^2 - 4*u0*u2").scale_monic()


def test_dual_of_twisted_cubic_is_discriminant():
    D = dual_of("twisted_cubic")
    assert D.degree == 4 and D.codim == 1
    assert D.defining_polynomial().scale_monic() == D.ring(DISC3).scale_monic()


def test_dual_of_veronese_is_cubic():
    D = dual_of("veronese_surface")
    assert (D.dim, D.degree) == (4, 3)


def test_dual_of_scroll_is_cubic():
    D = dual_of("cubic_scroll")
    assert (D.dim, D.degree) == (3, 3)


@pytest.mark.parametrize("name", ["conic", "twisted_cubic", "cubic_scroll"])
def test_dual_routes_agree(name):
    X = variety(name)
    a = dual_variety(X, RandomSource(1), method="gauss")
    b = dual_variety(X, RandomSource(2), method="conormal")
    assert ideal_equal_up_to_radical(a.ideal, b.ideal)


def test_rational_normal_quartic_dual_degree():
    D = dual_variety(rational_normal_curve(4), RandomSource(0))
    assert (D.codim, D.degree) == (1, 6)


@pytest.mark.parametrize("name", ["conic", "twisted_cubic"])
def test_biduality_small(name):
    X = variety(name)
    B = dual_variety(dual_of(name), RandomSource(5), target=X.ring)
    assert ideal_equal_up_to_radical(B.ideal, X.ideal)


def test_bad_method():
    with pytest.raises(ValueError):
        dual_variety(conic(), method="nope")


def test_non_homogeneous_rejected():
    R = PolyRing(["x", "y"])
    with pytest.raises(ValueError):
        ProjectiveVariety(Ideal.parse(R, ["x - 1"]))


# --- properties -----------------------------------------------------------


@given(st.integers(0, 2**32), st.sampled_from([3, 4]))
def test_quadric_duality(seed, n):
    _check_quadric_dual(random_symmetric(seed, n))


def _check_quadric_dual(A):
    D = dual_variety(quadric(A), RandomSource(0))
    assert ideal_equal_up_to_radical(D.ideal, inverse_quadric(A, D.ring))


@given(st.lists(st.integers(-4, 4), min_size=10, max_size=10), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_multiplicity_one_iff_smooth(c, p):
    # random plane cubic through the point p
    R = PolyRing(["x0", "x1", "x2"])
    monos = [(a, b, 3 - a - b) for a in range(4) for b in range(4 - a)]
    f = R.zero()
    for ci, e in zip(c, monos):
        if ci:
            f = f + R.constant(ci) * R.gen(0) ** e[0] * R.gen(1) ** e[1] * R.gen(2) ** e[2]
    if not any(p):
        return
    val = f.evaluate(tuple(p))
    f = f - R.constant(val) * R.gen(_nz(p)) ** 3 * R.constant(QQ.inv(QQ(p[_nz(p)]) ** 3))
    if not f:
        return
    Z = ProjectiveVariety(Ideal(R, [f]))
    z = PointP(tuple(p), QQ)
    assert Z.contains_point(z)
    assert (multiplicity_at(Z, z) == 1) == (rank(Z.jacobian_at(z), QQ) == 1)


def _nz(p):
    return next(i for i, a in enumerate(p) if a)
