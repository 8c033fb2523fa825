from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from projdual import GF, QQ, PolyRing, PolynomialParseError, jacobian_matrix, parse_polynomial, substitute_linear
from projdual.poly import MonomialOrder

R3 = PolyRing(["x0", "x1", "x2"])
P = 2147483629


def test_parse_two_terms():
    p = parse_polynomial("x0*x2 - x1^2", R3)
    assert len(p.as_dict()) == 2
    assert p.coefficient((0, 2, 0)) == -1


def test_parse_zero():
    assert not parse_polynomial("0", R3)
    assert parse_polynomial("0", R3).as_dict() == {}


def test_parse_reduces_rationals():
    p = parse_polynomial("2/4*x0", R3)
    assert p.coefficient((1, 0, 0)) == Fraction(1, 2)


@pytest.mark.parametrize("text", ["x0 + y", "x0 ^ ^2", "x0 +", "1/0*x1", "x0**"])
def test_parse_errors(text):
    with pytest.raises((PolynomialParseError, ValueError, ZeroDivisionError)):
        parse_polynomial(text, R3)


def test_jacobian_conic():
    J = jacobian_matrix([R3("x0*x2 - x1^2")])
    assert [str(e) for e in J[0]] == ["x2", "-2*x1", "x0"]


def test_jacobian_cube():
    J = jacobian_matrix([R3("x0^3")])
    assert [str(e) for e in J[0]] == ["3*x0^2", "0", "0"]


def test_jacobian_twisted_cubic_shape():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    gens = [R(g) for g in ("x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")]
    J = jacobian_matrix(gens)
    assert len(J) == 3 and all(len(r) == 4 for r in J)
    assert all(e.total_degree() <= 1 for r in J for e in r)


def test_jacobian_empty():
    with pytest.raises(ValueError):
        jacobian_matrix([])


def test_substitute_line():
    S = PolyRing(["s", "t"])
    s, t = S.gens()
    a, b = (1, 2, 3), (0, 1, -1)
    images = [s * ai + t * bi for ai, bi in zip(a, b)]
    q = substitute_linear(R3("x0*x2 - x1^2"), images)
    assert q.is_homogeneous() and q.total_degree() == 2


def test_substitute_identity_and_dehomogenize():
    f = R3("x0*x2 - x1^2")
    assert substitute_linear(f, list(R3.gens())) == f
    x = R3.gens()
    assert substitute_linear(f, [R3.one(), x[1], x[2]]) == R3("x2 - x1^2")


def test_substitute_arity():
    with pytest.raises(ValueError):
        substitute_linear(R3("x0"), [R3("x0")])


def test_orders_differ():
    a, b = (2, 0, 0), (0, 1, 1)
    lex = MonomialOrder.lex().sort_key(3)
    grl = MonomialOrder.grevlex().sort_key(3)
    assert lex(a) > lex(b)
    assert grl(a) > grl(b)
    assert lex((1, 0, 0)) > lex((0, 5, 5))
    assert grl((1, 0, 0)) < grl((0, 5, 5))


# --- properties -----------------------------------------------------------

coeff = st.fractions(min_value=-9, max_value=9, max_denominator=5)
mono = st.tuples(*[st.integers(0, 3)] * 3)


@st.composite
def polys(draw, field=QQ):
    R = PolyRing(["x0", "x1", "x2"], field)
    terms = draw(st.dictionaries(mono, coeff, max_size=5))
    p = R.zero()
    for e, c in terms.items():
        term = R.constant(field(f"{c.numerator}/{c.denominator}"))
        for v, k in zip(R.gens(), e):
            term = term * v**k
        p = p + term
    return p


fields = st.sampled_from([QQ, GF(P), GF(7)])


@given(st.data())
def test_ring_axioms(data):
    F = data.draw(fields)
    p, q, r = (data.draw(polys(F)) for _ in range(3))
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == p.ring.zero()


@given(polys(), polys())
def test_leibniz(p, q):
    (row,) = jacobian_matrix([p * q])
    rp = jacobian_matrix([p])[0] if p else [p.ring.zero()] * 3
    rq = jacobian_matrix([q])[0] if q else [q.ring.zero()] * 3
    assert row == [p * b + q * a for a, b in zip(rp, rq)]


@given(polys(), polys(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_substitution_multiplicative(p, q, c):
    S = PolyRing(["s", "t"])
    s, t = S.gens()
    images = [s * c[2 * i] + t * c[2 * i + 1] for i in range(3)]
    assert substitute_linear(p * q, images) == substitute_linear(p, images) * substitute_linear(q, images)


@given(polys())
def test_canonical_rationals(p):
    for c in p.as_dict().values():
        assert c != 0
        assert c.denominator > 0
        assert Fraction(int(c.numerator), int(c.denominator)) == Fraction(str(c))
    assert parse_polynomial(str(p), p.ring) == p
