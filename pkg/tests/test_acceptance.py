"""Acceptance criteria 1-12, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line with the wall
time against its cap, and fails if any check or the cap fails.
Run alone with ``pytest -v tests/test_acceptance.py``.
"""

import io
import json
import time
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from projdual import (
    QQ,
    Ideal,
    LinearSubspace,
    PointP,
    PolyRing,
    Polynomial,
    RandomSource,
    classify_mult2_tangency,
    contact_locus,
    dual_variety,
    flat_limit,
    hilbert_data,
    hilbert_polynomial,
    ideal_equal_up_to_radical,
    multiplicity_at,
    multiplicity_stratum,
    sample_point,
    secant_profile,
    tangent_space,
    terracini_check,
    verify_cone_duality_bidual,
    verify_main_theorem,
    verify_polar_properties,
    verify_secant_dual_inclusion,
    verify_superadditivity_and_codegree,
)
from projdual.catalog import (
    cubic_scroll,
    quadric,
    scroll_conic_point,
    scroll_directrix,
    twisted_cubic,
    veronese_point,
    veronese_surface,
)
from projdual.cli import EXIT_VERDICT, run_command
from projdual.sampling import known_points

from conftest import dual_of, inverse_quadric, random_symmetric, variety

CORPUS = Path(__file__).parent / "corpus"


class Criterion:
    """Collects named checks and the elapsed time for one criterion."""

    def __init__(self, number, title, cap):
        self.number, self.title, self.cap = number, title, cap
        self.checks = {}
        self.start = time.perf_counter()

    def check(self, name, ok):
        self.checks[name] = bool(ok)

    def finish(self, capsys):
        elapsed = time.perf_counter() - self.start
        in_time = elapsed <= self.cap
        ok = in_time and all(self.checks.values())
        failed = [k for k, v in self.checks.items() if not v] + ([] if in_time else ["time cap"])
        line = f"criterion {self.number:2d}: {'PASS' if ok else 'FAIL'}  {self.title} ({elapsed:.1f}s / {self.cap}s)"
        if failed:
            line += "  failed: " + ", ".join(failed)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line


def test_criterion_01_quadric_duality(capsys):
    c = Criterion(1, "quadric duality, 5 matrices each in P^2 and P^3", cap=5 * 10)
    for n in (3, 4):
        for seed in range(5):
            A = random_symmetric(1000 + seed, n)
            t0 = time.perf_counter()
            D = dual_variety(quadric(A), RandomSource(seed))
            ok = ideal_equal_up_to_radical(D.ideal, inverse_quadric(A, D.ring))
            c.check(f"P^{n - 1} seed {seed}", ok and time.perf_counter() - t0 < 5)
    c.finish(capsys)


def test_criterion_02_biduality(capsys):
    c = Criterion(2, "biduality for conic, twisted cubic, Veronese surface", cap=3 * 180)
    for name in ("conic", "twisted_cubic", "veronese_surface"):
        X = variety(name)
        t0 = time.perf_counter()
        Xd = dual_variety(X, RandomSource(0))
        B = dual_variety(Xd, RandomSource(1), target=X.ring)
        c.check(name, ideal_equal_up_to_radical(B.ideal, X.ideal) and time.perf_counter() - t0 < 180)
    c.finish(capsys)


def test_criterion_03_scroll_dual(capsys):
    c = Criterion(3, "cubic scroll: dual cubic, mult 2 on L^perp, no triple points", cap=120)
    X = cubic_scroll()
    Z = dual_variety(X, RandomSource(0))
    c.check("deg X^* = 3", Z.codim == 1 and Z.degree == 3)
    Lp = scroll_directrix().perp()
    c.check("mult 2 on L^perp", multiplicity_at(Z, Lp.random_point(RandomSource(7))) == 2)
    c.check("X^*_3 empty", hilbert_data(multiplicity_stratum(Z, 3)).is_empty)
    c.finish(capsys)


def test_criterion_04_main_theorem_negative(capsys):
    c = Criterion(4, "main theorem on the scroll: hypotheses violated, m0 = m1 = 2", cap=180)
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run_command(["verify", "main-theorem", str(CORPUS / "scroll.var"), "--space", "L", "--seed", "0"])
    out = json.loads(buf.getvalue())
    m = out["measurements"]
    c.check("exit code", code == EXIT_VERDICT)
    c.check("verdict", out["verdict"] == "hypotheses_violated")
    c.check("shadow covers", m["shadow_covers"] is True)
    c.check("m0 = m1 = 2", m["m0"] == 2 and m["m1"] == 2)
    c.finish(capsys)


def test_criterion_05_main_theorem_positive(capsys):
    c = Criterion(5, "main theorem on the Veronese surface: m0 = 1, m1 = 2, pass", cap=180)
    X = veronese_surface()
    L = tangent_space(X, PointP(veronese_point([1, 2, 3]), QQ))
    rep = verify_main_theorem(X, L, RandomSource(0))
    m = rep.measurements
    c.check("hypotheses hold", rep.hypotheses_hold and m["shadow_covers"] is False)
    c.check("m0 = 1", m["m0"] == 1)
    c.check("m1 = 2", m["m1"] == 2)
    c.check("verdict pass", rep.verdict == "pass")
    c.finish(capsys)


def test_criterion_06_contact_of_tangent_space(capsys):
    c = Criterion(6, "contact locus of T_x is {x} on twisted cubic and Veronese", cap=2 * 120)
    for X in (twisted_cubic(), veronese_surface()):
        rng = RandomSource(6)
        x = sample_point(X, rng, pool=known_points(X))
        E = contact_locus(X, tangent_space(X, x), rng)
        point = Ideal(X.ring, LinearSubspace.from_span([x.coords]).cut_forms(X.ring))
        c.check(X.name, ideal_equal_up_to_radical(E, point))
    c.finish(capsys)


def test_criterion_07_secant_dual(capsys):
    c = Criterion(7, "S^1(v2)^* equals the double-point stratum of X^*", cap=300)
    rep = verify_secant_dual_inclusion(veronese_surface(), 1, RandomSource(0))
    c.check("contained", rep.measurements.get("contained") is True)
    c.check("equal", rep.measurements.get("equal") is True)
    c.check("verdict pass", rep.passed)
    c.finish(capsys)


def test_criterion_08_terracini(capsys):
    c = Criterion(8, "Terracini for (v2, k=1) and (twisted cubic, k=1)", cap=120)
    for X in (veronese_surface(), twisted_cubic()):
        rep = terracini_check(X, 1, RandomSource(8))
        c.check(X.name, rep.passed)
    c.finish(capsys)


def test_criterion_09_polar_properties(capsys):
    c = Criterion(9, "polar codimensions and mult <= 2 on four duals", cap=600)
    for name in ("conic", "twisted_cubic", "veronese_surface", "cubic_scroll"):
        rep = verify_polar_properties(dual_of(name), RandomSource(9), trials=3)
        c.check(f"{name} (a)", rep.measurements.get("a") is True)
        c.check(f"{name} (b)", rep.measurements.get("b") is True)
        c.check(f"{name} verdict", rep.passed)
    c.finish(capsys)


def test_criterion_10_trichotomy(capsys):
    c = Criterion(10, "tangency trichotomy and cone duality", cap=2 * 300)
    v = classify_mult2_tangency(veronese_surface(), (1, 4, -2, 4, -4, 1), RandomSource(0), Xd=dual_of("veronese_surface"))
    c.check("Veronese: hyperquadric", v.case == "irreducible_hyperquadric")
    c.check("Veronese: cone dual equal", v.cone_dual_equal is True)
    s = classify_mult2_tangency(cubic_scroll(), scroll_conic_point(1, 4), RandomSource(0), Xd=dual_of("cubic_scroll"))
    c.check("scroll: line with embedded point", s.case == "linear_with_embedded")
    z = PointP(scroll_conic_point(1, 4), QQ)
    rep = verify_cone_duality_bidual(dual_of("cubic_scroll"), z, cubic_scroll(), RandomSource(0))
    c.check("embedded point is the cone dual", rep.measurements.get("embedded_is_cone_dual") is True)
    c.check("cone duality verdict", rep.passed)
    c.finish(capsys)


def test_criterion_11_profile_and_codegree(capsys):
    c = Criterion(11, "Veronese profile (3, (1, 2)), codegree bounds", cap=300)
    p = secant_profile(variety("veronese_surface"), RandomSource(0))
    c.check("order 3", p.order == 3)
    c.check("defects (1, 2)", p.defects == (1, 2))
    rep = verify_superadditivity_and_codegree(veronese_surface(), RandomSource(0))
    c.check("superadditivity equality", rep.measurements.get("superadditive_equality") is True)
    c.check("deg X^* = 3 >= ord", rep.measurements.get("dual_degree") == 3 and rep.measurements.get("codegree_bound") is True)
    c.check("twisted cubic deg X^* = 4", dual_of("twisted_cubic").degree == 4)
    c.finish(capsys)


def _generic_fiber(F, t, value):
    ring = F.ring
    ti = ring.index(t)
    rest = PolyRing([v for v in ring.variables if v != t], ring.field)
    gens = []
    for g in F.generators:
        h = g.partial_substitute({ti: ring.field(value)})
        terms = {}
        for e, coeff in h.as_dict().items():
            key = e[:ti] + e[ti + 1 :]
            terms[key] = terms.get(key, 0) + coeff
        gens.append(Polynomial(rest, {e: v for e, v in terms.items() if v}))
    return Ideal(rest, gens)


def _families(rng):
    a, b = (rng.integer(nonzero=True) for _ in range(2))
    R = PolyRing(["t", "x0", "x1"])
    t, x0, x1 = R.gens()
    # two points of P^1 colliding at (1:0)
    yield "colliding points", Ideal(R, [(x1 - t * a * x0) * (x1 + t * b * x0)])
    S = PolyRing(["t", "x0", "x1", "x2"])
    t, x0, x1, x2 = S.gens()
    # conic cut by the secant through (1:0:0) and (1:at:a^2t^2), tending to the tangent
    yield "secant to tangent", Ideal(S, [x0 * x2 - x1**2, x2 - t * a * x1])
    # two points of P^2 colliding along a line, as an intersection of point ideals
    yield "two-point intersection", Ideal(S, [x2 - b * x1, x1 * (x1 - t * a * x0)])


def test_criterion_12_flat_limits(capsys):
    c = Criterion(12, "flat limits keep the Hilbert polynomial of the generic fibre", cap=60)
    rng = RandomSource(12)
    for name, F in _families(rng):
        generic = hilbert_polynomial(_generic_fiber(F, "t", rng.integer(nonzero=True)))
        limit = hilbert_polynomial(flat_limit(F, "t"))
        c.check(name, generic == limit)
    c.finish(capsys)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
