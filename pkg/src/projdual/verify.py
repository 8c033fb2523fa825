"""Instance checks of the multiplicity inequality and its companion statements."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .contact import shadow_covers, tangency_scheme
from .cones import multiplicity_at, multiplicity_stratum, polar_variety, tangent_cone
from .groebner import BudgetExhausted
from .hilbert import HilbertData
from .ideal import (
    Ideal,
    groebner_basis,
    hilbert_data,
    hilbert_polynomial,
    ideal_equal_up_to_radical,
    intersect,
    quotient,
    radical_contains,
    saturate,
    saturate_by_element,
)
from .linear import LinearSubspace, PointP, RandomSource, linear_form, rank
from .poly import Polynomial
from .report import VerificationReport
from .sampling import SamplingError, known_points, sample_point
from .secant import secant_profile, secant_variety
from .variety import ProjectiveVariety, dual_variety, tangent_space

log = logging.getLogger(__name__)

__all__ = [
    "TangencyClass",
    "TrichotomyViolation",
    "verify_main_theorem",
    "verify_secant_dual_inclusion",
    "classify_mult2_tangency",
    "verify_polar_properties",
    "verify_cone_duality_bidual",
    "verify_superadditivity_and_codegree",
    "reduced_cone",
]

CASES = ("irreducible_hyperquadric", "two_linear_spaces", "linear_with_embedded")


class TrichotomyViolation(RuntimeError):
    """A multiplicity-two tangency scheme matching none of the three cases."""


def _hypersurface_dual(X: ProjectiveVariety, rng: RandomSource) -> ProjectiveVariety:
    Xd = dual_variety(X, rng)
    if Xd.codim != 1:
        raise ValueError(f"the dual variety has codimension {Xd.codim}; slice X first")
    return Xd


# --------------------------------------------------------------------------
# multiplicity inequality


def verify_main_theorem(
    X: ProjectiveVariety,
    L: LinearSubspace,
    rng: RandomSource | None = None,
    trials: int = 3,
) -> VerificationReport:
    """mult of X^* at a general hyperplane containing <L, T_x> versus at a
    general hyperplane containing L, for x outside the shadow of L."""
    rng = rng or RandomSource(0)
    report = VerificationReport("main-theorem", rng.seed)
    try:
        _main_theorem(X, L, rng, trials, report)
    except BudgetExhausted as exc:
        report.measure("budget", str(exc))
        report.verdict = "budget_exhausted"
    return report


def _main_theorem(X, L, rng, trials, report):
    Xd = _hypersurface_dual(X, rng.split())
    report.measure("dual_degree", Xd.degree)
    sh = shadow_covers(X, L, rng.split(), trials)
    report.measure("shadow_covers", sh.covers)
    report.measure("shadow_sample", sh.points)
    report.hypothesis("shadow of L is not all of X", not sh.covers)
    x = sh.witness if sh.witness is not None else sh.points[-1]
    report.measure("x", x)
    J = L.join(tangent_space(X, x))
    report.measure("span_dim", J.dim)
    report.hypothesis("<L, T_x> is not the whole space", not J.is_whole())

    h0 = L.perp().random_point(rng)
    on = Xd.contains_point(h0)
    m0 = multiplicity_at(Xd, h0) if on else 0
    report.measure("h0", h0)
    report.measure("m0", m0)
    if J.is_whole():
        report.measure("m1", None)
        report.conclude(False)
        return
    h1 = J.perp().random_point(rng)
    m1 = multiplicity_at(Xd, h1)
    report.measure("h1", h1)
    report.measure("m1", m1)
    report.measure("equality", m1 == m0)
    report.conclude(m1 > m0)


# --------------------------------------------------------------------------
# duals of secant varieties


def verify_secant_dual_inclusion(
    X: ProjectiveVariety, k: int, rng: RandomSource | None = None
) -> VerificationReport:
    """S^k(X)^* lies in the locus of points of multiplicity >= k+1 on X^*."""
    rng = rng or RandomSource(0)
    report = VerificationReport("secant-dual", rng.seed)
    report.measure("k", k)
    if k == 0:
        report.hypothesis("k = 0 is the definition of X^*", True)
        report.conclude(True)
        return report
    try:
        report.hypothesis("X is smooth", X.is_smooth())
        prof = secant_profile(X, rng.split(), dual_defectivity=k > 1)
        report.measure("secant_dims", list(prof.secant_dims))
        report.hypothesis(f"S^{k}(X) is not the whole space", k < prof.order - 1)
        for j in range(1, k):
            report.hypothesis(f"X is not dual {j}-defective", not prof.dual_k_defective.get(j, False))
        if k >= prof.order - 1:
            report.conclude(False)
            return report
        Xd = _hypersurface_dual(X, rng.split())
        S = secant_variety(X, k)
        Sd = dual_variety(S, rng.split(), target=Xd.ring)
        stratum = multiplicity_stratum(Xd, k + 1)
        report.measure("secant_dual", Sd.ideal)
        report.measure("secant_dual_hilbert", Sd.hilbert.as_dict())
        report.measure("stratum_hilbert", hilbert_data(stratum).as_dict())
        contained = radical_contains(Sd.ideal, stratum)
        report.measure("contained", contained)
        report.measure("equal", contained and radical_contains(stratum, Sd.ideal))
        report.conclude(contained)
    except BudgetExhausted as exc:
        report.measure("budget", str(exc))
        report.verdict = "budget_exhausted"
    return report


# --------------------------------------------------------------------------
# tangency loci of multiplicity-two hyperplanes


@dataclass
class TangencyClass:
    """Which of the three shapes the tangency scheme of H takes."""

    case: str
    scheme: Ideal
    hilbert: HilbertData
    witness: dict = field(default_factory=dict)
    cone_dual_equal: bool | None = None

    @property
    def components(self) -> int:
        """Components counted as in the polar multiplicity bound (embedded ones too)."""
        return 1 if self.case == "irreducible_hyperquadric" else 2

    def as_json(self) -> dict:
        from .report import summarize

        return {
            "case": self.case,
            "scheme": self.scheme.summary(),
            "hilbert": self.hilbert.as_dict(),
            "witness": summarize(self.witness),
            "cone_dual_equal": self.cone_dual_equal,
        }


def gram_rank(q: Polynomial) -> int:
    """Rank of the symmetric matrix of a quadratic form."""
    ring = q.ring
    n = ring.nvars
    F = ring.field
    M = [[F.zero] * n for _ in range(n)]
    half = F.inv(F(2))
    for e, c in q.as_dict().items():
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        i, j = idx
        if i == j:
            M[i][i] = c
        else:
            M[i][j] = M[j][i] = c * half
    return rank(M, F)


def _parametrize(T: Ideal, span: LinearSubspace):
    """Pull T back to the projective space of ``span``."""
    from .sampling import restrict_to_span
    from .variety import ProjectiveVariety as PV

    return restrict_to_span(PV(T), [list(r) for r in span.span])


def _quadric_shape(T: Ideal):
    """(span, restricted quadric) if T is a linear space cut by one quadric."""
    G = groebner_basis(T).elements
    lin = [g for g in G if g.total_degree() == 1]
    rest = [g for g in G if g.total_degree() != 1]
    if len(rest) != 1 or rest[0].total_degree() != 2:
        return None
    N = T.ring.nvars - 1
    span = LinearSubspace.from_cut(lin, N, T.ring.field) if lin else LinearSubspace.whole(N, T.ring.field)
    q = _parametrize(Ideal(T.ring, rest), span).generators[0]
    return span, q


def _top_linear_component(T: Ideal, d: int, rng: RandomSource, attempts: int = 12) -> LinearSubspace | None:
    """The d-dimensional linear space carrying a degree-one top part of T.

    Cutting by d general hyperplanes misses everything of lower dimension
    and leaves a single reduced point of the top component.
    """
    from .sampling import _solve_point

    ring = T.ring
    N = ring.nvars - 1
    pts = []
    for _ in range(attempts):
        forms = [linear_form(ring, rng.vector(ring.nvars)) for _ in range(d)]
        K = saturate_by_element(T + Ideal(ring, forms), linear_form(ring, rng.vector(ring.nvars)))
        s = _solve_point(K)
        if s is None:
            continue
        pts.append(PointP(s, ring.field))
        span = LinearSubspace.from_span(pts, N, ring.field)
        if span.dim == d:
            return span
    return None


def classify_mult2_tangency(
    X: ProjectiveVariety,
    h,
    rng: RandomSource | None = None,
    Xd: ProjectiveVariety | None = None,
    cone_duality: bool = True,
) -> TangencyClass:
    """Shape of the tangency scheme of a hyperplane h of multiplicity 2 on X^*."""
    rng = rng or RandomSource(0)
    if Xd is None:
        Xd = _hypersurface_dual(X, rng.split())
    if not isinstance(h, PointP):
        h = PointP(tuple(h), Xd.field)
    if not Xd.contains_point(h):
        raise ValueError(f"{h} is not on the dual variety")
    m = multiplicity_at(Xd, h)
    if m != 2:
        raise ValueError(f"multiplicity {m} at {h}, expected 2")
    T = tangency_scheme(X, h, rng.split())
    hd = hilbert_data(T)
    witness = {"hilbert_polynomial": [str(c) for c in hilbert_polynomial(T)]}
    if hd.is_empty:
        raise TrichotomyViolation("empty tangency scheme at a point of the dual variety")
    shape = _quadric_shape(T)
    if shape is not None:
        span, q = shape
        r = gram_rank(q)
        witness.update(span=span, quadric=str(q), gram_rank=r)
        case = "irreducible_hyperquadric" if r >= 3 else "two_linear_spaces"
    elif hd.degree == 1:
        top = _top_linear_component(T, hd.proj_dimension, rng.split())
        if top is None:
            raise TrichotomyViolation("could not recover the top-dimensional linear component")
        I_top = Ideal(T.ring, top.cut_forms(T.ring))
        hp_T = hilbert_polynomial(T)
        hp_top = hilbert_polynomial(I_top)
        away = saturate(T, I_top)
        witness.update(
            top=top,
            top_hilbert_polynomial=[str(c) for c in hp_top],
            residual=away,
        )
        if hp_T == hp_top:
            raise TrichotomyViolation("tangency scheme is a reduced linear space")
        if not hilbert_data(away).is_empty:
            raise TrichotomyViolation("lower-dimensional component off the linear space")
        case = "linear_with_embedded"
    elif hd.degree == 2:
        case = "two_linear_spaces"
    else:
        raise TrichotomyViolation(f"tangency scheme of degree {hd.degree}")
    out = TangencyClass(case, T, hd, witness)
    if case == "irreducible_hyperquadric" and cone_duality:
        Cd = dual_variety(reduced_cone(Xd, h), rng.split(), target=X.ring)
        out.witness["cone_dual"] = Cd.ideal
        out.cone_dual_equal = ideal_equal_up_to_radical(Cd.ideal, T)
    return out


def reduced_cone(Z: ProjectiveVariety, z: PointP) -> ProjectiveVariety:
    """|C_z(Z)|; a principal cone is replaced by its squarefree part."""
    C = tangent_cone(Z, z).ideal
    if len(C.generators) == 1:
        C = Ideal(C.ring, [_squarefree(C.generators[0])])
    return ProjectiveVariety(C, "reduced tangent cone")


def _squarefree(f: Polynomial) -> Polynomial:
    import sympy

    ring = f.ring
    F = ring.field
    syms = sympy.symbols(ring.variables)
    expr = 0
    for e, c in f.as_dict().items():
        term = sympy.Rational(int(c.numerator), int(c.denominator)) if not F.characteristic else int(c)
        for s, a in zip(syms, e):
            term *= s**a
        expr += term
    kw = {"modulus": F.characteristic} if F.characteristic else {}
    _, factors = sympy.factor_list(expr, *syms, **kw)
    out = ring.one()
    for fac, _ in factors:
        P = sympy.Poly(fac, *syms)
        terms = {}
        for mon, c in P.terms():
            c = sympy.Rational(c)
            terms[tuple(mon)] = F(f"{c.p}/{c.q}")
        out = out * Polynomial(ring, terms)
    return out.scale_monic()


# --------------------------------------------------------------------------
# polar varieties


def _random_subspace(N: int, k: int, rng: RandomSource, F) -> LinearSubspace:
    while True:
        L = LinearSubspace.from_span([rng.vector(N + 1) for _ in range(k + 1)], N, F)
        if L.dim == k:
            return L


def verify_polar_properties(
    Z: ProjectiveVariety,
    rng: RandomSource | None = None,
    z: PointP | None = None,
    X: ProjectiveVariety | None = None,
    trials: int = 3,
) -> VerificationReport:
    """(a) P(Z,D) is empty or of codimension k+1 in Z, k = 0, 1;
    (b) mult_z P(Z,D) <= 2 at a multiplicity-two point z;
    (c) with X (Z = X^*) given, some polar variety through z has
        multiplicity at least the number of components of Tan(z^perp, X)."""
    rng = rng or RandomSource(0)
    report = VerificationReport("polar-props", rng.seed)
    try:
        _polar_properties(Z, rng, z, X, trials, report)
    except BudgetExhausted as exc:
        report.measure("budget", str(exc))
        report.verdict = "budget_exhausted"
    return report


def _discover_mult2_point(Z: ProjectiveVariety, rng: RandomSource) -> PointP | None:
    S = ProjectiveVariety(multiplicity_stratum(Z, 2), "double locus")
    if S.is_empty():
        return None
    for p in known_points(S, limit=8):
        if multiplicity_at(Z, p) == 2:
            return p
    try:
        p = sample_point(S, rng, smooth=False)
    except SamplingError:
        return None
    return p if multiplicity_at(Z, p) == 2 else None


def _polar_properties(Z, rng, z, X, trials, report):
    report.hypothesis("Z is a hypersurface", Z.is_hypersurface())
    N = Z.ambient_dim
    codims = {}
    ok_a = True
    for k in (0, 1):
        got = []
        for _ in range(trials):
            D = _random_subspace(N, k, rng, Z.field)
            P = polar_variety(Z, D, rng.split())
            c = None if P.is_empty() else Z.dim - P.dim
            got.append(c)
            ok_a &= c is None or c == k + 1
        codims[str(k)] = got
    report.measure("polar_codims", codims)
    report.measure("a", ok_a)

    if z is None:
        z = _discover_mult2_point(Z, rng.split())
    ok_b = True
    mults = []
    if z is not None:
        report.measure("z", z)
        report.measure("mult_z", multiplicity_at(Z, z))
        for k in (0, 1):
            for _ in range(trials):
                D = _random_subspace(N, k, rng, Z.field)
                P = polar_variety(Z, D, rng.split())
                if P.is_empty() or not P.contains_point(z):
                    mults.append(None)
                    continue
                m = multiplicity_at(P, z)
                mults.append(m)
                ok_b &= m <= 2
    report.measure("polar_mults_at_z", mults)
    report.measure("b", ok_b)

    ok_c = True
    if X is not None and z is not None:
        cls = classify_mult2_tangency(X, z, rng.split(), Xd=Z, cone_duality=False)
        m = cls.components
        report.measure("tangency_case", cls.case)
        report.measure("components", m)
        best = 0
        for k in range(0, N - 1):
            for _ in range(trials):
                D = _special_subspace(Z, z, k, rng)
                P = polar_variety(Z, D, rng.split())
                if P.is_empty() or not P.contains_point(z):
                    continue
                best = max(best, multiplicity_at(P, z))
            if best >= m:
                break
        report.measure("best_polar_mult", best)
        ok_c = best >= m
    report.measure("c", ok_c)
    report.conclude(ok_a and ok_b and ok_c)


def _special_subspace(Z, z, k, rng):
    """A random k-plane; when possible it is drawn inside T_z-directions
    that keep z on the polar variety (a random D through z)."""
    N = Z.ambient_dim
    rows = [list(z.coords)] + [rng.vector(N + 1) for _ in range(k)]
    L = LinearSubspace.from_span(rows, N, Z.field)
    return L if L.dim == k else _random_subspace(N, k, rng, Z.field)


# --------------------------------------------------------------------------
# duality of tangent cones


def verify_cone_duality_bidual(
    Z: ProjectiveVariety,
    z: PointP,
    X: ProjectiveVariety,
    rng: RandomSource | None = None,
) -> VerificationReport:
    """For Z = X^*: the dual of |C_z(Z)| lies in the tangency scheme of the
    hyperplane z with X; also (X^*)^* = X."""
    rng = rng or RandomSource(0)
    report = VerificationReport("cone-duality", rng.seed)
    try:
        report.hypothesis("Z is a hypersurface", Z.is_hypersurface())
        report.hypothesis("z lies on Z", Z.contains_point(z))
        report.measure("z", z)
        C = reduced_cone(Z, z)
        report.measure("reduced_cone", C.ideal)
        Cd = dual_variety(C, rng.split(), target=X.ring)
        T = tangency_scheme(X, z, rng.split())
        report.measure("cone_dual", Cd.ideal)
        report.measure("cone_dual_hilbert", Cd.hilbert.as_dict())
        report.measure("tangency", T)
        report.measure("tangency_hilbert_polynomial", [str(c) for c in hilbert_polynomial(T)])
        contained = radical_contains(Cd.ideal, T)
        report.measure("contained", contained)
        report.measure("equal", contained and radical_contains(T, Cd.ideal))
        hd = hilbert_data(T)
        if hd.degree == 1 and not hd.is_empty:
            top = _top_linear_component(T, hd.proj_dimension, rng.split())
            I_top = Ideal(T.ring, top.cut_forms(T.ring))
            if hilbert_polynomial(T) != hilbert_polynomial(I_top):
                # support of I_top / T, i.e. the embedded points of T
                E = _colon(T, I_top)
                report.measure("embedded_support", E)
                report.measure("embedded_is_cone_dual", ideal_equal_up_to_radical(E, Cd.ideal))
        Zd =dual_variety(Z, rng.split(), target=X.ring)
        bidual = ideal_equal_up_to_radical(Zd.ideal, X.ideal)
        report.measure("bidual", bidual)
        report.conclude(contained and bidual)
    except BudgetExhausted as exc:
        report.measure("budget", str(exc))
        report.verdict = "budget_exhausted"
    return report


# --------------------------------------------------------------------------
# secant defects and the degree of the dual


def verify_superadditivity_and_codegree(
    X: ProjectiveVariety, rng: RandomSource | None = None
) -> VerificationReport:
    """delta_k >= delta_{k-1} + delta_1 when delta_1 > 0, and deg X^* >= ord X."""
    rng = rng or RandomSource(0)
    report = VerificationReport("superadditivity", rng.seed)
    try:
        report.hypothesis("X is smooth", X.is_smooth())
        prof = secant_profile(X, rng.split())
        report.measure("profile", prof.as_json())
        for j, defective in sorted(prof.dual_k_defective.items()):
            report.hypothesis(f"X is not dual {j}-defective", not defective)
        d = prof.defects
        sup = all(d[k] >= d[k - 1] + d[0] for k in range(1, len(d))) if d and d[0] > 0 else True
        report.measure("superadditive", sup)
        report.measure("superadditive_equality", bool(d) and d[0] > 0 and all(d[k] == d[k - 1] + d[0] for k in range(1, len(d))))
        Xd = dual_variety(X, rng.split())
        report.measure("dual_degree", Xd.degree)
        report.measure("order", prof.order)
        report.measure("codegree_bound", Xd.degree >= prof.order)
        report.conclude(sup and Xd.degree >= prof.order)
    except BudgetExhausted as exc:
        report.measure("budget", str(exc))
        report.verdict = "budget_exhausted"
    return report



def _colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J for an ideal J, intersecting the colons by its generators."""
    out = None
    for g in J.generators:
        Q = quotient(I, g)
        out = Q if out is None else intersect(out, Q)
    return out if out is not None else Ideal(I.ring, [I.ring.one()])
