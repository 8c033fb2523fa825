"""Command-line front end: ``projdual <command> FILE [options]``.

Every command prints one JSON document on stdout.  Exit codes: 0 success,
1 usage or input error, 2 a verification whose verdict is not ``pass``,
3 Groebner budget exhausted.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass, field
from pathlib import Path

from .contact import contact_locus, shadow_covers, tangency_scheme
from .cones import multiplicity_at, polar_variety, tangent_cone
from .groebner import BudgetExhausted, budget
from .ideal import Ideal, flat_limit, hilbert_data, hilbert_polynomial
from .linear import LinearSubspace, PointP, RandomSource
from .poly import GF, QQ, PolynomialParseError, PolyRing, parse_polynomial
from .report import summarize
from .secant import secant_profile, secant_variety
from .variety import (
    PointNotOnVariety,
    ProjectiveVariety,
    SingularPoint,
    conormal_variety,
    dual_variety,
    tangent_space,
)
from .verify import (
    TrichotomyViolation,
    classify_mult2_tangency,
    verify_cone_duality_bidual,
    verify_main_theorem,
    verify_polar_properties,
    verify_secant_dual_inclusion,
    verify_superadditivity_and_codegree,
)

SEED_ENV = "PROJDUAL_SEED"

EXIT_OK, EXIT_USAGE, EXIT_VERDICT, EXIT_BUDGET = 0, 1, 2, 3


class VarietyFileError(ValueError):
    def __init__(self, path, lineno, msg):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.lineno = lineno


# --------------------------------------------------------------------------
# variety files


@dataclass
class VarietyFile:
    """Parsed contents of a ``.var`` file."""

    path: str
    field: object
    ring: PolyRing
    ideal: Ideal
    spaces: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)

    @property
    def variety(self) -> ProjectiveVariety:
        return ProjectiveVariety(self.ideal, Path(self.path).stem)

    def to_field(self, F) -> "VarietyFile":
        ring = self.ring.with_field(F)
        return VarietyFile(
            self.path,
            F,
            ring,
            self.ideal.to_ring(ring),
            {k: v.to_field(F) for k, v in self.spaces.items()},
            {k: v.to_field(F) for k, v in self.points.items()},
        )


_COORDS = re.compile(r"\(([^()]*)\)")


def _parse_coords(text, F, n, path, lineno):
    groups = _COORDS.findall(text)
    rest = _COORDS.sub("", text).strip()
    if not groups or rest:
        raise VarietyFileError(path, lineno, f"expected (a0:...:aN) groups, got {text!r}")
    out = []
    for g in groups:
        parts = [p.strip() for p in g.split(":")]
        if len(parts) != n:
            raise VarietyFileError(path, lineno, f"point {g!r} needs {n} coordinates")
        try:
            coords = [F(p) for p in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise VarietyFileError(path, lineno, f"bad coordinate in {g!r}: {exc}") from None
        if not any(coords):
            raise VarietyFileError(path, lineno, "the zero vector is not a point")
        out.append(coords)
    return out


def parse_variety_file(path, text: str | None = None) -> VarietyFile:
    """Line-oriented grammar::

        field Q | field F <p>
        vars x0 x1 ...
        gen <polynomial>
        space <name> span (a0:...:aN) (...)
        space <name> cut <linear form>; <linear form>; ...
        point <name> = (a0:...:aN) [on X]

    Blank lines and ``#`` comments are ignored.
    """
    path = str(path)
    if text is None:
        text = Path(path).read_text()
    F = QQ
    ring = None
    gens = []
    spaces: dict = {}
    points: dict = {}
    pending_on = []
    seen_field = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            if ring is not None or seen_field:
                raise VarietyFileError(path, lineno, "field must come once, before vars")
            seen_field = True
            parts = rest.split()
            if parts == ["Q"]:
                F = QQ
            elif len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
                try:
                    F = GF(int(parts[1]))
                except ValueError as exc:
                    raise VarietyFileError(path, lineno, str(exc)) from None
            else:
                raise VarietyFileError(path, lineno, f"unknown field {rest!r}")
        elif head == "vars":
            if ring is not None:
                raise VarietyFileError(path, lineno, "vars declared twice")
            names = rest.split()
            try:
                ring = PolyRing(names, F)
            except ValueError as exc:
                raise VarietyFileError(path, lineno, str(exc)) from None
        elif head in ("gen", "space", "point"):
            if ring is None:
                raise VarietyFileError(path, lineno, f"{head} before vars")
            n = ring.nvars
            if head == "gen":
                try:
                    gens.append(parse_polynomial(rest, ring))
                except (PolynomialParseError, ValueError, ZeroDivisionError) as exc:
                    raise VarietyFileError(path, lineno, str(exc)) from None
            elif head == "space":
                m = re.fullmatch(r"(\w+)\s+(span|cut)\s+(.*)", rest)
                if not m:
                    raise VarietyFileError(path, lineno, "expected: space <name> span|cut ...")
                name, kind, body = m.groups()
                if kind == "span":
                    rows = _parse_coords(body, F, n, path, lineno)
                    L = LinearSubspace.from_span(rows, n - 1, F)
                    if L.dim != len(rows) - 1:
                        raise VarietyFileError(path, lineno, f"spanning points of {name} are dependent")
                else:
                    try:
                        forms = [parse_polynomial(t, ring) for t in body.split(";") if t.strip()]
                    except (PolynomialParseError, ValueError, ZeroDivisionError) as exc:
                        raise VarietyFileError(path, lineno, str(exc)) from None
                    if not forms or any(not f or f.total_degree() != 1 or not f.is_homogeneous() for f in forms):
                        raise VarietyFileError(path, lineno, "cut needs nonzero linear forms")
                    L = LinearSubspace.from_cut(forms, n - 1, F)
                    if L.codim != len(forms):
                        raise VarietyFileError(path, lineno, f"cutting forms of {name} are dependent")
                spaces[name] = L
            else:
                m = re.fullmatch(r"(\w+)\s*=\s*(\([^()]*\))\s*(on\s+X)?", rest)
                if not m:
                    raise VarietyFileError(path, lineno, "expected: point <name> = (a0:...:aN) [on X]")
                name, coords, on = m.groups()
                p = PointP(_parse_coords(coords, F, n, path, lineno)[0], F)
                points[name] = p
                if on:
                    pending_on.append((lineno, name, p))
        else:
            raise VarietyFileError(path, lineno, f"unknown directive {head!r}")
    if ring is None:
        raise VarietyFileError(path, 0, "no vars line")
    ideal = Ideal(ring, gens)
    for lineno, name, p in pending_on:
        if not all(not g.evaluate(p.coords) for g in ideal.generators):
            raise VarietyFileError(path, lineno, f"point {name} is not on X")
    return VarietyFile(path, F, ring, ideal, spaces, points)


# --------------------------------------------------------------------------
# command handlers


class UsageError(ValueError):
    pass


def _space(vf: VarietyFile, name: str) -> LinearSubspace:
    if name in vf.spaces:
        return vf.spaces[name]
    if name.endswith("perp") and name[:-4] in vf.spaces:
        return vf.spaces[name[:-4]].perp()
    raise UsageError(f"no space named {name!r}")


def _point(vf: VarietyFile, name: str) -> PointP:
    if name not in vf.points:
        raise UsageError(f"no point named {name!r}")
    return vf.points[name]


def _hilbert(I: Ideal) -> dict:
    hd = hilbert_data(I)
    return {"dim": hd.proj_dimension, "degree": hd.degree if not hd.is_empty else None}


def _variety_json(V: ProjectiveVariety) -> dict:
    return {
        "variables": list(V.ring.variables),
        "generators": V.ideal.summary(),
        "dim": V.dim,
        "degree": V.degree if not V.is_empty() else None,
    }


def _target(vf, args, rng):
    X = vf.variety
    if getattr(args, "variety_dual", False):
        return dual_variety(X, rng.split())
    return X


def _linear_space(vf, args, rng):
    if getattr(args, "tangent_at", None):
        return tangent_space(vf.variety, _point(vf, args.tangent_at))
    if getattr(args, "space", None):
        return _space(vf, args.space)
    raise UsageError("give --space or --tangent-at")


def cmd_dual(vf, args, rng):
    X = vf.variety
    Xd = dual_variety(X, rng.split(), method=args.method)
    out = _variety_json(Xd)
    out["codim"] = Xd.codim
    out["dual_defect"] = Xd.codim - 1
    return out


def cmd_conormal(vf, args, rng):
    K = conormal_variety(vf.variety, rng.split())
    return {"variables": list(K.ring.variables), "generators": K.summary()}


def cmd_tangent_cone(vf, args, rng):
    Z = _target(vf, args, rng)
    z = _point(vf, args.point)
    C = tangent_cone(Z, z)
    return {
        "point": z.as_json(),
        "variables": list(Z.ring.variables),
        "generators": C.ideal.summary(),
        "degree": C.degree,
    }


def cmd_mult(vf, args, rng):
    Z = _target(vf, args, rng)
    if args.point:
        z = _point(vf, args.point)
    elif args.point_on:
        z = _space(vf, args.point_on).random_point(rng)
    else:
        raise UsageError("give --point or --point-on")
    if not Z.contains_point(z):
        return {"point": z.as_json(), "on_variety": False, "multiplicity": 0}
    return {"point": z.as_json(), "on_variety": True, "multiplicity": multiplicity_at(Z, z)}


def cmd_polar(vf, args, rng):
    Z = _target(vf, args, rng)
    if args.space:
        D = _space(vf, args.space)
    elif args.dim is not None:
        D = _random_space(Z, args.dim, rng)
    else:
        raise UsageError("give --space or --dim")
    P = polar_variety(Z, D, rng.split())
    out = _variety_json(P)
    out["D"] = D.as_json()
    out["codim_in_Z"] = None if P.is_empty() else Z.dim - P.dim
    return out


def _random_space(Z, k, rng):
    N = Z.ambient_dim
    if not -1 <= k < N:
        raise UsageError(f"--dim must lie in [-1, {N - 1}]")
    if k == -1:
        return LinearSubspace.empty(N, Z.field)
    while True:
        L = LinearSubspace.from_span([rng.vector(N + 1) for _ in range(k + 1)], N, Z.field)
        if L.dim == k:
            return L


def cmd_tangency(vf, args, rng):
    X = vf.variety
    if args.hyperplane:
        H = _point(vf, args.hyperplane)
    elif args.space:
        H = _space(vf, args.space)
    else:
        raise UsageError("give --hyperplane or --space")
    T = tangency_scheme(X, H, rng.split())
    return {
        "generators": T.summary(),
        "hilbert": _hilbert(T),
        "hilbert_polynomial": [str(c) for c in hilbert_polynomial(T)],
    }


def cmd_contact(vf, args, rng):
    L = _linear_space(vf, args, rng)
    E = contact_locus(vf.variety, L, rng.split())
    return {"L": L.as_json(), "generators": E.summary(), "hilbert": _hilbert(E)}


def cmd_shadow(vf, args, rng):
    L = _linear_space(vf, args, rng)
    res = shadow_covers(vf.variety, L, rng.split(), args.trials)
    return {
        "covers": res.covers,
        "points": [p.as_json() for p in res.points],
        "witness": res.witness.as_json() if res.witness is not None else None,
    }


def cmd_secant(vf, args, rng):
    S = secant_variety(vf.variety, args.k)
    out = _variety_json(S)
    out["k"] = args.k
    return out


def cmd_profile(vf, args, rng):
    return secant_profile(vf.variety, rng.split()).as_json()


def cmd_flat_limit(vf, args, rng):
    if args.param not in vf.ring.variables:
        raise UsageError(f"{args.param!r} is not a variable of the file")
    L = flat_limit(vf.ideal, args.param)
    out = {"variables": list(L.ring.variables), "generators": L.summary()}
    if L.homogeneous:
        out["hilbert_polynomial"] = [str(c) for c in hilbert_polynomial(L)]
    return out


def cmd_verify(vf, args, rng):
    X = vf.variety
    what = args.what
    if what == "main-theorem":
        return verify_main_theorem(X, _linear_space(vf, args, rng), rng, args.trials)
    if what == "secant-dual":
        return verify_secant_dual_inclusion(X, args.k, rng)
    if what == "classify-mult2":
        cls = classify_mult2_tangency(X, _point(vf, args.point), rng)
        return {"classification": cls.as_json()}
    if what == "polar-props":
        if args.as_hypersurface:
            return verify_polar_properties(X, rng, _opt_point(vf, args))
        Xd = dual_variety(X, rng.split())
        return verify_polar_properties(Xd, rng, _opt_point(vf, args), X=X)
    if what == "cone-duality":
        Xd = dual_variety(X, rng.split())
        return verify_cone_duality_bidual(Xd, _point(vf, args.point), X, rng)
    if what == "superadditivity":
        return verify_superadditivity_and_codegree(X, rng)
    raise UsageError(f"unknown verification {what!r}")


def _opt_point(vf, args):
    return _point(vf, args.point) if args.point else None


HANDLERS = {
    "dual": cmd_dual,
    "conormal": cmd_conormal,
    "tangent-cone": cmd_tangent_cone,
    "mult": cmd_mult,
    "polar": cmd_polar,
    "tangency": cmd_tangency,
    "contact": cmd_contact,
    "shadow": cmd_shadow,
    "secant": cmd_secant,
    "profile": cmd_profile,
    "flat-limit": cmd_flat_limit,
    "verify": cmd_verify,
}


# --------------------------------------------------------------------------
# argument parsing


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _field_mode(text):
    if text in ("Q", "screen"):
        return text
    m = re.fullmatch(r"Fp:(\d+)", text)
    if m:
        return int(m.group(1))
    raise argparse.ArgumentTypeError("expected Q, Fp:<p> or screen")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--height", type=_positive, default=20, help="height bound of random integers")
    common.add_argument("--gb-pairs", type=_positive, default=None, help="cap on S-pairs per Groebner basis")
    common.add_argument("--gb-degree", type=_positive, default=None, help="cap on polynomial degree in a Groebner basis")
    common.add_argument("--field", type=_field_mode, default="Q", help="Q, Fp:<p>, or screen (F_p first, then Q)")

    p = argparse.ArgumentParser(prog="projdual", description="Exact projective duality computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("file", help=".var file")
        return s

    s = add("dual", "dual variety X^*")
    s.add_argument("--method", choices=("auto", "gauss", "conormal"), default="auto")
    add("conormal", "ideal of the conormal variety")
    for name, help_ in (("tangent-cone", "tangent cone at a point"), ("mult", "multiplicity at a point")):
        s = add(name, help_)
        s.add_argument("--point", help="named point")
        s.add_argument("--variety-dual", action="store_true", help="work on X^* instead of X")
        if name == "mult":
            s.add_argument("--point-on", help="random point of a named space (suffix 'perp' for its dual)")
    s = add("polar", "polar variety P(Z, D)")
    s.add_argument("--variety-dual", action="store_true")
    s.add_argument("--space", help="named space D")
    s.add_argument("--dim", type=int, help="random D of this dimension")
    s = add("tangency", "tangency scheme of a hyperplane")
    s.add_argument("--hyperplane", help="named point of the dual space")
    s.add_argument("--space", help="named hyperplane")
    for name, help_ in (("contact", "contact locus Tan(L, X)"), ("shadow", "does the shadow of L cover X")):
        s = add(name, help_)
        s.add_argument("--space", help="named space L")
        s.add_argument("--tangent-at", help="L = tangent space at a named point")
        if name == "shadow":
            s.add_argument("--trials", type=_positive, default=3)
    s = add("secant", "secant variety S^k(X)")
    s.add_argument("-k", type=_positive, default=1)
    add("profile", "secant dimensions, defects and order")
    s = add("flat-limit", "flat limit of a one-parameter family")
    s.add_argument("--param", default="t")

    v = sub.add_parser("verify", help="theorem checks")
    vsub = v.add_subparsers(dest="what", required=True)

    def vadd(name, help_):
        s = vsub.add_parser(name, parents=[common], help=help_)
        s.add_argument("file")
        return s

    s = vadd("main-theorem", "multiplicity inequality")
    s.add_argument("--space")
    s.add_argument("--tangent-at")
    s.add_argument("--trials", type=_positive, default=3)
    s = vadd("secant-dual", "S^k(X)^* inside the (k+1)-fold locus of X^*")
    s.add_argument("-k", type=int, default=1)
    s = vadd("classify-mult2", "shape of the tangency scheme at a double point of X^*")
    s.add_argument("--point", required=True, help="named point of the dual space")
    s = vadd("polar-props", "codimension and multiplicity of polar varieties")
    s.add_argument("--point", help="named multiplicity-two point")
    s.add_argument("--as-hypersurface", action="store_true", help="use X itself as Z")
    s = vadd("cone-duality", "dual of the tangent cone versus the tangency scheme")
    s.add_argument("--point", required=True)
    vadd("superadditivity", "secant defects and the degree of X^*")

    c = sub.add_parser("corpus", help="regression corpus")
    csub = c.add_subparsers(dest="what", required=True)
    s = csub.add_parser("run", help="run every case under a directory")
    s.add_argument("directory", nargs="?", default="tests/corpus")
    s.add_argument("--jobs", type=_positive, default=1)
    return p


# --------------------------------------------------------------------------
# driver


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"${SEED_ENV} must be an integer") from None


def _exit_for(result) -> int:
    verdict = result.get("verdict") if isinstance(result, dict) else None
    if verdict == "budget_exhausted":
        return EXIT_BUDGET
    if verdict in ("fail", "hypotheses_violated"):
        return EXIT_VERDICT
    return EXIT_OK


def _run_once(vf, args, seed):
    rng = RandomSource(seed, args.height)
    with budget(args.gb_pairs, args.gb_degree):
        result = HANDLERS[args.command](vf, args, rng)
    result = summarize(result.as_json() if hasattr(result, "as_json") else result)
    if args.command != "verify":
        result["seed"] = seed
    return result


def _scalars(d: dict) -> dict:
    keep = (bool, int, str, type(None))
    return {k: v for k, v in d.items() if isinstance(v, keep) and k not in ("seed",)}


def _execute(args) -> tuple[int, dict]:
    seed = _seed(args)
    vf = parse_variety_file(args.file)
    mode = args.field
    if isinstance(mode, int):
        vf = vf.to_field(GF(mode))
        result = _run_once(vf, args, seed)
    elif mode == "screen":
        p = RandomSource(seed).prime(30)
        fast = _run_once(vf.to_field(GF(p)), args, seed)
        if _exit_for(fast) == EXIT_BUDGET:
            return EXIT_BUDGET, {"screen": {"prime": p, "result": fast}}
        result = _run_once(vf, args, seed)
        result["screen"] = {"prime": p, "agrees": _scalars(fast) == _scalars(result)}
    else:
        result = _run_once(vf, args, seed)
    return _exit_for(result), result


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def run_command(argv) -> int:
    """Run one command line; prints JSON and returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "corpus":
        return run_corpus(args.directory, args.jobs)
    try:
        code, result = _execute(args)
    except BudgetExhausted as exc:
        print(_dump({"error": "budget exhausted", "detail": str(exc)}))
        return EXIT_BUDGET
    except (
        VarietyFileError,
        UsageError,
        PointNotOnVariety,
        SingularPoint,
        TrichotomyViolation,
        OSError,
        ValueError,
    ) as exc:
        print(_dump({"error": type(exc).__name__, "detail": str(exc)}))
        print(f"projdual: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(_dump(result))
    return code


# --------------------------------------------------------------------------
# corpus


def _subset(expect, got) -> bool:
    if isinstance(expect, dict):
        return isinstance(got, dict) and all(k in got and _subset(v, got[k]) for k, v in expect.items())
    if isinstance(expect, list):
        return isinstance(got, list) and len(expect) == len(got) and all(_subset(a, b) for a, b in zip(expect, got))
    return expect == got


def run_case(spec_path: str) -> dict:
    """Run one corpus case: ``<name>.json`` with keys args, exit, expect.

    ``{file}`` in args is replaced by the sibling ``<name>.var`` (or by the
    file named in ``var``)."""
    spec_path = Path(spec_path)
    spec = json.loads(spec_path.read_text())
    var = spec_path.parent / spec.get("var", spec_path.stem + ".var")
    argv = [a.replace("{file}", str(var)) for a in spec["args"]]
    buf = io.StringIO()
    with redirect_stdout(buf), redirect_stderr(io.StringIO()):
        code = run_command(argv)
    try:
        got = json.loads(buf.getvalue())
    except json.JSONDecodeError:
        got = None
    ok = code == spec.get("exit", 0) and _subset(spec.get("expect", {}), got)
    return {"case": spec_path.stem, "ok": ok, "exit": code, "output": got if not ok else None}


def run_corpus(directory: str, jobs: int = 1) -> int:
    cases = sorted(str(p) for p in Path(directory).glob("*.json"))
    if not cases:
        print(_dump({"error": "no cases", "directory": directory}))
        return EXIT_USAGE
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(run_case, cases))
    else:
        results = [run_case(c) for c in cases]
    passed = sum(r["ok"] for r in results)
    print(_dump({"passed": passed, "total": len(results), "cases": results}))
    return EXIT_OK if passed == len(results) else EXIT_VERDICT


def main(argv=None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
