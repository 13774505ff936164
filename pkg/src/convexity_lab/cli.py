"""Command-line front end.

Variable names used by the built-in formulas: ``s0..s3`` are four consecutive
sorted elements ``s_i..s_{i+3}``, ``t0, t1`` are ``s_{3j}`` and
``s_{3(j+1)}``, and ``x, y, z`` are the surface coordinates.

Exit status: 0 on success, 2 on bad input or usage, 1 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .algebra import formulas
from .algebra.degeneracy import degeneracy_test, xn_family_check
from .algebra.elimination import eliminate_two, verify_parametrization
from .algebra.polynomial import as_rational, divide_exact
from .algebra.ratfunc import rf_equal
from .errors import InvariantViolation, PreconditionError
from .expander import SCAN_COLUMNS, expander_best_pair, expander_parts, expander_scan, expander_set
from .parser import parse_polynomial, parse_rational_function
from .report import FORMATS, Table, emit
from .setops import (
    FAMILIES,
    OPS,
    PairGraph,
    QSet,
    combine,
    combine_restricted,
    consecutive_differences,
    dyadic_pigeonhole,
    family,
    k_fold,
    make_set,
    min_block_gap,
    read_set,
)
from .squeeze import GroupMode, main22_pipeline, squeeze2, squeeze_witnesses, theorem1_pipeline
from .surface import ES_COLUMNS, SurfaceSpec, count_naive, count_root_based, es_scan, lemma_main_check

NAMING = (
    "names: s0..s3 = s_i..s_{i+3}, t0,t1 = s_{3j}, s_{3(j+1)}, x,y,z = surface coordinates"
)


class CommandError(PreconditionError):
    pass


# ---------------------------------------------------------------- inputs


def parse_range(text: str) -> list[int]:
    """``"4:64"`` (inclusive), ``"3,5,8"`` or a single integer."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise CommandError(f"bad integer range {text!r}") from exc


def parse_params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise CommandError(f"family parameter must be key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def load_set_file(path: str) -> QSet:
    try:
        return read_set(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from exc


def resolve_set(args, name: str = "a", required: bool = True) -> QSet | None:
    path = getattr(args, name, None)
    if path:
        return load_set_file(path)
    if getattr(args, "family", None):
        if args.n is None:
            raise CommandError("--family needs --n")
        n = parse_range(args.n)
        if len(n) != 1:
            raise CommandError("--n must be a single size here")
        return family(args.family, n[0], parse_params(args.param), args.seed)
    if required:
        raise CommandError(f"give --{name} FILE or --family KIND --n N")
    return None


def load_pairs(path: str, A: QSet) -> PairGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from exc
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise CommandError(f"{path}:{lineno}: expected two rationals")
        pairs.append((as_rational(parts[0]), as_rational(parts[1])))
    return PairGraph.from_values(A, A, pairs)


def _int_set(text: str) -> frozenset:
    return frozenset(parse_range(text)) if text else frozenset()


# ---------------------------------------------------------------- commands


def _timed(fn: Callable, args):
    t0 = time.perf_counter()
    result = fn()
    if args.no_timing:
        return result, None
    return result, round((time.perf_counter() - t0) * 1000)


def cmd_degen_test(args):
    report = degeneracy_test(parse_rational_function(args.f), args.x, args.y, args.method)
    return {
        "f": str(parse_rational_function(args.f)),
        "test_function": report.test_function,
        "verdict": report.verdict,
        "excluded_locus": report.excluded_locus,
    }


def cmd_xn_check(args):
    rows = []
    for n in parse_range(args.n or "3:6"):
        report, match = xn_family_check(n)
        rows.append({"n": n, "verdict": report.verdict, "closed_form_match": match})
    return Table(("n", "verdict", "closed_form_match"), rows)


_SYSTEMS = {
    "difference": (formulas.difference_system, "a", "b"),
    "shift": (formulas.shift_system, "t0", "t1"),
}


def cmd_eliminate(args):
    if args.p1 or args.p2 or args.p3:
        if not (args.p1 and args.p2 and args.p3 and args.u and args.v):
            raise CommandError("custom elimination needs --p1 --p2 --p3 --u --v")
        polys = [parse_polynomial(p) for p in (args.p1, args.p2, args.p3)]
        u, v = args.u, args.v
    else:
        build, u, v = _SYSTEMS[args.system]
        polys = list(build())
    out = eliminate_two(*polys, u, v)
    rec = {"u": u, "v": v, "terms": len(out), "eliminant": out}
    if not (args.p1 or args.p2 or args.p3):
        target = formulas.cubic_surface() if args.system == "difference" else formulas.shift_surface()
        rec["divisible_by_surface"] = divide_exact(out, target) is not None
    return rec


def _parse_subst(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise CommandError(f"substitution must be var=expr, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_rational_function(v)
    return out


def cmd_verify_param(args):
    if args.p:
        p = parse_polynomial(args.p)
        subst = _parse_subst(args.subst)
    elif args.system == "difference":
        p, subst = formulas.cubic_surface(), formulas.difference_parametrization()
    else:
        p, subst = formulas.shift_surface(), formulas.shift_parametrization()
    return {"polynomial": p, "substitution": {k: subst[k] for k in sorted(subst)},
            "vanishes": verify_parametrization(p, subst)}


def _surface_spec(args) -> SurfaceSpec:
    roles = tuple(r.strip() for r in args.roles.split(","))
    return SurfaceSpec(parse_polynomial(args.F), roles)


def cmd_count_surface(args):
    spec = _surface_spec(args)
    A = resolve_set(args, "a")
    B = load_set_file(args.b) if args.b else A
    C = load_set_file(args.c) if args.c else A
    reports = []
    if args.method in ("naive", "both"):
        reports.append(count_naive(spec, A, B, C))
    if args.method in ("root", "both"):
        reports.append(count_root_based(spec, A, B, C))
    if len({r.count for r in reports}) > 1:
        raise InvariantViolation("counting methods disagree")
    last = reports[-1]
    return {
        "F": spec.F,
        "sizes": last.sizes,
        "count": last.count,
        "methods": [r.method for r in reports],
        "degenerate_pairs": last.degenerate_pairs,
        "comparator": last.bound_value,
        "warnings": list(spec.warnings),
    }


def cmd_es_scan(args):
    spec = _surface_spec(args)
    rows = es_scan(spec, args.family or "ap", parse_range(args.n or "4:16"), parse_params(args.param), args.seed)
    return Table(ES_COLUMNS, rows)


def cmd_sumset(args):
    A = resolve_set(args, "a")
    if args.k:
        out = k_fold(args.op, A, args.k)
    else:
        B = load_set_file(args.b) if args.b else A
        out = combine(args.op, A, B)
    return {"op": args.op, "size": len(out), "set": out}


def cmd_restricted(args):
    A = resolve_set(args, "a")
    G = load_pairs(args.pairs, A) if args.pairs else PairGraph.consecutive(A)
    out = combine_restricted(args.op, G)
    return {"op": args.op, "pairs": len(G), "size": len(out), "set": out}


def _mult_table(m) -> Table:
    return Table(("d", "count"), [{"d": d, "count": m[d]} for d in sorted(m)])


def cmd_diffs(args):
    return _mult_table(consecutive_differences(resolve_set(args, "a")))


def cmd_pigeonhole(args):
    m = consecutive_differences(resolve_set(args, "a"))
    level = dyadic_pigeonhole(m)
    return {"total": m.total, "L": level.L, "covered_mass": level.covered_mass, "level_set": level.level_set}


def cmd_squeeze(args):
    A = resolve_set(args, "a")
    if args.d:
        D = make_set(as_rational(v) for v in args.d.split(","))
        L = args.L or 1
    else:
        level = dyadic_pigeonhole(consecutive_differences(A))
        D, L = level.level_set, args.L or level.L
    rep = squeeze_witnesses(A, D, L)
    return {"Dprime": D, "L": L, "report": rep}


def cmd_theorem1(args):
    rep = theorem1_pipeline(resolve_set(args, "a"))
    return {
        "pairs": [len(rep.H), len(rep.H1), len(rep.H2)],
        "stage_floors": rep.stage_floors,
        "stage_levels": [{"L": lv.L, "covered_mass": lv.covered_mass, "size": len(lv.level_set)} for lv in rep.stage_levels],
        "stage_set_sizes": [len(s) for s in rep.stage_sets],
        "stage_witness_counts": rep.stage_witness_counts,
        "full_sizes": rep.full_sizes,
        "final_max": rep.final_max,
        "comparator_19_12": rep.comparator,
        "stage_sets": rep.stage_sets,
    }


def cmd_squeeze2(args):
    Y, Z = load_set_file(args.y), load_set_file(args.z)
    res = squeeze2(Y, Z, _int_set(args.i), GroupMode(args.mode))
    return {"Iprime": res.Iprime, "Gamma_prime": res.Gamma_prime, "report": res.report}


def cmd_main22(args):
    return main22_pipeline(resolve_set(args, "a"))


def cmd_expander(args):
    X = resolve_set(args, "a")
    lam = as_rational(args.lam)
    if args.x is not None and args.xprime is not None:
        P, Q, R = expander_parts(X, args.x, args.xprime, lam)
        S = expander_set(X, args.x, args.xprime, lam)
        return {"x": as_rational(args.x), "xprime": as_rational(args.xprime), "lambda": lam,
                "sizes": {"P": len(P), "Q": len(Q), "R": len(R)}, "size": len(S)}
    res = expander_best_pair(X, lam)
    return {"x": res.x, "xprime": res.xprime, "lambda": lam, "size": res.size,
            "exponent_reading": res.exponent_reading, "context": res.context}


def cmd_expander_scan(args):
    rows = expander_scan(args.family or "ap", parse_range(args.n or "2:5"), as_rational(args.lam),
                         parse_params(args.param), args.seed, timing=not args.no_timing)
    return Table(SCAN_COLUMNS, rows)


def cmd_lemma_main(args):
    A = resolve_set(args, "a")
    G = load_pairs(args.pairs, A) if args.pairs else PairGraph.consecutive(A)
    return lemma_main_check(A, G)


# ---------------------------------------------------------------- self tests


def _sel_degen():
    f = formulas.cubic_surface_solved()
    r = degeneracy_test(f)
    yield "cubic surface is non-degenerate", r.verdict.value == "NonDegenerate"
    yield "log and direct routes agree", rf_equal(r.test_function, degeneracy_test(f, method="direct").test_function)
    g = degeneracy_test(formulas.shift_surface_solved())
    yield "shift surface is non-degenerate", g.verdict.value == "NonDegenerate"
    h = degeneracy_test(parse_rational_function("x^2 + y^2"))
    yield "separable sum is inconclusive", h.verdict.value == "Inconclusive"


def _sel_xn():
    for n in (3, 4):
        yield f"n={n} non-degenerate", xn_family_check(n)[0].verdict.value == "NonDegenerate"


def _sel_elim():
    out = eliminate_two(*formulas.difference_system(), "a", "b")
    yield "difference system gives the cubic", divide_exact(out, formulas.cubic_surface()) is not None


def _sel_param():
    yield "cubic parametrization", verify_parametrization(formulas.cubic_surface(), formulas.difference_parametrization())
    yield "shift parametrization", verify_parametrization(formulas.shift_surface(), formulas.shift_parametrization())


def _sel_count():
    spec = SurfaceSpec(parse_polynomial("x + y - z"))
    A = make_set([1, 2, 3])
    yield "x+y-z on {1,2,3}", count_naive(spec, A, A, A).count == 3 == count_root_based(spec, A, A, A).count
    A = family("ap", 10)
    yield "x+y-z on [10]", count_root_based(spec, A, A, A).count == 45
    one = SurfaceSpec(parse_polynomial("1"))
    yield "constant surface", count_naive(one, A, A, A).count == 0


def _sel_es():
    rows = es_scan(SurfaceSpec(parse_polynomial("x + y - z")), "ap", range(4, 17))
    yield "hyperplane counts n(n-1)/2", all(r["count"] == r["n"] * (r["n"] - 1) // 2 for r in rows)


def _sel_sumset():
    yield "sum example", combine("sum", make_set([1, 2]), make_set([10, 20])) == make_set([11, 12, 21, 22])
    yield "2-fold product", k_fold("prod", make_set([2, 3]), 2) == make_set([4, 6, 9])
    yield "AP sumset", len(combine("sum", family("ap", 10), family("ap", 10))) == 19


def _sel_restricted():
    A = make_set([1, 2, 4])
    yield "consecutive differences", combine_restricted("diff", PairGraph(A, A, {(0, 1), (1, 2)})) == make_set([1, 2])
    yield "empty graph", len(combine_restricted("sum", PairGraph(A, A, frozenset()))) == 0


def _sel_diffs():
    yield "gap counts", dict(consecutive_differences(make_set([1, 2, 3, 5, 7]))) == {1: 2, 2: 2}
    yield "squares", dict(consecutive_differences(make_set([1, 4, 9, 16]))) == {3: 1, 5: 1, 7: 1}


def _sel_pigeon():
    lv = dyadic_pigeonhole({Fraction(1): 1, Fraction(2): 1, Fraction(3): 4})
    yield "heaviest class", (lv.level_set, lv.L, lv.covered_mass) == (make_set([3]), 2, 4)
    yield "min block gap", min_block_gap(make_set([1, 2, 3, 4, 10, 20]), 3) == (1, 3)


def _sel_squeeze():
    r = squeeze_witnesses(make_set([0, 1, 3, 6, 10]), make_set([1, 2, 3, 4]), 1)
    yield "triangular set", len(r.witnesses) >= r.claimed_floor == 10
    r = squeeze_witnesses(make_set([1, 4, 9, 16]), make_set([3, 5, 7]), 1)
    yield "squares", r.claimed_floor == 6 and len(r.witnesses) >= 6


def _sel_theorem1():
    rep = theorem1_pipeline(family("ap", 10))
    yield "AP chain keeps all pairs", len(rep.H) == len(rep.H1) == len(rep.H2) == 9
    yield "square gaps", rep.stage_sets[1] == make_set(range(3, 20, 2))


def _sel_squeeze2():
    Y = make_set([0, 10, 20, 30, 40, 50])
    Z = make_set([1, 12, 23, 34, 45, 56])
    res = squeeze2(Y, Z, {1, 2})
    yield "equal gaps give no witnesses", res.report.claimed_floor == 0 and res.Gamma_prime == make_set([1])
    Y = make_set(range(0, 1600, 200))
    Z = make_set([y + 2 ** k for k, y in enumerate(Y)])
    res = squeeze2(Y, Z, {1, 2, 3})
    yield "doubling gaps", len(res.report.witnesses) > 0 and res.report.container_checked


def _sel_main22():
    rep = main22_pipeline(family("ap", 18))
    yield "[18] pipeline", rep.S == len(rep.index_sets[-1]) <= rep.surface_count


def _sel_expander():
    P, Q, R = expander_parts(make_set([1, 2]), 1, 2)
    yield "worked example", (P, Q, R) == (make_set([4, 6, 9]), make_set([9, 15, 25]), make_set([12, 18, 20, 27, 30, 45]))
    yield "singleton", expander_set(make_set([1]), 1, 1) == make_set([2])


def _sel_expander_scan():
    rows = expander_scan("ap", range(2, 5), timing=False)
    sizes = [r["size"] for r in rows]
    yield "sizes nondecreasing", sizes == sorted(sizes)


def _sel_lemma():
    A = make_set([1, 2, 3])
    rep = lemma_main_check(A, PairGraph.consecutive(A))
    yield "worked example", (rep.C, rep.D, rep.E, rep.count) == (make_set([1]), make_set([3, 5]), make_set([7, 19]), 2)


# ---------------------------------------------------------------- wiring


def _sets(p, *names):
    for name in names:
        p.add_argument(f"--{name}", metavar="FILE", help="set file (one rational per line or a JSON array)")


COMMANDS = {}


def _register(sub, common, name, fn, selftest, help_text, configure=None):
    p = sub.add_parser(name, parents=[common], help=help_text, description=f"{help_text}. {NAMING}")
    if configure:
        configure(p)
    COMMANDS[name] = (fn, selftest)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", help="size, or a range like 4:64 or 3,5,8")
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--param", action="append", metavar="KEY=VALUE", help="family parameter")
    common.add_argument("--lambda", dest="lam", default="1", help="shift, as p/q")
    common.add_argument("--no-timing", action="store_true", help="omit timing fields")
    common.add_argument("--witnesses", action="store_true", help="include full witness lists")
    common.add_argument("--selftest", action="store_true", help="run the built-in examples")

    parser = argparse.ArgumentParser(prog="convexity-lab", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def degen(p):
        p.add_argument("--f", default="(3*y^2 + x^4)/(4*x)", help="z = f(x, y)")
        p.add_argument("--x", default="x")
        p.add_argument("--y", default="y")
        p.add_argument("--method", choices=("log", "direct"), default="log")

    def elim(p):
        p.add_argument("--system", choices=tuple(_SYSTEMS), default="difference")
        for k in ("p1", "p2", "p3", "u", "v"):
            p.add_argument(f"--{k}")

    def vparam(p):
        p.add_argument("--system", choices=tuple(_SYSTEMS), default="difference")
        p.add_argument("--p", help="polynomial")
        p.add_argument("--subst", action="append", metavar="VAR=EXPR")

    def surf(p):
        p.add_argument("--F", default="x + y - z", help="polynomial in the three role variables")
        p.add_argument("--roles", default="x,y,z")

    def count(p):
        surf(p)
        _sets(p, "a", "b", "c")
        p.add_argument("--method", choices=("naive", "root", "both"), default="both")

    def sumset(p):
        _sets(p, "a", "b")
        p.add_argument("--op", choices=OPS, default="sum")
        p.add_argument("--k", type=int, help="k-fold combination of A with itself")

    def restricted(p):
        _sets(p, "a")
        p.add_argument("--op", choices=OPS, default="diff")
        p.add_argument("--pairs", metavar="FILE", help="pairs file, two rationals per line (default: consecutive)")

    def seta(p):
        _sets(p, "a")

    def squeeze(p):
        _sets(p, "a")
        p.add_argument("--d", help="comma separated gaps D'")
        p.add_argument("--L", type=int)

    def sq2(p):
        _sets(p, "y", "z")
        p.add_argument("--i", default="", help="index set, e.g. 1,2 or 1:3")
        p.add_argument("--mode", choices=[m.value for m in GroupMode], default="additive")

    def expander(p):
        _sets(p, "a")
        p.add_argument("--x")
        p.add_argument("--xprime")

    def lemma(p):
        _sets(p, "a")
        p.add_argument("--pairs", metavar="FILE")

    table = [
        ("degen-test", cmd_degen_test, _sel_degen, "derivative test for z = f(x, y)", degen),
        ("xn-check", cmd_xn_check, _sel_xn, "test the ((x^2+y)^n - (y-x^2)^n)/(2x) family", None),
        ("eliminate", cmd_eliminate, _sel_elim, "eliminate two variables by resultants", elim),
        ("verify-param", cmd_verify_param, _sel_param, "check that a parametrization lies on a surface", vparam),
        ("count-surface", cmd_count_surface, _sel_count, "count zeros on A x B x C", count),
        ("es-scan", cmd_es_scan, _sel_es, "zero counts across a family", surf),
        ("sumset", cmd_sumset, _sel_sumset, "sum, difference, product or ratio set", sumset),
        ("restricted", cmd_restricted, _sel_restricted, "combination along a pair graph", restricted),
        ("diffs", cmd_diffs, _sel_diffs, "consecutive differences with multiplicities", seta),
        ("pigeonhole", cmd_pigeonhole, _sel_pigeon, "heaviest dyadic multiplicity class", seta),
        ("squeeze", cmd_squeeze, _sel_squeeze, "witnesses in A+A-A", squeeze),
        ("theorem1", cmd_theorem1, _sel_theorem1, "gap chain over A, A^2, A^3", seta),
        ("squeeze2", cmd_squeeze2, _sel_squeeze2, "two-fold squeeze on interleaved sets", sq2),
        ("main22", cmd_main22, _sel_main22, "multiplicative expander pipeline", seta),
        ("expander", cmd_expander, _sel_expander, "ratio-of-products expander", expander),
        ("expander-scan", cmd_expander_scan, _sel_expander_scan, "best expander pair across a family", None),
        ("lemma-main", cmd_lemma_main, _sel_lemma, "difference sets along a pair graph on the cubic surface", lemma),
    ]
    for name, fn, sel, help_text, conf in table:
        _register(sub, common, name, fn, sel, help_text, conf)
    return parser


def _config(args) -> dict:
    skip = {"command"}
    conf = {"command": args.command}
    for k, v in sorted(vars(args).items()):
        if k not in skip:
            conf[k] = v
    return conf


def run_selftest(name: str) -> tuple[Table, bool]:
    _, sel = COMMANDS[name]
    rows, ok = [], True
    for label, passed in sel():
        ok &= bool(passed)
        rows.append({"check": label, "status": "pass" if passed else "FAIL"})
    return Table(("check", "status"), rows), ok


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fn, _ = COMMANDS[args.command]
    try:
        if args.selftest:
            result, ok = run_selftest(args.command)
            elapsed = None
        else:
            (result, elapsed), ok = _timed(lambda: fn(args), args), True
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=stderr)
        return 1
    except (PreconditionError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    conf = _config(args)
    if elapsed is not None:
        conf["millis"] = elapsed
    stdout.write(emit(result, args.format, witnesses=args.witnesses, config=conf))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
