"""Command-line front end: classify, roots, construct, verify, flag, ncgb, quat."""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import construct as C
from .classify import Params, analyze, cubic_roots
from .exactnum import format_rat, parse_rat
from .matrix import Mat, block_diag
from .ncpoly import (
    PRESETS,
    format_poly,
    parse_poly,
    preset_system,
    saturation_membership,
    truncated_buchberger,
)

EXIT_OK, EXIT_FAIL, EXIT_BAD = 0, 1, 2


class UsageError(ValueError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _params(args) -> Params:
    return Params(parse_rat(args.alpha), parse_rat(args.beta), parse_rat(args.gamma))


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}i"
    return str(x)


# ---------- classify / roots ----------

def cmd_classify(args) -> int:
    an = analyze(_params(args))
    payload = {
        "params": {"alpha": _fmt(an.params.alpha), "beta": _fmt(an.params.beta), "gamma": _fmt(an.params.gamma)},
        "r": [_fmt(c) for c in an.cubic.coeffs],
        "delta": _fmt(an.delta),
        "dis": _fmt(an.dis),
        "sigma": _fmt(an.normalized.sigma),
        "tau": _fmt(an.normalized.tau),
        "tag": an.tag.value,
    }
    text = "\n".join([
        f"r(x) = {an.cubic}",
        f"delta = {payload['delta']}",
        f"dis = {payload['dis']}",
        f"sigma = {payload['sigma']}, tau = {payload['tau']}",
        f"tag: {an.tag.value}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_roots(args) -> int:
    an = analyze(_params(args))
    roots = cubic_roots(an.cubic)
    payload = {"numeric": [[z.real, z.imag] for z in roots.numeric],
               "exact": [str(x) for x in roots.exact] if roots.exact is not None else None}
    lines = [f"r(x) = {an.cubic}"]
    if roots.exact is not None:
        nf = next((x.field for x in roots.exact if hasattr(x, "field")), None)
        if nf is not None:
            payload["field"] = nf.to_json()
            lines.append("t has minimal polynomial " + " + ".join(
                f"{format_rat(c)}*t^{k}" for k, c in enumerate(nf.coeffs) if c))
    lines += [f"root {k + 1}: {_fmt(z)}" + (f"  (exact {roots.exact[k]})" if roots.exact is not None else "")
              for k, z in enumerate(roots.numeric)]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# ---------- construct ----------

def _perms(text: str | None, default: str) -> list[tuple[int, ...]]:
    text = text or default
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if len(chunk) != 3 or not chunk.isdigit():
            raise UsageError(f"bad permutation {chunk!r}; use three digits like 012")
        out.append(tuple(int(ch) for ch in chunk))
    return out


def _square_zero(k: int, blocks: int) -> Mat | None:
    """k x k matrix made of `blocks` copies of J2 followed by zeros."""
    if k == 0:
        if blocks:
            raise UsageError("nilpotent blocks requested for an empty block")
        return None
    if 2 * blocks > k:
        raise UsageError(f"{blocks} J2 blocks do not fit in size {k}")
    parts = [Mat.jordan(2)] * blocks
    if k - 2 * blocks:
        parts.append(Mat.zeros(k - 2 * blocks))
    return block_diag(*parts)


def _matrix_arg(text: str) -> Mat:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse matrix {text!r}") from exc
    if isinstance(rows, dict):
        return Mat.from_json(rows)
    return Mat([[parse_rat(str(x)) for x in r] for r in rows])


def _u_arg(text: str) -> Mat:
    re, _, im = text.partition(",")
    re, im = parse_rat(re), parse_rat(im or "0")
    return Mat([[re, im], [-im, re]])


def _random_conjugator(n: int, seed: int) -> Mat:
    return C.random_invertible(n, random.Random(seed))


def build_solution(args):
    case = args.case
    if case == "generic":
        assign = _perms(args.assign, "012")
        p = _random_conjugator(len(assign), args.seed) if args.conjugate else None
        return C.construct_generic(_params(args), assign, p, numeric=args.numeric)
    if case == "multiple-root":
        shape = C.IdempotentShape(args.phi, args.psi, args.theta,
                                _square_zero(args.psi, args.alphaN), _square_zero(args.theta, args.betaN),
                                _square_zero(args.phi, args.gammaN))
        return C.construct_idempotent_model(shape)
    if case == "half-sum":
        f = _perms(args.assign, "") if args.assign else []
        n = args.m + len(f)
        p = _random_conjugator(n, args.seed) if args.conjugate else None
        shape = C.HalfSumShape(args.m, f, parse_rat(args.sigma), p)
        return C.construct_half_sum(shape, numeric=args.numeric)
    if case in ("nil-n2", "nil-n3"):
        x = parse_rat(args.x) if args.x is not None else None
        y = parse_rat(args.y) if args.y is not None else None
        return C.construct_nilpotent(case[4:], x, y)
    if case == "nil-n9":
        return C.construct_nilpotent("n9")
    if case == "real-even":
        if args.u is not None:
            return C.construct_real_even(parse_rat(args.u), parse_rat(args.v), parse_rat(args.w), args.m or 1)
        return C.construct_real_even_from_params(_params(args), args.m or 1)
    if case == "solve-u":
        return C.solve_in_U(_u_arg(args.y1), _u_arg(args.y2), _u_arg(args.y3))
    if case == "sigma-generic":
        p = _matrix_arg(args.p) if args.p else None
        return C.construct_sigma_generic(parse_rat(args.u), parse_rat(args.v), parse_rat(args.w), p)
    if case == "sigma-pattern":
        return C.construct_sigma_pattern2()
    if case == "sigma-nonnil":
        return C.construct_sigma_nonnilpotent()
    if case == "tsys":
        m = args.m or 1
        z = _matrix_arg(args.z) if args.z else Mat.zeros(m)
        q = _matrix_arg(args.q) if args.q else Mat.zeros(m)
        return C.construct_tsys(m, z, q)
    raise UsageError(f"unknown case {case!r}")


def cmd_construct(args) -> int:
    sol = build_solution(args)
    data = C.solution_to_json(sol)
    blob = json.dumps(data, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(blob + "\n")
    if args.json:
        print(blob)
    else:
        lines = [f"{data['kind']} from {sol.constructor} (n = {sol.n})"]
        for name, m in sol.matrices().items():
            lines.append(f"{name} =\n{m.pretty()}")
        if args.out:
            lines.append(f"written to {args.out}")
        print("\n".join(lines))
    return EXIT_OK


# ---------- verify ----------

def _load_solution(path: str):
    with open(path) as fh:
        data = json.load(fh)
    return C.solution_from_json(data)


def _load_context(path: str) -> dict[str, Mat]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("context file must hold an object of matrices")
    return {k: Mat.from_json(v) for k, v in data.items()}


def cmd_verify(args) -> int:
    from . import verify as V

    sol = _load_solution(args.in_path)
    default = {"triple": "SYS", "quad": "SIGMA", "pair": "TSYS"}
    kind = "triple" if isinstance(sol, C.SolutionTriple) else "quad" if isinstance(sol, C.SolutionQuad) else "pair"
    rs = (args.relations or default[kind]).upper()
    if rs not in V.RELATION_SETS:
        raise UsageError(f"unknown relation set {rs}")
    context = _load_context(args.context) if args.context else None
    if context is None and args.implied_context:
        context = V.implied_context(sol)
    report = V.check_relations(sol, rs, context, case=args.case)
    _emit(args, report.to_json(), report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------- flag ----------

def cmd_flag(args) -> int:
    from . import nilflag as N

    sol = _load_solution(args.in_path)
    if not isinstance(sol, C.SolutionTriple):
        raise UsageError("flag analysis needs a triple")
    flag = N.semigroup_flag(sol)
    sig = N.signature(flag)
    basis = N.triangularizing_basis(sol, flag)
    alg = N.algebra_basis(sol)
    cen = N.center_basis(sol, alg)
    payload = {
        "length": flag.length,
        "signature": list(sig),
        "subspaces": [N.basis_labels(v) for v in flag.subspaces[1:-1]],
        "triangularizing_basis": N.basis_labels(basis),
        "algebra": {"dimension": alg.dimension, "basis": alg.labels},
        "center": {"dimension": cen.dimension, "basis": cen.labels},
    }
    try:
        w = N.varpi(sol)
        payload["varpi"] = {"value": format_rat(w.value), "bab_identity": w.bab_identity,
                            "a2b_identity": w.a2b_identity}
    except ValueError:
        payload["varpi"] = None
    lines = [f"flag length {flag.length}, signature {sig}"]
    for i, labels in enumerate(payload["subspaces"], 1):
        lines.append(f"V{i} = [{', '.join(labels)}]")
    lines.append(f"triangularizing basis: {', '.join(payload['triangularizing_basis'])}")
    lines.append(f"algebra dimension {alg.dimension}: {', '.join(alg.labels)}")
    lines.append(f"center dimension {cen.dimension}: {', '.join(cen.labels)}")
    if payload["varpi"]:
        v = payload["varpi"]
        lines.append(f"varpi = {v['value']} (identities hold: {v['bab_identity'] and v['a2b_identity']})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# ---------- ncgb ----------

def _read_targets(path: str):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise UsageError(f"no polynomials in {path}")
    return [parse_poly(ln) for ln in lines]


def cmd_ncgb(args) -> int:
    gens = preset_system(args.system)
    gb = truncated_buchberger(gens, args.maxdeg)
    payload = {
        "system": args.system,
        "maxdeg": args.maxdeg,
        "basis_size": len(gb.basis),
        "count_by_degree": {str(k): v for k, v in sorted(gb.element_count_by_degree.items())},
        "pending_above_bound": gb.pending_above_bound,
    }
    lines = [f"system {args.system}, degree bound {args.maxdeg}: {len(gb.basis)} basis elements",
             "by degree: " + ", ".join(f"{k}:{v}" for k, v in sorted(gb.element_count_by_degree.items()))]
    if args.show_basis:
        payload["basis"] = [format_poly(g) for g in gb.basis]
        lines += [f"  {format_poly(g)}" for g in gb.basis]
    code = EXIT_OK
    if args.reduce:
        targets = _read_targets(args.reduce)
        results = []
        for t in targets:
            if t.degree() > args.maxdeg:
                raise UsageError(f"target degree {t.degree()} exceeds --maxdeg {args.maxdeg}")
            r = gb.reduce(t)
            entry = {"target": format_poly(t), "reduces_to_zero": r.is_zero(), "normal_form": format_poly(r)}
            if not r.is_zero() and args.saturate:
                sat = saturation_membership([t], gens, args.maxdeg, args.saturate,
                                            args.maxdeg - t.degree(), gb=gb)[0]
                entry["saturation_power"] = sat.power
            results.append(entry)
            if r.is_zero():
                lines.append(f"{format_poly(t)}: reduces to 0")
            else:
                code = EXIT_FAIL
                msg = f"{format_poly(t)}: does not reduce to 0 (normal form {format_poly(r)})"
                if entry.get("saturation_power") is not None:
                    msg += f"; times {args.saturate}^{entry['saturation_power']} reduces to 0"
                lines.append(msg)
        payload["reductions"] = results
    _emit(args, payload, "\n".join(lines))
    return code


# ---------- quat ----------

def cmd_quat(args) -> int:
    from . import quat as Q

    verdict = Q.region_verdict(args.v1, args.v2)
    payload = {"verdict": verdict.to_json()}
    lines = [f"delta = {verdict.delta_value:.10g}, separator = {verdict.separator_value:.10g}",
             "on boundary: no verdict" if verdict.on_boundary else
             f"non-commuting solutions exist: {verdict.exists_noncommuting}"]
    code = EXIT_OK
    if args.solve:
        sols = Q.find_noncommuting(args.v1, args.v2, args.attempts, seed=args.seed)
        payload["solutions"] = [s.to_json() for s in sols]
        lines.append(f"found {len(sols)} solution classes (up to j,k rotation and sign flips)")
        for s in sols:
            lines.append(f"  a = {s.a}\n  b = {s.b}\n  c = {s.c}\n  residual {s.residual:.2e}")
        if verdict.exists_noncommuting is False and sols:
            lines.append("contradiction: solutions found outside the predicted region")
            code = EXIT_FAIL
        elif verdict.exists_noncommuting and not sols:
            lines.append("no solution found although the region predicts some")
            code = EXIT_FAIL
    _emit(args, payload, "\n".join(lines))
    return code


# ---------- parser ----------

def _add_params(p, required=True):
    p.add_argument("--alpha", required=required)
    p.add_argument("--beta", required=required)
    p.add_argument("--gamma", required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matsys", description="power-sum matrix systems toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=fn)
        return p

    p = add("classify", cmd_classify, "case tag and invariants of (alpha, beta, gamma)")
    _add_params(p)
    p = add("roots", cmd_roots, "roots of the annihilating cubic")
    _add_params(p)

    p = add("construct", cmd_construct, "emit an explicit solution as JSON")
    p.add_argument("--case", required=True, choices=[
        "generic", "multiple-root", "half-sum", "nil-n2", "nil-n3", "nil-n9", "real-even", "solve-u",
        "sigma-generic", "sigma-pattern", "sigma-nonnil", "tsys"])
    _add_params(p, required=False)
    p.add_argument("--assign", help="comma-separated permutations like 012,120")
    p.add_argument("--conjugate", action="store_true", help="conjugate by a seeded random integer matrix")
    p.add_argument("--numeric", action="store_true")
    for name in ("phi", "psi", "theta"):
        p.add_argument(f"--{name}", type=int, default=0)
    for name in ("alphaN", "betaN", "gammaN"):
        p.add_argument(f"--{name}", type=int, default=0, help="number of J2 blocks in this square-zero block")
    p.add_argument("--sigma", default="3")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--w")
    p.add_argument("--y1", default="0")
    p.add_argument("--y2", default="0")
    p.add_argument("--y3", default="0")
    p.add_argument("--p", help="2x2 conjugator as JSON rows")
    p.add_argument("--z", help="m x m matrix as JSON rows")
    p.add_argument("--q", help="m x m matrix as JSON rows")
    p.add_argument("--out")

    p = add("verify", cmd_verify, "check a stored solution")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--relations")
    p.add_argument("--context", help="JSON object with matrices u, v, u2 or v3")
    p.add_argument("--implied-context", action="store_true",
                   help="take u2, v3 from the power sums of the solution itself")
    p.add_argument("--case", type=int, default=1, choices=(1, 2))

    p = add("flag", cmd_flag, "flag, algebra and center of a nilpotent solution")
    p.add_argument("--in", dest="in_path", required=True)

    p = add("ncgb", cmd_ncgb, "truncated noncommutative Groebner basis of a preset system")
    p.add_argument("--system", required=True, choices=PRESETS)
    p.add_argument("--maxdeg", type=int, required=True)
    p.add_argument("--reduce", help="file with one polynomial per line")
    p.add_argument("--saturate", help="generator to multiply non-members by (e.g. u)")
    p.add_argument("--show-basis", action="store_true")

    p = add("quat", cmd_quat, "quaternion region test and solution search")
    p.add_argument("--v1", type=float, required=True)
    p.add_argument("--v2", type=float, required=True)
    p.add_argument("--solve", action="store_true")
    p.add_argument("--attempts", type=int, default=400)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError, OSError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
