"""Residual checks for solution triples, quads and the pair system ab + ba = I, b a^2 b = 0."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .exactnum import J_FIELD, scalar_to_json
from .matrix import CC, Mat
from .ncpoly import (
    DEFAULT_TABLE,
    NCPoly,
    RELATIONS_21_FIRST,
    RELATIONS_21_SECOND,
    RELATIONS_41,
    RELATIONS_51,
    parse_poly,
    degree4_word_targets,
    degree5_word_targets,
)

NUMERIC_TOL = 1e-9

RELATION_SETS = ("SYS", "R21", "R41", "R51", "THM4_DEG4", "THM4_DEG5", "SIGMA", "TSYS", "PATTERN_721")


class MissingContextError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass
class IdentityStatus:
    name: str
    residual: Mat

    @property
    def numeric(self) -> bool:
        return self.residual.field is CC

    @property
    def norm(self) -> float:
        return self.residual.max_abs()

    @property
    def ok(self) -> bool:
        if self.numeric:
            return self.norm <= NUMERIC_TOL
        return self.residual.is_zero()

    @property
    def status(self) -> str:
        if self.ok:
            return "exact-zero" if not self.numeric else "numeric-zero"
        return "residual"

    def nonzero_entries(self) -> list[tuple[int, int, object]]:
        r = self.residual
        return [(i, j, r[i, j]) for i in range(r.nrows) for j in range(r.ncols)
                if not _entry_zero(r[i, j], r.field)]

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.numeric:
            out["norm"] = self.norm
        if not self.ok:
            out["nonzero"] = [[i + 1, j + 1, scalar_to_json(x)] for i, j, x in self.nonzero_entries()]
        return out


def _entry_zero(x, fld) -> bool:
    return abs(x) <= NUMERIC_TOL if fld is CC else not x


@dataclass
class Report:
    relation_set: str
    items: list[IdentityStatus] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(it.ok for it in self.items)

    def failures(self) -> list[IdentityStatus]:
        return [it for it in self.items if not it.ok]

    def __getitem__(self, name: str) -> IdentityStatus:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"relations": self.relation_set, "pass": self.passed,
                "identities": [it.to_json() for it in self.items]}

    def summary(self) -> str:
        lines = [f"{self.relation_set}: {'pass' if self.passed else 'FAIL'}"]
        for it in self.items:
            extra = f" (max |entry| {it.norm:.2e})" if it.numeric else ""
            lines.append(f"  {it.name}: {it.status}{extra}")
            if not it.ok:
                for i, j, x in it.nonzero_entries()[:10]:
                    lines.append(f"    ({i + 1},{j + 1}) = {x}")
        return "\n".join(lines)


def _same_size(mats: Mapping[str, Mat]) -> int:
    sizes = {m.shape for m in mats.values()}
    if len(sizes) != 1:
        raise ValueError(f"size mismatch among {sorted(mats)}: {sorted(sizes)}")
    n, k = sizes.pop()
    if n != k:
        raise ValueError("matrices must be square")
    return n


def _report(name: str, checks: list[tuple[str, Callable[[], Mat]]]) -> Report:
    return Report(name, [IdentityStatus(label, fn()) for label, fn in checks])


def _identity_like(m: Mat) -> Mat:
    return Mat.identity(m.nrows, m.field)


# ---------- the system itself ----------

def check_system(t) -> Report:
    """a+b+c = alpha I, a^2+b^2+c^2 = beta I, a^3+b^3+c^3 = gamma I."""
    a, b, c = t.a, t.b, t.c
    n = _same_size({"a": a, "b": b, "c": c})
    alpha, beta, gamma = t.params.as_tuple()
    s1 = a + b + c
    s2 = a @ a + b @ b + c @ c
    s3 = a @ a @ a + b @ b @ b + c @ c @ c

    def scalar(x):
        return Mat.scalar(n, complex(x), CC) if isinstance(x, (complex, float)) else Mat.scalar(n, x, None)

    return _report("SYS", [
        ("a+b+c=alpha", lambda: s1 - scalar(alpha)),
        ("a^2+b^2+c^2=beta", lambda: s2 - scalar(beta)),
        ("a^3+b^3+c^3=gamma", lambda: s3 - scalar(gamma)),
    ])


# ---------- polynomial relations ----------

def implied_context(t) -> dict[str, Mat]:
    """u^2 and v^3 read off from the triple itself: the right-hand sides of the power-sum equations."""
    a, b, c = t.a, t.b, t.c
    return {"u2": a @ a + b @ b + c @ c, "v3": a @ a @ a + b @ b @ b + c @ c @ c}


def _normalize_context(context: Mapping[str, Mat] | None) -> dict[str, Mat]:
    ctx = dict(context or {})
    unknown = set(ctx) - {"u", "v", "u2", "v3"}
    if unknown:
        raise ValueError(f"unknown context keys {sorted(unknown)}")
    if "u" in ctx and "u2" not in ctx:
        ctx["u2"] = ctx["u"] @ ctx["u"]
    if "v" in ctx and "v3" not in ctx:
        ctx["v3"] = ctx["v"] @ ctx["v"] @ ctx["v"]
    return ctx


def _runs(word) -> list[tuple[int, int]]:
    out: list[list[int]] = []
    for g in word:
        if out and out[-1][0] == g:
            out[-1][1] += 1
        else:
            out.append([g, 1])
    return [(g, k) for g, k in out]


def evaluate_relation(p: NCPoly, values: Mapping[str, Mat], context: Mapping[str, Mat] | None = None) -> Mat:
    """Evaluate p, letting runs u^(2k) and v^(3k) use the context values u2, v3 when u, v are absent."""
    ctx = _normalize_context(context)
    env = dict(values)
    env.update({k: ctx[k] for k in ("u", "v") if k in ctx})
    ref = next(iter(values.values()))
    one = _identity_like(ref)
    total = None
    table = p.table
    for w, coeff in p.terms.items():
        acc = one
        for g, k in _runs(w):
            name = table.gens[g].name
            if name in env:
                piece = env[name] ** k
            elif name == "u" and "u2" in ctx:
                if k % 2:
                    raise MissingContextError("odd power of u needs u itself in the context")
                piece = ctx["u2"] ** (k // 2)
            elif name == "v" and "v3" in ctx:
                if k % 3:
                    raise MissingContextError("power of v not divisible by 3 needs v itself in the context")
                piece = ctx["v3"] ** (k // 3)
            else:
                raise MissingContextError(f"relation uses {name!r} but no value was supplied")
            acc = acc @ piece
        term = acc * coeff
        total = term if total is None else total + term
    return total if total is not None else one * 0


def _commutes(x: Mat, y: Mat) -> bool:
    return (x @ y - y @ x).is_zero()


def check_relations(t, rs: str, context: Mapping[str, Mat] | None = None, case: int = 1) -> Report:
    """Evaluate one named relation family on a triple (or quad / pair for SIGMA, PATTERN_721, TSYS)."""
    rs = rs.upper()
    if rs == "SYS":
        return check_system(t)
    if rs == "SIGMA":
        return check_sigma(t)
    if rs == "PATTERN_721":
        return check_pattern721(t)
    if rs == "TSYS":
        return check_tsys(t.a, t.b)
    if rs == "THM4_DEG4":
        return check_nilpotent_monomials(t, degrees=(4,))
    if rs == "THM4_DEG5":
        return check_nilpotent_monomials(t, degrees=(5,))
    mats = {"a": t.a, "b": t.b, "c": t.c}
    _same_size(mats)
    ctx = _normalize_context(context)
    if rs == "R51":
        table = RELATIONS_51
    elif rs == "R41":
        table = RELATIONS_41
        _require(ctx, ("u2",))
        _require_commuting(mats, ctx["u2"], "u^2")
        if "u" in ctx:
            _require_commuting(mats, ctx["u"], "u")
    elif rs == "R21":
        _require(ctx, ("u2", "v3"))
        if case == 1:
            table = RELATIONS_21_FIRST
            _require_commuting(mats, ctx["u2"], "u^2")
            _require_commuting(mats, ctx["v3"], "v^3")
            if not ctx["v3"].is_invertible():
                raise PreconditionError("first case needs v invertible")
        elif case == 2:
            table = RELATIONS_21_SECOND
            _require_commuting(mats, ctx["v3"], "v^3")
        else:
            raise ValueError("case must be 1 or 2")
        if not _commutes(ctx["u2"], ctx["v3"]):
            raise PreconditionError("u^2 and v^3 must commute")
    else:
        raise ValueError(f"unknown relation set {rs!r}; choose from {', '.join(RELATION_SETS)}")
    checks = []
    for name, text in table.items():
        poly = parse_poly(text, DEFAULT_TABLE)
        checks.append((name, lambda poly=poly: evaluate_relation(poly, mats, ctx)))
    return _report(rs, checks)


def _require(ctx, keys):
    missing = [k for k in keys if k not in ctx]
    if missing:
        raise MissingContextError(f"context must supply {', '.join(missing)}")


def _require_commuting(mats: Mapping[str, Mat], x: Mat, label: str):
    for name, m in mats.items():
        if not _commutes(m, x):
            raise PreconditionError(f"{name} does not commute with {label}")


def check_nilpotent_monomials(t, degrees=(4, 5)) -> Report:
    """Degree-4 words in a, b against a^4 and the vanishing of every degree-5 word."""
    mats = {"a": t.a, "b": t.b}
    _same_size(mats)
    checks = []
    if 4 in degrees:
        for name, poly in degree4_word_targets().items():
            checks.append((name, lambda poly=poly: evaluate_relation(poly, mats)))
    if 5 in degrees:
        for name, poly in degree5_word_targets().items():
            checks.append((name, lambda poly=poly: evaluate_relation(poly, mats)))
    label = "MONOMIALS" if len(degrees) > 1 else f"THM4_DEG{degrees[0]}"
    return _report(label, checks)


# ---------- four unknowns and the pair system ----------

def check_sigma(q) -> Report:
    mats = q.matrices()
    n = _same_size(mats)
    checks = []
    for k, alpha in enumerate(q.alphas, 1):
        def resid(k=k, alpha=alpha):
            s = sum((m ** k for m in list(mats.values())[1:]), mats["a"] ** k)
            return s - Mat.scalar(n, alpha, None if not isinstance(alpha, complex) else CC)
        checks.append((f"power sum {k}", resid))
    return _report("SIGMA", checks)


def check_pattern721(q) -> Report:
    """a+b+c+d = 0, a^2 = I, b^2 = jI, c^2 = j^2 I, d^2 = 0, a + jb + j^2 c = 0."""
    a, b, c, d = q.a, q.b, q.c, q.d
    n = _same_size(q.matrices())
    if a.field != J_FIELD:
        raise PreconditionError("pattern check needs matrices over Q(j)")
    j = J_FIELD.gen()
    eye = Mat.identity(n, J_FIELD)
    return _report("PATTERN_721", [
        ("a+b+c+d=0", lambda: a + b + c + d),
        ("a^2=I", lambda: a @ a - eye),
        ("b^2=jI", lambda: b @ b - eye * j),
        ("c^2=j^2I", lambda: c @ c - eye * (j * j)),
        ("d^2=0", lambda: d @ d),
        ("a+jb+j^2c=0", lambda: a + b * j + c * (j * j)),
    ])


def check_tsys(a: Mat, b: Mat) -> Report:
    n = _same_size({"a": a, "b": b})
    return _report("TSYS", [
        ("ab+ba=I", lambda: a @ b + b @ a - Mat.identity(n, a.field)),
        ("ba^2b=0", lambda: b @ a @ a @ b),
    ])


# ---------- structural checks ----------

@dataclass
class NilpotencyResult:
    is_nilpotent: bool
    commutator: Mat
    witness: Mat  # [a,b]^n; nonzero exactly when the triple is not simultaneously triangularizable

    @property
    def verdict(self) -> str:
        return "inconclusive" if self.is_nilpotent else "not-ST"


def commutator_nilpotency(t) -> NilpotencyResult:
    k = t.a @ t.b - t.b @ t.a
    w = k ** k.nrows
    return NilpotencyResult(w.is_zero(), k, w)


def projector_sum_check(t) -> bool:
    """a^2, b^2, c^2 are projectors summing to I."""
    sq = [m @ m for m in (t.a, t.b, t.c)]
    total = sq[0] + sq[1] + sq[2]
    return all(s.is_projector() for s in sq) and (total - Mat.identity(t.n, total.field)).is_zero()


def tsys_projector_check(a: Mat, b: Mat) -> bool:
    ab = a @ b
    return ab.is_projector() and ab.trace() * 2 == a.nrows


def perturb(m: Mat, i: int = 0, j: int = 0, delta=1) -> Mat:
    return m.with_entry(i, j, m[i, j] + (Fraction(delta) if m.field is not CC else complex(delta)))


# interface name
check_thm4_monomials = check_nilpotent_monomials
