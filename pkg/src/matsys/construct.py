"""Explicit solutions of the power-sum systems, one constructor per solution family."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import (
    CaseTag,
    Params,
    analyze,
    cardano,
    cubic_roots,
    normalize_multiple_root,
    power_sums_to_cubic,
)
from .exactnum import (
    J_FIELD,
    MinPoly,
    NFElem,
    embed_complex,
    field_constant,
    principal_root_index,
    radical_field,
    sqrt_field,
)
from .matrix import CC, QQ, Mat, block, block_diag, field_one, field_zero, kron

PERMUTATIONS_3 = tuple(itertools.permutations(range(3)))


@dataclass
class SolutionTriple:
    a: Mat
    b: Mat
    c: Mat
    params: Params
    tag: CaseTag | None = None
    constructor: str = ""

    @property
    def n(self) -> int:
        return self.a.nrows

    @property
    def field(self):
        return self.a.field

    def matrices(self) -> dict[str, Mat]:
        return {"a": self.a, "b": self.b, "c": self.c}

    def conjugated(self, p: Mat) -> "SolutionTriple":
        pinv = p.inverse()
        return SolutionTriple(p @ self.a @ pinv, p @ self.b @ pinv, p @ self.c @ pinv,
                              self.params, self.tag, self.constructor)


@dataclass
class SolutionQuad:
    a: Mat
    b: Mat
    c: Mat
    d: Mat
    alphas: tuple
    constructor: str = ""

    @property
    def n(self) -> int:
        return self.a.nrows

    def matrices(self) -> dict[str, Mat]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


@dataclass
class TsysPair:
    a: Mat
    b: Mat
    constructor: str = "tsys"

    @property
    def n(self) -> int:
        return self.a.nrows

    def matrices(self) -> dict[str, Mat]:
        return {"a": self.a, "b": self.b}


def _common_field(values) -> object:
    f = QQ
    for v in values:
        if isinstance(v, NFElem):
            if f is not QQ and f != v.field:
                raise ValueError("values live in different number fields")
            f = v.field
        elif isinstance(v, (complex, float)):
            return CC
    return f


def _diagonal_triple(values: Sequence, assign: Sequence[Sequence[int]], fld) -> tuple[Mat, Mat, Mat]:
    cols = [[values[perm[k]] for perm in assign] for k in range(3)]
    return tuple(Mat.diag(col, fld) for col in cols)


def _check_perm(perm) -> tuple[int, int, int]:
    perm = tuple(perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"{perm} is not a permutation of (0, 1, 2)")
    return perm


# ---------- generic case ----------

def construct_generic(params: Params, assign: Sequence[Sequence[int]], p: Mat | None = None,
                      numeric: bool | None = None) -> SolutionTriple:
    """Simultaneously diagonalizable solution: coordinate i carries the roots of r permuted by assign[i]."""
    an = analyze(params)
    if an.tag is not CaseTag.GENERIC:
        raise ValueError(f"generic constructor needs tag Generic, got {an.tag.value}")
    roots = cubic_roots(an.cubic)
    assign = [_check_perm(x) for x in assign]
    if roots.exact is not None and not numeric:
        values = list(roots.exact)
        fld = _common_field(values)
    else:
        values = list(roots.numeric)
        fld = CC
    if len(set(map(str, values))) < 3 and fld is not CC:
        raise ValueError("r has a repeated root")
    a, b, c = _diagonal_triple(values, assign, fld)
    if p is not None:
        if fld is CC:
            p = p.to_numeric()
        pinv = p.inverse()
        a, b, c = p @ a @ pinv, p @ b @ pinv, p @ c @ pinv
    return SolutionTriple(a, b, c, an.params, CaseTag.GENERIC, "generic")


# ---------- multiple-root case ----------

@dataclass
class IdempotentShape:
    phi: int
    psi: int
    theta: int
    alphaN: Mat | None = None  # psi x psi, square zero
    betaN: Mat | None = None   # theta x theta, square zero
    gammaN: Mat | None = None  # phi x phi, square zero

    def __post_init__(self):
        if min(self.phi, self.psi, self.theta) < 0 or self.phi + self.psi + self.theta == 0:
            raise ValueError("block sizes must be nonnegative with positive sum")
        for name, size in (("alphaN", self.psi), ("betaN", self.theta), ("gammaN", self.phi)):
            m = getattr(self, name)
            if size == 0:
                if m is not None:
                    raise ValueError(f"{name} given for an empty block")
                continue
            if m is None:
                m = Mat.zeros(size)
                setattr(self, name, m)
            if m.shape != (size, size):
                raise ValueError(f"{name} must be {size}x{size}")
            if not (m @ m).is_zero():
                raise ValueError(f"{name} must have zero square")

    @property
    def n(self) -> int:
        return self.phi + self.psi + self.theta


def construct_idempotent_model(shape: IdempotentShape) -> SolutionTriple:
    """Block solution of the model system alpha = beta = gamma = 1."""
    def eye(k):
        return Mat.identity(k) if k else None

    def neg(m):
        return -m if m is not None else None

    a = block_diag(eye(shape.phi), shape.alphaN, shape.betaN)
    b = block_diag(shape.gammaN, eye(shape.psi), neg(shape.betaN))
    c = block_diag(neg(shape.gammaN), neg(shape.alphaN), eye(shape.theta))
    one = Fraction(1)
    return SolutionTriple(a, b, c, Params(one, one, one), CaseTag.MULTIPLE_ROOT, "idempotent-model")


def construct_multiple_root(params: Params, shape: IdempotentShape) -> SolutionTriple:
    """Transport a model-system solution to any MultipleRoot parameters via the normalizations."""
    model = construct_idempotent_model(shape)
    src = normalize_multiple_root(model.params)
    dst = normalize_multiple_root(params, src.field if not any(isinstance(x, NFElem) for x in params.as_tuple()) else None)
    if src.field != dst.field:
        raise ValueError("source and target normalizations live in different fields")
    ratio = src.factor / dst.factor
    if isinstance(ratio, NFElem) and ratio.is_rational():
        ratio = ratio.rational()
    n = shape.n
    fld = QQ if isinstance(ratio, Fraction) else dst.field
    shift_src = Mat.scalar(n, src.shift.rational() if src.shift.is_rational() else src.shift, None)
    shift_dst = dst.shift
    shift_dst = shift_dst.rational() if fld is QQ else shift_dst
    out = []
    for m in (model.a, model.b, model.c):
        out.append((m - shift_src) * ratio + Mat.scalar(n, shift_dst, fld))
    an = analyze(params)
    return SolutionTriple(*out, an.params, CaseTag.MULTIPLE_ROOT, "multiple-root")


# ---------- half-sum case ----------

@dataclass
class HalfSumShape:
    m: int
    f_assign: list = field(default_factory=list)  # permutations of (0, s, -s), s = sqrt(sigma/2)
    sigma: Fraction = Fraction(3)
    conjugator: Mat | None = None

    def __post_init__(self):
        if self.m < 0 or self.m % 2:
            raise ValueError("dimension of the non-commuting block must be even")
        self.f_assign = [_check_perm(x) for x in self.f_assign]
        self.sigma = Fraction(self.sigma)
        if self.sigma == 0:
            raise ValueError("sigma must be nonzero")
        if self.m + len(self.f_assign) == 0:
            raise ValueError("empty shape")

    @property
    def n(self) -> int:
        return self.m + len(self.f_assign)


def construct_half_sum(shape: HalfSumShape, numeric: bool = False) -> SolutionTriple:
    """E (+) F solution of a+b+c = 0, a^2+b^2+c^2 = sigma I, a^3+b^3+c^3 = 0."""
    sigma = shape.sigma
    needed = []
    if shape.m:
        needed += [sigma / 3, Fraction(3)]
    if shape.f_assign:
        needed.append(sigma / 2)
    try:
        fld, roots = radical_field(needed)
    except ValueError:
        if not numeric:
            raise
        fld, roots = None, {}
    if numeric:
        fld = CC
        roots = {q: complex(float(q)) ** 0.5 for q in needed}
    fld = fld if fld is not None else QQ
    blocks_a, blocks_b, blocks_c = [], [], []
    if shape.m:
        r = roots[sigma / 3]
        s3 = roots[Fraction(3)]
        half = Fraction(1, 2)
        base_a = Mat([[1, 0], [0, -1]], fld) * r
        base_b = Mat([[-half, s3 * half], [s3 * half, half]], fld) * r
        base_c = -base_a - base_b
        eye = Mat.identity(shape.m // 2, fld)
        blocks_a.append(kron(base_a, eye))
        blocks_b.append(kron(base_b, eye))
        blocks_c.append(kron(base_c, eye))
    if shape.f_assign:
        s = roots[sigma / 2]
        values = [field_zero(fld) if fld is not CC else 0j, s, -s]
        fa, fb, fc = _diagonal_triple(values, shape.f_assign, fld)
        blocks_a.append(fa)
        blocks_b.append(fb)
        blocks_c.append(fc)
    a, b, c = block_diag(*blocks_a), block_diag(*blocks_b), block_diag(*blocks_c)
    if shape.conjugator is not None:
        p = shape.conjugator.to_numeric() if fld is CC else shape.conjugator
        pinv = p.inverse()
        a, b, c = p @ a @ pinv, p @ b @ pinv, p @ c @ pinv
    zero = Fraction(0)
    return SolutionTriple(a, b, c, Params(zero, sigma, zero), CaseTag.HALF_SUM, "half-sum")


# ---------- nilpotent case ----------

# the 9x9 b paired with a = diag(J5, J3, 0)
_N9_B = [
    [0, "-1/2", 0, 0, 0, "3/4", 0, 0, 0],
    [0, 0, "-1/2", 0, 0, 0, "-9/4", 0, 1],
    [0, 0, 0, "-1/2", 0, 0, 0, "3/4", 0],
    [0, 0, 0, 0, "-1/2", 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, "-1/2", 0, 0],
    [0, 0, 0, 3, 0, 0, 0, "-1/2", 0],
    [0, 0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 6, 0, 0, 0, 0, 0],
]


def n9_a() -> Mat:
    return block_diag(Mat.jordan(5), Mat.jordan(3), Mat.zeros(1))


def n9_b() -> Mat:
    return Mat([[Fraction(x) for x in row] for row in _N9_B])


def construct_nilpotent(family: str, x=None, y=None) -> SolutionTriple:
    """Solutions with all right-hand sides zero: families n2(alpha, beta), n3(x, y), n9."""
    zero = Fraction(0)
    if family == "n2":
        alpha = Fraction(1 if x is None else x)
        beta = Fraction(1 if y is None else y)
        a, b = Mat.jordan(2) * alpha, Mat.jordan(2) * beta
    elif family == "n3":
        x = Fraction(1 if x is None else x)
        y = Fraction(0 if y is None else y)
        if x == Fraction(-1, 2) or x * x + x + 1 == 0:
            raise ValueError("n3 family needs x != -1/2 and x^2 + x + 1 != 0")
        a = Mat.jordan(3)
        b = Mat([[0, x, y], [0, 0, (-2 - x) / (2 * x + 1)], [0, 0, 0]])
    elif family == "n9":
        a, b = n9_a(), n9_b()
    else:
        raise ValueError(f"unknown nilpotent family {family!r}")
    return SolutionTriple(a, b, -a - b, Params(zero, zero, zero), CaseTag.NILPOTENT, f"nilpotent-{family}")


# ---------- real forms ----------

def real_root_data(params: Params) -> tuple[float, float, float]:
    """(u, v, w) with u the real root of r and v +- i w the complex pair (w > 0)."""
    an = analyze(params)
    if any(isinstance(x, NFElem) for x in params.as_tuple()):
        raise ValueError("real forms need rational parameters")
    roots = cardano([complex(float(c)) for c in an.cubic.coeffs])
    real = [z for z in roots if abs(z.imag) <= 1e-12 * (1 + abs(z))]
    if len(real) != 1:
        raise ValueError("r has three real roots; use the generic or half-sum constructors")
    cplx = [z for z in roots if abs(z.imag) > 1e-12 * (1 + abs(z))]
    return real[0].real, cplx[0].real, abs(cplx[0].imag)


def construct_real_even(u, v, w, m: int = 1) -> SolutionTriple:
    """Real solution of size 2m from one real root u and a complex pair v +- i w."""
    if m < 1:
        raise ValueError("m must be positive")
    if w == 0:
        raise ValueError("w must be nonzero")
    exact = all(isinstance(t, (int, Fraction)) for t in (u, v, w))
    fld = QQ if exact else CC
    conv = Fraction if exact else complex
    u, v, w = conv(u), conv(v), conv(w)
    a = Mat.scalar(2, u, fld)
    b = Mat([[v, w], [-w, v]], fld)
    c = Mat([[v, -w], [w, v]], fld)
    eye = Mat.identity(m, fld)
    a, b, c = kron(a, eye), kron(b, eye), kron(c, eye)
    params = Params(u + 2 * v, u * u + 2 * (v * v - w * w), u ** 3 + 2 * (v ** 3 - 3 * v * w * w))
    if not exact:
        params = Params(*(z.real for z in params.as_tuple()))
    return SolutionTriple(a, b, c, params, None, "real-even")


def construct_real_even_from_params(params: Params, m: int = 1) -> SolutionTriple:
    u, v, w = real_root_data(params)
    sol = construct_real_even(u, v, w, m)
    sol.params = params
    return sol


def _u_to_complex(m: Mat) -> complex:
    if m.shape != (2, 2):
        raise ValueError("elements of U are 2x2")
    y, z = m[0, 0], m[0, 1]
    if m[1, 1] != y or m[1, 0] != -z:
        raise ValueError("matrix is not of the form (y z; -z y)")
    return y, z


def _complex_to_u(re, im, fld) -> Mat:
    return Mat([[re, im], [-im, re]], fld)


def solve_in_U(y1: Mat, y2: Mat, y3: Mat) -> SolutionTriple:
    """Unique (up to order) solution inside U = {(y z; -z y)} for right-hand sides in U."""
    data = [_u_to_complex(m) for m in (y1, y2, y3)]
    real_rhs = all(not z for _, z in data) and all(isinstance(y, Fraction) for y, _ in data)
    if real_rhs:
        cubic = power_sums_to_cubic(*(Fraction(y) for y, _ in data))
        roots = cubic_roots(cubic)
        parts = _exact_real_imag(roots.exact) if roots.exact is not None else None
        if parts is not None:
            fld, pieces = parts
            mats = [_complex_to_u(re, im, fld) for re, im in pieces]
            return SolutionTriple(*mats, Params(*(y for y, _ in data)), None, "solve-u")
    ps = [complex(float(y), float(z)) if not isinstance(y, complex) else complex(y) + 1j * complex(z)
          for y, z in data]
    cubic = power_sums_to_cubic(*ps)
    roots = cardano(cubic.coeffs)
    mats = [_complex_to_u(r.real, r.imag, CC) for r in roots]
    return SolutionTriple(*mats, Params(*ps), None, "solve-u")


def _exact_real_imag(exact):
    """Split exact roots (rational or in Q(sqrt d)) into real and imaginary parts over one field."""
    nf = [x for x in exact if isinstance(x, NFElem)]
    if not nf:
        return QQ, [(Fraction(x), Fraction(0)) for x in exact]
    d = -nf[0].field.coeffs[0]
    if d > 0:
        fld = nf[0].field
        return fld, [(x if isinstance(x, NFElem) else NFElem(fld, [x]), NFElem(fld, [])) for x in exact]
    # sqrt(d) = i sqrt(|d|)
    k = -d
    fld = QQ if k == 1 else sqrt_field(int(k))
    root = Fraction(1) if k == 1 else fld.gen()
    out = []
    for x in exact:
        if isinstance(x, NFElem):
            re, im = x.coeffs[0], x.coeffs[1] * root
        else:
            re, im = Fraction(x), Fraction(0)
        out.append((re, im))
    return fld, out


# ---------- four unknowns ----------

def _power_sums(values, kmax=4):
    return tuple(sum((v ** k for v in values), values[0] * 0) for k in range(1, kmax + 1))


def construct_sigma_generic(u, v, w, p: Mat | None = None) -> SolutionQuad:
    """n = 2 solution from r(x) = (x^2 + u x + v)(x^2 - u x + w)."""
    u, v, w = Fraction(u), Fraction(v), Fraction(w)
    d1, d2 = u * u - 4 * v, u * u - 4 * w
    fld, roots = radical_field([d1, d2])
    fld = fld or QQ
    s1, s2 = roots[d1], roots[d2]
    r1, r2 = (-u - s1) / 2, (-u + s1) / 2
    r3, r4 = (u - s2) / 2, (u + s2) / 2
    p = p if p is not None else Mat.identity(2)
    if not p.is_invertible():
        raise ValueError("p must be invertible")
    pinv = p.inverse()
    a = Mat.diag([r1, r2], fld)
    c = Mat.diag([r2, r1], fld)
    b = pinv @ Mat.diag([r3, r4], fld) @ p
    d = pinv @ Mat.diag([r4, r3], fld) @ p
    alphas = _power_sums([r1, r2, r3, r4])
    alphas = tuple(x.rational() if isinstance(x, NFElem) and x.is_rational() else x for x in alphas)
    return SolutionQuad(a, b, c, d, alphas, "sigma-generic")


def construct_sigma_pattern2() -> SolutionQuad:
    """n = 2 solution with vanishing power sums: a^2 = I, b^2 = jI, c^2 = j^2 I, d^2 = 0."""
    j = J_FIELD.gen()
    h = Fraction(1, 2)
    a = Mat([[1, 0], [0, -1]], J_FIELD)
    b = Mat([[-(j * j) * h, (j - 1) * h], [(1 - j) * h, j * j * h]], J_FIELD)
    c = b.map(lambda x: x.conjugate_by(j * j), J_FIELD)
    d = Mat([[Fraction(-3, 2), Fraction(3, 2)], [Fraction(-3, 2), Fraction(3, 2)]], J_FIELD)
    zero = Fraction(0)
    return SolutionQuad(a, b, c, d, (zero,) * 4, "sigma-pattern")


def construct_sigma_nonnilpotent() -> SolutionQuad:
    """n = 4 solution with no nilpotent slot: pattern (a,b,c,d) (+) its cyclic shift (b,c,d,a)."""
    q = construct_sigma_pattern2()
    a = block_diag(q.a, q.b)
    b = block_diag(q.b, q.c)
    c = block_diag(q.c, q.d)
    d = block_diag(q.d, q.a)
    return SolutionQuad(a, b, c, d, q.alphas, "sigma-nonnil")


# ---------- the system ab + ba = I, b a^2 b = 0 ----------

def construct_tsys(m: int, z: Mat, q: Mat) -> TsysPair:
    if z.shape != (m, m) or q.shape != (m, m):
        raise ValueError("z and q must be m x m")
    if not (z @ q).is_zero() or not (q @ z).is_zero():
        raise ValueError("need zq = qz = 0")
    fld = z.field if z.field is not QQ else q.field
    eye, zero = Mat.identity(m, fld), Mat.zeros(m, m, fld)
    a = block([[zero, eye], [z, zero]])
    b = block([[zero, q], [eye, zero]])
    return TsysPair(a, b)


@dataclass
class TsysCanonical:
    m: int
    z: Mat
    q: Mat
    change_of_basis: Mat  # P with P^-1 a P = (0 I; z 0), P^-1 b P = (0 q; I 0)


def tsys_residuals(a: Mat, b: Mat) -> tuple[Mat, Mat]:
    n = a.nrows
    return a @ b + b @ a - Mat.identity(n, a.field), b @ a @ a @ b


def canonicalize_tsys(a: Mat, b: Mat) -> TsysCanonical:
    from .matrix import kernel_basis, span_basis, submatrix

    n = a.nrows
    if n % 2:
        raise ValueError("n must be even")
    r1, r2 = tsys_residuals(a, b)
    if not (r1.is_zero() and r2.is_zero()):
        raise ValueError("(a, b) does not satisfy ab + ba = I, b a^2 b = 0")
    m = n // 2
    ab = a @ b
    if not ab.is_projector() or ab.rank() != m:
        raise ValueError("ab is not a projector of rank n/2")
    image = span_basis(ab.columns(), n, ab.field)
    kernel = kernel_basis(ab)
    s = Mat.from_columns(image + kernel, ab.field)
    sinv = s.inverse()
    a1, b1 = sinv @ a @ s, sinv @ b @ s
    top, bot = list(range(m)), list(range(m, n))
    x, y = submatrix(a1, top, top), submatrix(a1, top, bot)
    z, t = submatrix(a1, bot, top), submatrix(a1, bot, bot)
    if not (x.is_zero() and t.is_zero()):
        raise AssertionError("diagonal blocks of a do not vanish")
    q = submatrix(b1, top, bot)
    yinv = y.inverse()
    qmat = block_diag(y, Mat.identity(m, ab.field))
    p = s @ qmat
    return TsysCanonical(m, z @ y, yinv @ q, p)


def random_invertible(n: int, rng, lo: int = -3, hi: int = 3) -> Mat:
    while True:
        p = Mat([[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)])
        if p.is_invertible():
            return p


def square_zero_blocks(k: int) -> list[Mat]:
    """Zero-square k x k matrices used for shape sweeps: 0, J2-type sums and E_1k."""
    if k == 0:
        return [None]
    out = [Mat.zeros(k)]
    if k >= 2:
        out.append(block_diag(Mat.jordan(2), Mat.zeros(k - 2)) if k > 2 else Mat.jordan(2))
        out.append(Mat.unit(k, 0, k - 1))
    if k >= 4:
        out.append(block_diag(Mat.jordan(2), Mat.jordan(2), *( [Mat.zeros(k - 4)] if k > 4 else [])))
    return out


# ---------- JSON ----------

def _field_of_json(data: dict):
    from .matrix import Mat as _M

    probe = next(iter(data["matrices"].values()))
    return _M.from_json(probe).field


def _scalar_out(x):
    from .exactnum import scalar_to_json

    return scalar_to_json(x)


def _scalar_in(x, fld):
    from .exactnum import scalar_from_json

    if fld is CC:
        return scalar_from_json(x, numeric=True)
    if isinstance(fld, MinPoly):
        value = scalar_from_json(x, fld)
        return value.rational() if value.is_rational() else value
    return scalar_from_json(x)


def solution_to_json(sol) -> dict:
    mats = {k: m.to_json() for k, m in sol.matrices().items()}
    if isinstance(sol, SolutionTriple):
        return {
            "kind": "triple",
            "params": {k: _scalar_out(v) for k, v in zip(("alpha", "beta", "gamma"), sol.params.as_tuple())},
            "tag": sol.tag.value if sol.tag is not None else None,
            "constructor": sol.constructor,
            "matrices": mats,
        }
    if isinstance(sol, SolutionQuad):
        return {"kind": "quad", "alphas": [_scalar_out(x) for x in sol.alphas],
                "constructor": sol.constructor, "matrices": mats}
    if isinstance(sol, TsysPair):
        return {"kind": "pair", "constructor": sol.constructor, "matrices": mats}
    raise TypeError(f"cannot serialize {type(sol).__name__}")


def solution_from_json(data: dict):
    try:
        kind = data["kind"]
        raw = data["matrices"]
        mats = {k: Mat.from_json(v) for k, v in raw.items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed solution JSON: {exc}") from exc
    fld = next(iter(mats.values())).field
    if any(m.field != fld for m in mats.values()):
        raise ValueError("matrices live in different fields")
    try:
        if kind == "triple":
            params = Params(*(_scalar_in(data["params"][k], fld) for k in ("alpha", "beta", "gamma")))
            tag = CaseTag(data["tag"]) if data.get("tag") else None
            return SolutionTriple(mats["a"], mats["b"], mats["c"], params, tag, data.get("constructor", ""))
        if kind == "quad":
            alphas = tuple(_scalar_in(x, fld) for x in data["alphas"])
            if len(alphas) != 4:
                raise ValueError("quad needs four power sums")
            return SolutionQuad(mats["a"], mats["b"], mats["c"], mats["d"], alphas, data.get("constructor", ""))
        if kind == "pair":
            return TsysPair(mats["a"], mats["b"], data.get("constructor", "tsys"))
    except KeyError as exc:
        raise ValueError(f"malformed solution JSON: missing {exc}") from exc
    raise ValueError(f"unknown solution kind {kind!r}")


# interface names
Theorem2Shape = IdempotentShape
construct_theorem2 = construct_idempotent_model
Theorem3Shape = HalfSumShape
construct_theorem3 = construct_half_sum
