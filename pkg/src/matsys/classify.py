"""Parameter analysis for the power-sum system a+b+c, a^2+b^2+c^2, a^3+b^3+c^3 = (alpha, beta, gamma) I.

The commuting-case cubic is r(x) = 6x^3 - 6 alpha x^2 + (3 alpha^2 - 3 beta) x
+ 3 alpha beta - 2 gamma - alpha^3.  Its invariants ``delta`` and ``dis`` pick
one of four regimes, each handled by a different constructor.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactnum import (
    CBRT6_FIELD,
    J_CBRT6_FIELD,
    MinPoly,
    NFElem,
    cube_root_principal,
    embed_complex,
    field_constant,
    poly_divmod,
    poly_eval,
    principal_root_index,
    rational_roots,
    squarefree_part,
    sqrt_field,
)


class CaseTag(str, Enum):
    GENERIC = "Generic"
    MULTIPLE_ROOT = "MultipleRoot"
    HALF_SUM = "HalfSum"
    NILPOTENT = "Nilpotent"


@dataclass(frozen=True)
class Params:
    alpha: object
    beta: object
    gamma: object

    def as_tuple(self):
        return self.alpha, self.beta, self.gamma


@dataclass(frozen=True)
class Cubic:
    """Polynomial c0 + c1 x + c2 x^2 + c3 x^3 (coefficients low degree first)."""

    coeffs: tuple

    def __call__(self, x):
        return poly_eval(list(self.coeffs), x)

    @property
    def leading(self):
        return self.coeffs[3]

    def monic(self) -> "Cubic":
        lc = self.coeffs[3]
        return Cubic(tuple(c / lc for c in self.coeffs))

    def scaled(self, k) -> "Cubic":
        return Cubic(tuple(c * k for c in self.coeffs))

    def derivative(self) -> tuple:
        c = self.coeffs
        return (c[1], 2 * c[2], 3 * c[3])

    def is_rational(self) -> bool:
        return all(not isinstance(c, NFElem) or c.is_rational() for c in self.coeffs)

    def rational_coeffs(self) -> list[Fraction]:
        return [c.rational() if isinstance(c, NFElem) else Fraction(c) for c in self.coeffs]

    def __str__(self):
        names = ["", "x", "x^2", "x^3"]
        parts = []
        for k in (3, 2, 1, 0):
            c = self.coeffs[k]
            if not c:
                continue
            parts.append(f"({c})" + (f"*{names[k]}" if k else ""))
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class NormalizedParams:
    sigma: object
    tau: object


@dataclass(frozen=True)
class Analysis:
    params: Params
    cubic: Cubic
    dis: object
    delta: object
    normalized: NormalizedParams
    tag: CaseTag


def _rat(x):
    return x if isinstance(x, NFElem) else Fraction(x)


def r_cubic(p: Params) -> Cubic:
    a, b, g = p.as_tuple()
    return Cubic((3 * a * b - 2 * g - a ** 3, 3 * a ** 2 - 3 * b, -6 * a, _six(a)))


def _six(like):
    return like * 0 + 6


def dis_sextic(p: Params):
    """dis(r) as the explicit sextic in (alpha, beta, gamma)."""
    a, b, g = p.as_tuple()
    return (9 * a ** 4 * b - 8 * a ** 3 * g - 21 * a ** 2 * b ** 2 + 36 * a * b * g
            - 18 * g ** 2 - a ** 6 + 3 * b ** 3)


def delta_of(p: Params):
    a, b, g = (_rat(x) for x in p.as_tuple())
    return 2 * a ** 3 - 9 * a * b + 9 * g


def normalized_of(p: Params) -> NormalizedParams:
    """(sigma, tau) of the shifted system a -> a - alpha/3 I."""
    a, b, _ = (_rat(x) for x in p.as_tuple())
    return NormalizedParams(b - a * a / 3, delta_of(p) / 9)


def standard_discriminant(c: Cubic):
    """18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 for ax^3 + bx^2 + cx + d."""
    d, cc, b, a = c.coeffs
    return 18 * a * b * cc * d - 4 * b ** 3 * d + b ** 2 * cc ** 2 - 4 * a * cc ** 3 - 27 * a ** 2 * d ** 2


def _normalized_form(sigma, tau):
    return sigma ** 3 - 6 * tau ** 2


def _dis_constant() -> Fraction:
    # one evaluation at a point where the normalized form is nonzero fixes the factor
    probe = Params(Fraction(0), Fraction(0), Fraction(1))
    nz = normalized_of(probe)
    return Fraction(dis_sextic(probe)) / _normalized_form(nz.sigma, nz.tau)


DIS_CONSTANT = _dis_constant()
# the standard cubic discriminant of r equals STANDARD_FACTOR * dis
STANDARD_FACTOR = 216


def analyze(p: Params) -> Analysis:
    p = Params(*(_rat(x) for x in p.as_tuple()))
    cubic = r_cubic(p)
    dis = dis_sextic(p)
    norm = normalized_of(p)
    if dis != DIS_CONSTANT * _normalized_form(norm.sigma, norm.tau):
        raise AssertionError("sextic discriminant disagrees with the normalized form")
    if standard_discriminant(cubic) != STANDARD_FACTOR * dis:
        raise AssertionError("sextic discriminant disagrees with the cubic discriminant")
    delta = delta_of(p)
    if delta != 9 * norm.tau:
        raise AssertionError("delta != 9 tau")
    tag = _tag(delta, dis)
    return Analysis(p, cubic, dis, delta, norm, tag)


def _tag(delta, dis) -> CaseTag:
    if delta:
        return CaseTag.GENERIC if dis else CaseTag.MULTIPLE_ROOT
    return CaseTag.HALF_SUM if dis else CaseTag.NILPOTENT


# ---------- roots ----------

@dataclass(frozen=True)
class CubicRoots:
    numeric: tuple[complex, complex, complex]
    # exact roots (with multiplicity, same order as ``numeric``) when r splits far enough
    exact: tuple | None = None


def _sort_key(z: complex):
    return (round(z.real, 9), round(z.imag, 9))


def cardano(coeffs) -> list[complex]:
    """Numeric roots of c0 + c1 x + c2 x^2 + c3 x^3 via Cardano, principal cube roots."""
    c0, c1, c2, c3 = (complex(c) for c in coeffs)
    if c3 == 0:
        raise ValueError("leading coefficient is zero")
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    shift = -b / 3
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    if abs(p) < 1e-300 and abs(q) < 1e-300:
        ys = [0j, 0j, 0j]
    else:
        disc = cmath.sqrt(q * q / 4 + p ** 3 / 27)
        w = -q / 2 + disc
        if abs(w) < 1e-14 * (abs(q) + 1):
            w = -q / 2 - disc
        u = cube_root_principal(w)
        omega = complex(-0.5, 3 ** 0.5 / 2)
        if u == 0:
            # both branches vanished: p and q are rounding noise around a triple root
            ys = [0j, 0j, 0j]
        else:
            ys = [u * omega ** k - p / (3 * u * omega ** k) for k in range(3)]
    roots = []
    coeffs_c = [c0, c1, c2, c3]
    deriv = [c1, 2 * c2, 3 * c3]
    for y in ys:
        z = y + shift
        for _ in range(2):
            dz = poly_eval(deriv, z)
            if abs(dz) < 1e-12:
                break
            step = poly_eval(coeffs_c, z) / dz
            if abs(step) > 1e-6 * (1 + abs(z)):
                break
            z -= step
        if abs(z.imag) < 1e-12 * (1 + abs(z)):
            z = complex(z.real, 0.0)
        if abs(z.real) < 1e-12 * (1 + abs(z)):
            z = complex(0.0, z.imag)
        roots.append(z)
    return sorted(roots, key=_sort_key)


def _numeric_coeffs(c: Cubic) -> list[complex]:
    out = []
    for x in c.coeffs:
        if isinstance(x, NFElem):
            out.append(embed_complex(x, principal_root_index(x.field)))
        else:
            out.append(complex(float(x)))
    return out


def exact_roots_rational(coeffs: list[Fraction]):
    """Roots with multiplicity when the cubic has a rational root; quadratic leftovers go to Q(sqrt d)."""
    poly = list(coeffs)
    roots: list = []
    changed = True
    while len(poly) > 1 and changed:
        changed = False
        for r in rational_roots(poly):
            q, rem = poly_divmod(poly, [-r, Fraction(1)])
            if not rem:
                roots.append(r)
                poly = q
                changed = True
                break
    if len(poly) == 1:
        return roots
    if len(poly) == 3:
        c, b, a = poly
        disc = b * b - 4 * a * c
        d, s = squarefree_part(disc)
        field = sqrt_field(d)
        t = field.gen()
        r1 = (-b - s * t) / (2 * a)
        r2 = (-b + s * t) / (2 * a)
        return roots + [r1, r2]
    return None


def cubic_roots(c: Cubic) -> CubicRoots:
    numeric = cardano(_numeric_coeffs(c))
    exact = None
    if c.is_rational():
        ex = exact_roots_rational(c.rational_coeffs())
        if ex is not None:
            exact = tuple(_align(ex, numeric))
    return CubicRoots(tuple(numeric), exact)


def _align(exact: list, numeric: list[complex]) -> list:
    vals = [embed_complex(x, principal_root_index(x.field)) if isinstance(x, NFElem) else complex(float(x))
            for x in exact]
    order = sorted(range(len(exact)), key=lambda i: _sort_key(vals[i]))
    return [exact[i] for i in order]


def power_sums_to_cubic(p1, p2, p3) -> Cubic:
    """Monic x^3 - e1 x^2 + e2 x - e3 whose roots have power sums p1, p2, p3."""
    e1 = p1
    e2 = (p1 * p1 - p2) / 2
    e3 = (p1 ** 3 - 3 * p1 * p2 + 2 * p3) / 6
    return Cubic((-e3, e2, -e1, e1 * 0 + 1))


# ---------- normalization of the multiple-root case ----------

@dataclass(frozen=True)
class Normalization:
    """a -> h * j^k * (a - shift I) maps solutions onto sigma = cbrt(6), tau = 1."""

    h: NFElem
    k: int
    shift: object
    field: MinPoly

    @property
    def factor(self) -> NFElem:
        if self.k == 0:
            return self.h
        return self.h * field_constant(self.field, "j") ** self.k


def normalize_multiple_root(p: Params, field: MinPoly | None = None) -> Normalization:
    """Scaling (and cube-root-of-unity twist) reducing the MultipleRoot case to sigma=cbrt6, tau=1."""
    an = analyze(p)
    if an.tag is not CaseTag.MULTIPLE_ROOT:
        raise ValueError(f"normalization needs tag MultipleRoot, got {an.tag.value}")
    if field is None:
        field = next((x.field for x in p.as_tuple() if isinstance(x, NFElem)), CBRT6_FIELD)
    cbrt6 = field_constant(field, "cbrt6")
    sigma, tau = (_in_field(x, field) for x in (an.normalized.sigma, an.normalized.tau))
    lam = sigma / (tau * cbrt6)
    shift = _in_field(an.params.alpha, field) / 3
    if field != J_CBRT6_FIELD:
        return Normalization(lam, 0, shift, field)
    idx = principal_root_index(field)
    principal = cube_root_principal(1 / embed_complex(tau, idx))
    j = field_constant(field, "j")
    best = min(range(3), key=lambda k: abs(embed_complex(lam * j ** (-k), idx) - principal))
    return Normalization(lam * j ** (-best), best, shift, field)


def _in_field(x, field: MinPoly) -> NFElem:
    return x if isinstance(x, NFElem) else NFElem(field, [x])


def half_sum_property(roots: tuple[complex, ...], tol: float = 1e-8) -> bool:
    """True when some root is the half-sum of the other two."""
    x, y, z = roots
    scale = 1 + max(abs(x), abs(y), abs(z))
    return any(abs(2 * p - q - r) <= tol * scale for p, q, r in ((x, y, z), (y, x, z), (z, x, y)))


def has_multiple_root_exact(c: Cubic) -> bool:
    """gcd(r, r') has positive degree (exact, rational coefficients)."""
    from .exactnum import poly_gcd

    cs = c.rational_coeffs()
    g = poly_gcd(cs, list(Cubic(tuple(cs)).derivative()))
    return len(g) > 1
