"""Exact scalars: rationals (``fractions.Fraction``) and simple number fields Q[t]/(m(t)).

A number field element is a coefficient list over Q reduced modulo a monic
minimal polynomial.  Elements interoperate with ``int`` and ``Fraction`` so the
matrix code can stay generic over the scalar type.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

Rat = Fraction
Scalar = Union[int, Fraction, "NFElem", complex]


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal string into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def format_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------- polynomial helpers over Q (lists, low degree first) ----------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x == 0:
            continue
        for j, y in enumerate(q):
            out[i + j] += x * y
    return _trim(out)


def poly_divmod(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    q = _trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim([Fraction(x) for x in p])
    quo = [Fraction(0)] * max(len(rem) - len(q) + 1, 0)
    lead = q[-1]
    while len(rem) >= len(q):
        shift = len(rem) - len(q)
        f = rem[-1] / lead
        quo[shift] = f
        for i, y in enumerate(q):
            rem[shift + i] -= f * y
        rem.pop()
        _trim(rem)
    return _trim(quo), rem


def poly_sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, x in enumerate(p):
        out[i] += x
    for i, y in enumerate(q):
        out[i] -= y
    return _trim(out)


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd over Q."""
    a, b = _trim(list(p)), _trim(list(q))
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    return [x / a[-1] for x in a]


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def rational_roots(p: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients."""
    p = _trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    roots = []
    # strip x factors
    while p and p[0] == 0:
        p = p[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(p) <= 1:
        return roots
    den = 1
    for c in p:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    lead, const = abs(ints[-1]), abs(ints[0])
    for num in _divisors(const):
        for d in _divisors(lead):
            for s in (1, -1):
                cand = Fraction(s * num, d)
                if cand not in roots and poly_eval(p, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None when it is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = _isqrt_exact(q.numerator), _isqrt_exact(q.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def squarefree_part(q: Fraction) -> tuple[int, Fraction]:
    """Write q = d * s**2 with d a squarefree integer and s rational (s > 0)."""
    q = Fraction(q)
    if q == 0:
        return 0, Fraction(0)
    sign = -1 if q < 0 else 1
    n = abs(q.numerator) * q.denominator  # q = n / den**2
    d, s = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    d *= n
    return sign * d, Fraction(s, q.denominator)


# ---------- number fields ----------

class MinPoly:
    """Monic minimal polynomial m(t) defining Q[t]/(m(t)), degree 1..6."""

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable[Fraction | int | str]):
        cs = tuple(parse_rat(c) for c in coeffs)
        if len(cs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if cs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if not 1 <= len(cs) - 1 <= 6:
            raise ValueError("degree must be between 1 and 6")
        self.coeffs = cs
        if self.degree <= 3:
            r = rational_roots(cs)
            if r and self.degree > 1:
                raise ValueError(f"reducible minimal polynomial: root {format_rat(r[0])}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, MinPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"MinPoly({[format_rat(c) for c in self.coeffs]})"

    def to_json(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "MinPoly":
        return cls(data)

    @cached_property
    def complex_roots(self) -> list[complex]:
        """Numeric roots sorted by (real, imag), polished by Newton steps."""
        cs = [float(c) for c in self.coeffs]
        roots = np.roots(cs[::-1])
        dp = [i * c for i, c in enumerate(cs)][1:]
        polished = []
        for z in roots:
            z = complex(z)
            for _ in range(3):
                d = poly_eval(dp, z)
                if d == 0:
                    break
                z -= poly_eval(cs, z) / d
            polished.append(z)
        # snap tiny imaginary parts so real roots sort deterministically
        out = [complex(z.real, 0.0) if abs(z.imag) < 1e-12 * (1 + abs(z)) else z for z in polished]
        return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))

    def root_index(self, predicate) -> int:
        """Index of the first root (in the sorted order) satisfying ``predicate``."""
        for i, z in enumerate(self.complex_roots):
            if predicate(z):
                return i
        raise ValueError("no root satisfies the predicate")

    def gen(self) -> "NFElem":
        return NFElem(self, [0, 1])

    def one(self) -> "NFElem":
        return NFElem(self, [1])

    def zero(self) -> "NFElem":
        return NFElem(self, [])


class NFElem:
    """Element of Q[t]/(m(t)); immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: MinPoly, coeffs: Iterable[Fraction | int | str] = ()):
        cs = [parse_rat(c) for c in coeffs]
        d = field.degree
        if len(cs) > d:
            cs = poly_divmod(cs, field.coeffs)[1]
        cs = cs + [Fraction(0)] * (d - len(cs))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("NFElem is immutable")

    # coercion
    def _lift(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("mismatched number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, [x + y for x, y in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-x for x in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, [x - y for x, y in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [x * other for x in self.coeffs])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        prod = poly_mul(_trim(list(self.coeffs)), _trim(list(o.coeffs)))
        return NFElem(self.field, prod)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        a = _trim(list(self.coeffs))
        if not a:
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid: find s with s*a = 1 mod m
        m = list(self.field.coeffs)
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if len(r0) != 1:
            factor = [format_rat(c / r0[-1]) for c in r0]
            raise ZeroDivisionError(f"minimal polynomial is reducible: factor {factor}")
        return NFElem(self.field, [c / r0[0] for c in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElem(self.field, [x / other for x in self.coeffs])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = NFElem(self.field, [1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def conjugate_by(self, image: "NFElem") -> "NFElem":
        """Apply the Q-homomorphism sending t to ``image``."""
        return poly_eval(list(self.coeffs), image) + NFElem(self.field, [])

    def __repr__(self):
        return f"NFElem({self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(format_rat(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{format_rat(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]


def nf_arith(x: NFElem, y: NFElem, op: str) -> NFElem:
    """Field operation ``op`` in {add, sub, mul, div}."""
    if x.field != y.field:
        raise ValueError("mismatched number fields")
    ops = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](y)


def embed_complex(x, root_choice: int = 0) -> complex:
    """Numeric value of an exact scalar at the chosen root of its minimal polynomial."""
    if isinstance(x, NFElem):
        z = x.field.complex_roots[root_choice]
        return complex(poly_eval([float(c) for c in x.coeffs], z))
    if isinstance(x, (int, Fraction)):
        return complex(float(x))
    return complex(x)


# ---------- named fields ----------

J_FIELD = MinPoly([1, 1, 1])            # t = j, primitive cube root of unity
CBRT6_FIELD = MinPoly([-6, 0, 0, 1])    # t = cube root of 6
I_FIELD = MinPoly([1, 0, 1])            # t = i
# t = sqrt(-3) * cbrt(6); contains both j and cbrt(6)
J_CBRT6_FIELD = MinPoly([972, 0, 0, 0, 0, 0, 1])


def sqrt_field(d: int) -> MinPoly:
    return MinPoly([-d, 0, 1])


def field_constant(field: MinPoly, name: str) -> NFElem:
    """Known algebraic constants of the named fields above.

    ``name`` is one of ``j``, ``cbrt6``, ``i``, ``sqrt3``.
    """
    t = field.gen()
    if name == "j":
        if field == J_FIELD:
            return t
        if field == J_CBRT6_FIELD:
            sqrt_m3 = -(t ** 3) / 18
            return (sqrt_m3 - 1) / 2
    elif name == "cbrt6":
        if field == CBRT6_FIELD:
            return t
        if field == J_CBRT6_FIELD:
            return t ** 4 / 54
    elif name == "i":
        if field == I_FIELD:
            return t
    elif name == "sqrt3":
        if field == sqrt_field(3):
            return t
    raise ValueError(f"constant {name!r} not available in {field!r}")


def principal_root_index(field: MinPoly) -> int:
    """Root choice that makes the named constants take their usual complex values."""
    if field == J_FIELD:
        return field.root_index(lambda z: z.imag > 0)
    if field == J_CBRT6_FIELD:
        # cbrt6 = t^4/54 real positive and j with positive imaginary part
        def ok(z):
            c = z ** 4 / 54
            jj = (-(z ** 3) / 18 - 1) / 2
            return abs(c.imag) < 1e-9 and c.real > 0 and jj.imag > 0
        return field.root_index(ok)
    # otherwise prefer the largest real positive root, then a root with positive imaginary part
    roots = field.complex_roots
    for i in range(len(roots) - 1, -1, -1):
        z = roots[i]
        if z.imag == 0 and z.real > 0:
            return i
    for i, z in enumerate(roots):
        if z.imag > 0:
            return i
    return 0


def scalar_to_json(x) -> str | list[str] | list[float]:
    if isinstance(x, NFElem):
        return x.to_json()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float):
        return [x, 0.0]
    return format_rat(x)


def scalar_from_json(data, field: MinPoly | None = None, numeric: bool = False):
    if numeric:
        if isinstance(data, (list, tuple)):
            return complex(float(data[0]), float(data[1]))
        return complex(float(Fraction(data)))
    if field is None:
        if isinstance(data, (list, tuple)):
            raise ValueError("rational entry expected, got a list")
        return parse_rat(data)
    if isinstance(data, (list, tuple)):
        if len(data) != field.degree:
            raise ValueError("number field element has wrong length")
        return NFElem(field, data)
    return NFElem(field, [parse_rat(data)])


def cube_root_principal(z: complex) -> complex:
    """Principal complex cube root."""
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3)


def radical_field(values: Iterable[Fraction]) -> tuple[MinPoly | None, dict[Fraction, object]]:
    """Smallest supported field holding sqrt(q) for every rational q in ``values``.

    Handles up to two independent square classes (a quadratic or biquadratic
    field with primitive element sqrt(d1) + sqrt(d2)).  Returns ``(None, ...)``
    when all roots are rational.  Square roots of positive rationals are
    positive at the principal embedding.
    """
    values = [Fraction(v) for v in values]
    classes = []
    for q in values:
        d, _ = squarefree_part(q)
        if d not in (0, 1) and d not in classes:
            classes.append(d)
    basis: list[int] = []
    for d in classes:
        if _in_square_span(d, basis) is None:
            basis.append(d)
    if len(basis) > 2:
        raise ValueError(f"needs more than two independent square roots: {basis}")
    if not basis:
        return None, {q: rational_sqrt(q) for q in values}
    if len(basis) == 1:
        field = sqrt_field(basis[0])
        roots = {basis[0]: field.gen()}
    else:
        d1, d2 = basis
        field = MinPoly([(d1 - d2) ** 2, 0, -2 * (d1 + d2), 0, 1])
        theta = field.gen()
        r1 = (theta ** 3 - (3 * d1 + d2) * theta) / (2 * (d2 - d1))
        roots = {d1: r1, d2: theta - r1}
    out = {}
    for q in values:
        d, s = squarefree_part(q)
        if d == 0:
            out[q] = NFElem(field, [])
            continue
        if d == 1:
            out[q] = NFElem(field, [s])
            continue
        combo = _in_square_span(d, basis)
        elem = NFElem(field, [s])
        prod_d = 1
        for b in combo:
            elem = elem * roots[b]
            prod_d *= b
        # prod_d = d * k^2 for an integer k
        k2 = Fraction(prod_d, d)
        k = rational_sqrt(k2)
        out[q] = elem / k
    return field, out


def _in_square_span(d: int, basis: list[int]) -> list[int] | None:
    """Subset of ``basis`` whose product equals d up to a rational square."""
    from itertools import combinations

    for r in range(len(basis) + 1):
        for combo in combinations(basis, r):
            prod = 1
            for b in combo:
                prod *= b
            if rational_sqrt(Fraction(prod, d)) is not None and prod * d > 0:
                return list(combo)
    return None
