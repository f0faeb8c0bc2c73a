"""Noncommutative polynomials over Q and degree-truncated Groebner completion.

Words are tuples of generator indices.  Generators are ordered by their index,
so the monomial order is weighted deglex: total weight first, then the first
differing letter from the left.  Completion handles homogeneous two-sided
ideals only and processes overlap compositions in ascending degree, which makes
the basis below a degree bound exact even when the full basis is infinite.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactnum import format_rat, parse_rat

Word = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int = 1
    order_index: int = 0


class GeneratorTable:
    """Ordered generator set; the order index of a generator is its position."""

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None):
        weights = list(weights) if weights is not None else [1] * len(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        if any(w < 1 for w in weights):
            raise ValueError("generator weights must be >= 1")
        self.gens = tuple(Generator(n, w, i) for i, (n, w) in enumerate(zip(names, weights)))
        self.index = {g.name: g.order_index for g in self.gens}
        self.weights = tuple(weights)

    def __eq__(self, other):
        return isinstance(other, GeneratorTable) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return f"GeneratorTable({[g.name for g in self.gens]})"

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.gens]

    def degree(self, w: Word) -> int:
        ws = self.weights
        return sum(ws[i] for i in w)

    def word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "1"):
            return ()
        try:
            return tuple(self.index[s] for s in text.split("."))
        except KeyError as exc:
            raise ValueError(f"unknown generator {exc.args[0]!r} in word {text!r}") from None

    def word_str(self, w: Word) -> str:
        return ".".join(self.gens[i].name for i in w) if w else "1"


DEFAULT_TABLE = GeneratorTable(["a", "b", "c", "u", "v", "t"])


def word_key(w: Word, table: GeneratorTable) -> tuple[int, Word]:
    return table.degree(w), w


def word_compare(w1: Word, w2: Word, table: GeneratorTable = DEFAULT_TABLE) -> int:
    """-1, 0 or 1 as w1 is smaller, equal or greater than w2 in weighted deglex."""
    k1, k2 = word_key(w1, table), word_key(w2, table)
    return (k1 > k2) - (k1 < k2)


class NCPoly:
    """Element of the free algebra Q<generators>; immutable."""

    __slots__ = ("terms", "table")

    def __init__(self, terms: Mapping[Word, Fraction | int] | None = None, table: GeneratorTable = DEFAULT_TABLE):
        clean = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(w)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict, table: GeneratorTable) -> "NCPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "table", table)
        return p

    @classmethod
    def parse(cls, text: str, table: GeneratorTable = DEFAULT_TABLE) -> "NCPoly":
        return parse_poly(text, table)

    @classmethod
    def word(cls, w: Word | str, table: GeneratorTable = DEFAULT_TABLE, coeff=1) -> "NCPoly":
        if isinstance(w, str):
            w = table.word(w)
        return cls({tuple(w): coeff}, table)

    # ---------- arithmetic ----------
    def _check(self, other: "NCPoly"):
        if self.table != other.table:
            raise ValueError("polynomials over different generator tables")

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return NCPoly({(): other}, self.table)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for w, c in o.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly._raw(out, self.table)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()}, self.table)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return NCPoly._raw({}, self.table)
            return NCPoly._raw({w: c * other for w, c in self.terms.items()}, self.table)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPoly._raw(out, self.table)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        result = NCPoly({(): 1}, self.table)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly({(): other}, self.table)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def multiply_words(self, left: Word, right: Word, coeff=1) -> "NCPoly":
        coeff = Fraction(coeff)
        return NCPoly._raw({left + w + right: c * coeff for w, c in self.terms.items()}, self.table)

    # ---------- structure ----------
    def sorted_words(self) -> list[Word]:
        """Words in descending monomial order."""
        return sorted(self.terms, key=lambda w: word_key(w, self.table), reverse=True)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=lambda w: word_key(w, self.table))

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_word()]

    def monic(self) -> "NCPoly":
        return self * (1 / self.leading_coeff())

    def degrees(self) -> set[int]:
        return {self.table.degree(w) for w in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def substitute(self, images: Mapping[str, "NCPoly"]) -> "NCPoly":
        """Ring homomorphism defined on generator names (others fixed)."""
        table = self.table
        out = NCPoly({}, table)
        for w, c in self.terms.items():
            term = NCPoly({(): c}, table)
            for i in w:
                name = table.gens[i].name
                term = term * (images[name] if name in images else NCPoly({(i,): 1}, table))
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object], one):
        """Evaluate with generator names bound to ring elements (e.g. matrices)."""
        total = None
        cache: dict[Word, object] = {}
        for w, c in self.terms.items():
            val = _eval_word(w, self.table, values, one, cache)
            term = val * c
            total = term if total is None else total + term
        return total if total is not None else one * 0

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NCPoly({format_poly(self)!r})"


def _eval_word(w: Word, table: GeneratorTable, values, one, cache):
    if w in cache:
        return cache[w]
    if not w:
        val = one
    else:
        val = _eval_word(w[:-1], table, values, one, cache) @ values[table.gens[w[-1]].name]
    cache[w] = val
    return val


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(text: str, table: GeneratorTable = DEFAULT_TABLE) -> NCPoly:
    """Parse ``"6*a.a.a - 3*a.u.u - 2*v.v.v"``; ``1`` denotes the empty word."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial text")
    # keep signs inside parentheses: (-1/2)*a.b
    s = re.sub(r"\(([+-]?[\d/]+)\)", lambda m: m.group(1).replace("-", "~").replace("+", ""), s)
    pos = 0
    terms: dict[Word, Fraction] = {}
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        if "*" in body:
            coeff_txt, word_txt = body.split("*", 1)
        elif re.fullmatch(r"~?[\d/]+", body):
            coeff_txt, word_txt = body, "1"
        else:
            coeff_txt, word_txt = "1", body
        coeff_txt = coeff_txt.replace("~", "-")
        try:
            coeff = parse_rat(coeff_txt)
        except ValueError:
            raise ValueError(f"bad coefficient {coeff_txt!r}") from None
        w = table.word(word_txt)
        terms[w] = terms.get(w, 0) + sign * coeff
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
    return NCPoly(terms, table)


def format_poly(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for i, w in enumerate(p.sorted_words()):
        c = p.terms[w]
        sign = "-" if c < 0 else "+"
        body = f"{format_rat(abs(c))}*{p.table.word_str(w)}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


# ---------- reduction ----------

class _Reducer:
    """Index of leading words for fast leftmost-factor lookup."""

    def __init__(self, basis: Sequence[NCPoly]):
        self.basis = list(basis)
        self.lw: dict[Word, int] = {}
        self.lengths: set[int] = set()
        self.tails: list[tuple[Word, list[tuple[Word, Fraction]]]] = []
        for idx, g in enumerate(self.basis):
            if g.is_zero():
                self.tails.append(((), []))
                continue
            w = g.leading_word()
            lc = g.terms[w]
            if lc != 1:
                raise ValueError("basis elements must be monic")
            self.lw.setdefault(w, idx)
            self.lengths.add(len(w))
            self.tails.append((w, [(v, c) for v, c in g.terms.items() if v != w]))
        self.lengths_sorted = sorted(self.lengths)

    def find(self, w: Word) -> tuple[int, int, int] | None:
        """Leftmost occurrence of a leading word; lowest basis index on ties."""
        lw = self.lw
        n = len(w)
        for start in range(n):
            best = None
            for length in self.lengths_sorted:
                end = start + length
                if end > n:
                    break
                idx = lw.get(w[start:end])
                if idx is not None and (best is None or idx < best[0]):
                    best = (idx, start, end)
            if best is not None:
                return best
        return None


def _reduce(p: NCPoly, red: _Reducer, track: bool = False):
    table = p.table
    work = dict(p.terms)
    heap = [(-table.degree(w), tuple(-x for x in w), w) for w in work]
    heapq.heapify(heap)
    result: dict[Word, Fraction] = {}
    cofactors: list[tuple[Fraction, Word, int, Word]] = []
    while heap:
        _, _, w = heapq.heappop(heap)
        c = work.pop(w, 0)
        if not c:
            continue
        hit = red.find(w)
        if hit is None:
            result[w] = c
            continue
        idx, start, end = hit
        left, right = w[:start], w[end:]
        if track:
            cofactors.append((c, left, idx, right))
        for v, d in red.tails[idx][1]:
            nw = left + v + right
            old = work.get(nw)
            nv = (old or 0) - c * d
            if nv:
                if old is None:
                    heapq.heappush(heap, (-table.degree(nw), tuple(-x for x in nw), nw))
                work[nw] = nv
            else:
                work.pop(nw, None)
    return NCPoly._raw(result, table), cofactors


def normal_form(p: NCPoly, basis: Sequence[NCPoly]) -> NCPoly:
    """Full reduction of ``p`` by the monic ``basis`` (leftmost-first rewriting)."""
    return _reduce(p, _Reducer(basis))[0]


def normal_form_with_cofactors(p: NCPoly, basis: Sequence[NCPoly]):
    """Normal form plus terms (coeff, left, index, right) with p - nf = sum coeff*left*basis[index]*right."""
    return _reduce(p, _Reducer(basis), track=True)


def expand_cofactors(cofactors, basis: Sequence[NCPoly], table: GeneratorTable) -> NCPoly:
    total = NCPoly({}, table)
    for c, left, idx, right in cofactors:
        total = total + basis[idx].multiply_words(left, right, c)
    return total


# ---------- completion ----------

@dataclass
class GBResult:
    basis: list[NCPoly]
    degree_bound: int
    complete_below_bound: bool
    element_count_by_degree: dict[int, int]
    # compositions skipped because their degree exceeds the bound
    pending_above_bound: int = 0
    table: GeneratorTable = field(default=DEFAULT_TABLE, repr=False)

    def reduce(self, p: NCPoly) -> NCPoly:
        return normal_form(p, self.basis)

    def leading_words(self) -> list[Word]:
        return [g.leading_word() for g in self.basis]


class NonHomogeneousError(ValueError):
    pass


def overlaps(w1: Word, w2: Word) -> list[int]:
    """Lengths k of proper overlaps where the last k letters of w1 begin w2."""
    out = []
    for k in range(1, min(len(w1), len(w2))):
        if w1[-k:] == w2[:k]:
            out.append(k)
    return out


def compositions(f: NCPoly, g: NCPoly, degree_bound: int | None = None) -> list[tuple[int, NCPoly]]:
    """Overlap compositions f*r - l*g for every suffix/prefix overlap of LW(f), LW(g).

    Both f and g must be monic.  Returns (degree, composition) pairs.
    """
    table = f.table
    w1, w2 = f.leading_word(), g.leading_word()
    out = []
    for k in overlaps(w1, w2):
        deg = table.degree(w1) + table.degree(w2) - table.degree(w2[:k])
        if degree_bound is not None and deg > degree_bound:
            continue
        comp = f.multiply_words((), w2[k:]) - g.multiply_words(w1[:-k], ())
        out.append((deg, comp))
    return out


def _contains(big: Word, small: Word) -> int | None:
    n, k = len(big), len(small)
    for i in range(n - k + 1):
        if big[i:i + k] == small:
            return i
    return None


def truncated_buchberger(
    gens: Iterable[NCPoly],
    degree_bound: int,
    max_basis_size: int | None = None,
) -> GBResult:
    """Groebner basis of the two-sided ideal generated by homogeneous ``gens``, up to ``degree_bound``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GBResult([], degree_bound, True, {}, 0)
    table = gens[0].table
    for g in gens:
        if g.table != table:
            raise ValueError("generators over different tables")
        if not g.is_homogeneous():
            raise NonHomogeneousError(f"non-homogeneous generator: {g}")
    if degree_bound < max(g.degree() for g in gens):
        raise ValueError("degree bound below the maximal generator degree")

    counter = 0
    queue: list[tuple[int, int, NCPoly]] = []
    for g in gens:
        heapq.heappush(queue, (g.degree(), counter, g))
        counter += 1

    basis: list[NCPoly] = []
    skipped = 0
    complete = True
    while queue:
        deg, _, p = heapq.heappop(queue)
        h = normal_form(p, basis)
        if h.is_zero():
            continue
        h = h.monic()
        hw = h.leading_word()
        # drop elements whose leading word contains the new one; they go back to the queue
        keep = []
        for g in basis:
            if _contains(g.leading_word(), hw) is not None:
                heapq.heappush(queue, (g.degree(), counter, g))
                counter += 1
            else:
                keep.append(g)
        basis = keep
        basis.append(h)
        for g in basis:
            pairs = [(h, g)] if g is h else [(h, g), (g, h)]
            for f1, f2 in pairs:
                for cdeg, comp in compositions(f1, f2):
                    if cdeg > degree_bound:
                        skipped += 1
                        continue
                    heapq.heappush(queue, (cdeg, counter, comp))
                    counter += 1
        if max_basis_size is not None and len(basis) >= max_basis_size:
            complete = False
            break

    basis = interreduce(basis)
    counts: dict[int, int] = {}
    for g in basis:
        counts[g.degree()] = counts.get(g.degree(), 0) + 1
    basis.sort(key=lambda g: word_key(g.leading_word(), table))
    return GBResult(basis, degree_bound, complete, dict(sorted(counts.items())), skipped, table)


def interreduce(basis: Sequence[NCPoly]) -> list[NCPoly]:
    """Reduce every tail by the other elements; leading words are kept."""
    out = list(basis)
    for i in range(len(out)):
        others = out[:i] + out[i + 1:]
        g = out[i]
        lw = g.leading_word()
        tail = g - NCPoly.word(lw, g.table)
        out[i] = NCPoly.word(lw, g.table) + normal_form(tail, others)
    return out


# ---------- membership ----------

@dataclass
class MembershipResult:
    target: NCPoly
    reduces_to_zero: bool
    residual: NCPoly


def membership_report(targets: Sequence[NCPoly], gens: Sequence[NCPoly], degree_bound: int,
                      gb: GBResult | None = None) -> list[MembershipResult]:
    for t in targets:
        if not t.is_homogeneous():
            raise NonHomogeneousError(f"non-homogeneous target: {t}")
        if t.degree() > degree_bound:
            raise ValueError(f"target degree {t.degree()} exceeds the bound {degree_bound}")
    gb = gb or truncated_buchberger(gens, degree_bound)
    out = []
    for t in targets:
        r = gb.reduce(t)
        out.append(MembershipResult(t, r.is_zero(), r))
    return out


@dataclass
class SaturationResult:
    target: NCPoly
    power: int | None  # least k with target * x^k in the ideal, None if none up to the limit


def saturation_membership(targets: Sequence[NCPoly], gens: Sequence[NCPoly], degree_bound: int,
                          multiplier: str = "u", max_power: int = 3,
                          gb: GBResult | None = None) -> list[SaturationResult]:
    """Least power of a (central) generator that pushes each target into the ideal.

    When the multiplier is invertible on solutions, power k < inf means the target vanishes there.
    """
    table = gens[0].table if gens else DEFAULT_TABLE
    x = NCPoly.word(multiplier, table)
    top = max(t.degree() for t in targets) + max_power
    if top > degree_bound:
        raise ValueError(f"degree bound {degree_bound} too small for targets times {multiplier}^{max_power}")
    gb = gb or truncated_buchberger(gens, degree_bound)
    out = []
    for t in targets:
        found = None
        cur = t
        for k in range(max_power + 1):
            if gb.reduce(cur).is_zero():
                found = k
                break
            cur = cur * x
        out.append(SaturationResult(t, found))
    return out


# ---------- preset systems ----------

def _p(text: str, table: GeneratorTable = DEFAULT_TABLE) -> NCPoly:
    return parse_poly(text, table)


def _commutators(xs: str, ys: Sequence[str], table=DEFAULT_TABLE) -> list[NCPoly]:
    out = []
    for y in ys:
        for x in xs:
            out.append(_p(f"{x}.{y} - {y}.{x}", table))
    return out


def preset_system(name: str) -> list[NCPoly]:
    """Generator lists of the named systems.

    s4        a+b+c, a^2+b^2+c^2, a^3+b^3+c^3
    s2        power sums 0, u^2, 0 with a,b,c commuting with u
    s3        a+b+c, a^2+b^2+c^2-2u^2, x^3 - x u^2 for x in a,b,c, commuting with u
    s21       power sums 0, u^2, v^3 with a,b,c commuting with v^3
    s21a      as s21 but a,b,c also commute with u^2
    cyclic    homogenized {ab=ct, bc=at, ca=bt} with t central
    """
    psums = "a + b + c"
    if name == "s4":
        return [_p(psums), _p("a.a + b.b + c.c"), _p("a.a.a + b.b.b + c.c.c")]
    if name == "s2":
        return [_p(psums), _p("a.a + b.b + c.c - u.u"), _p("a.a.a + b.b.b + c.c.c")] + _commutators("abc", ["u"])
    if name == "s3":
        return [_p(psums), _p("a.a + b.b + c.c - 2*u.u"), _p("a.a.a - a.u.u"), _p("b.b.b - b.u.u"),
                _p("c.c.c - c.u.u")] + _commutators("abc", ["u"])
    if name in ("s21", "s21a"):
        gens = [_p(psums), _p("a.a + b.b + c.c - u.u"), _p("a.a.a + b.b.b + c.c.c - v.v.v")]
        gens += _commutators("abc", ["v.v.v"])
        if name == "s21a":
            gens += _commutators("abc", ["u.u"])
        return gens
    if name == "cyclic":
        return [_p("a.b - c.t"), _p("b.c - a.t"), _p("c.a - b.t")] + _commutators("abc", ["t"])
    raise ValueError(f"unknown system preset {name!r}")


PRESETS = ("s4", "s3", "s2", "s21", "s21a", "cyclic")


# ---------- relation lists ----------

RELATIONS_51 = {
    "sum": "a + b + c",
    "quadratic": "a.b + b.a + 2*a.a + 2*b.b",
    "a2-commutes-b": "a.a.b - b.a.a",
    "cubic": "2*a.a.a - a.a.b - b.a.b",
    "a2ba": "a.a.b.a + 1/2*a.a.a.a",
    "a3b": "a.a.a.b + 1/2*a.a.a.a",
    "a5": "a.a.a.a.a",
}

RELATIONS_41 = {
    "a2-commutes-b": "a.a.b - b.a.a",
    "cubic": "-b.a.b - a.a.b + 2*a.a.a - u.u.a",
    "quintic": "6*a.a.a.a.a - 5*u.u.a.a.a + u.u.u.u.a",
}

RELATIONS_21_FIRST = {
    "quadratic": "2*b.b + 2*a.b + 2*a.a - u.u",
    "commute": "a.b - b.a",
    "cubic": "6*a.a.a - 3*a.u.u - 2*v.v.v",
}

RELATIONS_21_SECOND = {
    "quadratic": "2*a.a + 2*b.b + a.b + b.a - u.u",
    "b3a-a3b": "b.b.b.a - a.b.b.b - b.a.a.a + a.a.a.b",
    "mixed-quartic": "b.a.a.a - a.a.a.b - a.a.b.b - a.b.a.b + b.b.a.a + b.a.b.a",
}


def words_in(letters: str, length: int, table: GeneratorTable = DEFAULT_TABLE) -> list[Word]:
    from itertools import product

    idx = [table.index[x] for x in letters]
    return [tuple(p) for p in product(idx, repeat=length)]


def degree4_word_targets(table: GeneratorTable = DEFAULT_TABLE) -> dict[str, NCPoly]:
    """abab, baba = 5/2 a^4, b^4 = a^4 and the other degree-4 words in a, b = -1/2 a^4."""
    a4 = NCPoly.word("a.a.a.a", table)
    out = {}
    for w in words_in("ab", 4, table):
        name = table.word_str(w)
        mono = NCPoly.word(w, table)
        if name == "a.a.a.a":
            continue
        if name == "b.b.b.b":
            out[name] = mono - a4
        elif name in ("a.b.a.b", "b.a.b.a"):
            out[name] = mono - a4 * Fraction(5, 2)
        else:
            out[name] = mono + a4 * Fraction(1, 2)
    return out


def degree5_word_targets(table: GeneratorTable = DEFAULT_TABLE) -> dict[str, NCPoly]:
    return {table.word_str(w): NCPoly.word(w, table) for w in words_in("ab", 5, table)}
