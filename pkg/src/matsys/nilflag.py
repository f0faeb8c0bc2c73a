"""Structure of nilpotent solution semigroups: image flags, signatures, spanned algebra and its center."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .matrix import Mat, block_diag, kernel_basis, rref

MAX_CLASS = 5

# preferred spanning words for the algebra generated by a, b
ALGEBRA_CANDIDATES = ("a", "b", "a.b", "b.a", "a.a", "a.b.a", "a.b.b", "b.a.b", "a.a.b", "a.a.a.a")


class NotNilpotentError(ValueError):
    pass


@dataclass
class Flag:
    subspaces: list[list[list]]  # V_0 = [] ... V_l = full space, each as an echelon basis
    n: int

    @property
    def length(self) -> int:
        return len(self.subspaces) - 1

    def dims(self) -> list[int]:
        return [len(v) for v in self.subspaces]

    def coordinate_support(self) -> list[list[int]] | None:
        """1-indexed coordinate vectors spanning each V_i, or None when some V_i is not a coordinate subspace."""
        out = []
        for basis in self.subspaces:
            idx = []
            for vec in basis:
                nz = [k for k, x in enumerate(vec) if x]
                if len(nz) != 1:
                    return None
                idx.append(nz[0] + 1)
            out.append(sorted(idx))
        return out


def _echelon(vectors, n, field) -> list[list]:
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    red, piv = rref(vectors, field)
    return [r for r in red if any(r)]


def _products_image(gens: list[Mat], space: list[list]) -> list[list]:
    n = gens[0].nrows
    images = [g.apply(v) for g in gens for v in space]
    return _echelon(images, n, gens[0].field)


def semigroup_flag(t, generators: str = "abc") -> Flag:
    """V_{l-k} = span of images of all length-k products; l is the nilpotency class."""
    gens = [getattr(t, g) for g in generators]
    n = gens[0].nrows
    fld = gens[0].field
    full = _echelon(Mat.identity(n, fld).rows, n, fld)
    layers = [full]
    while layers[-1]:
        if len(layers) > MAX_CLASS:
            raise NotNilpotentError(f"products of length {MAX_CLASS} do not all vanish")
        nxt = _products_image(gens, layers[-1])
        if len(nxt) == len(layers[-1]):
            raise NotNilpotentError("semigroup is not nilpotent")
        layers.append(nxt)
    return Flag(list(reversed(layers)), n)


def signature(f: Flag) -> tuple[int, ...]:
    d = f.dims()
    return tuple(d[i + 1] - d[i] for i in range(len(d) - 1))


def triangularizing_basis(t, flag: Flag | None = None) -> list[list]:
    """Basis of V_1, completed layer by layer using echelon vectors in pivot order."""
    flag = flag or semigroup_flag(t)
    fld = t.a.field
    chosen: list[list] = []
    for basis in flag.subspaces[1:]:
        ordered = sorted(basis, key=lambda v: next(k for k, x in enumerate(v) if x))
        for vec in ordered:
            if len(_echelon(chosen + [vec], flag.n, fld)) > len(chosen):
                chosen.append(vec)
    p = Mat.from_columns(chosen, fld)
    pinv = p.inverse()
    for m in (t.a, t.b, t.c):
        if not (pinv @ m @ p).is_strictly_upper():
            raise AssertionError("flag basis failed to triangularize")
    return chosen


def basis_change(vectors: list[list], field) -> Mat:
    return Mat.from_columns(vectors, field)


def basis_labels(vectors: list[list]) -> list[str]:
    """Names like e3 for unit vectors; other vectors are printed as coordinate tuples."""
    out = []
    for v in vectors:
        nz = [k for k, x in enumerate(v) if x]
        if len(nz) == 1 and v[nz[0]] == 1:
            out.append(f"e{nz[0] + 1}")
        else:
            out.append("(" + ", ".join(str(x) for x in v) + ")")
    return out


# ---------- the algebra spanned by a and b ----------

@dataclass
class AlgebraBasis:
    labels: list[str]
    elements: list[Mat]

    @property
    def dimension(self) -> int:
        return len(self.elements)


def _word_value(word: str, mats: dict[str, Mat]) -> Mat:
    out = None
    for letter in word.split("."):
        out = mats[letter] if out is None else out @ mats[letter]
    return out


def _flatten(m: Mat) -> list:
    return [x for r in m.rows for x in r]


def _greedy(cands: list[tuple[str, Mat]], field, start: list[Mat] | None = None, limit: int | None = None):
    chosen_labels, chosen, rows = [], [], [_flatten(m) for m in (start or [])]
    rank = len(_echelon(rows, 0, field)) if rows else 0
    for label, m in cands:
        if limit is not None and len(chosen) >= limit:
            break
        trial = _echelon(rows + [_flatten(m)], 0, field)
        if len(trial) > rank:
            rows.append(_flatten(m))
            rank = len(trial)
            chosen_labels.append(label)
            chosen.append(m)
    return chosen_labels, chosen


def all_words(max_len: int = 4) -> list[str]:
    out = []
    for k in range(1, max_len + 1):
        out += [".".join(p) for p in product("ab", repeat=k)]
    return out


def algebra_basis(t) -> AlgebraBasis:
    """Independent words spanning the (non-unital) algebra generated by a and b, preferred words first."""
    mats = {"a": t.a, "b": t.b}
    flag = semigroup_flag(t)  # nilpotency check: words of length >= class vanish
    words = list(ALGEBRA_CANDIDATES) + [w for w in all_words(flag.length) if w not in ALGEBRA_CANDIDATES]
    cands = [(w, _word_value(w, mats)) for w in words]
    labels, elems = _greedy(cands, t.a.field)
    return AlgebraBasis(labels, elems)


def center_basis(t, ab: AlgebraBasis | None = None) -> AlgebraBasis:
    """Center of the algebra: kernel of x -> ([x, a], [x, b]) on its span, described by words when possible."""
    ab = ab or algebra_basis(t)
    fld = t.a.field
    if not ab.elements:
        return AlgebraBasis([], [])
    cols = [_flatten(e @ t.a - t.a @ e) + _flatten(e @ t.b - t.b @ e) for e in ab.elements]
    system = Mat.from_columns(cols, fld)
    kernel = kernel_basis(system)
    dim = len(kernel)
    if dim == 0:
        return AlgebraBasis([], [])
    mats = {"a": t.a, "b": t.b}
    central = []
    for w in _center_word_order():
        m = _word_value(w, mats)
        if m.is_zero():
            continue
        if (m @ t.a - t.a @ m).is_zero() and (m @ t.b - t.b @ m).is_zero():
            central.append((w, m))
    labels, elems = _greedy(central, fld, limit=dim)
    if len(elems) < dim:
        combos = []
        for vec in kernel:
            m = None
            for coeff, e in zip(vec, ab.elements):
                if coeff:
                    m = e * coeff if m is None else m + e * coeff
            text = " + ".join(f"{c}*{lab}" for c, lab in zip(vec, ab.labels) if c)
            combos.append((text, m))
        extra_labels, extra = _greedy(combos, fld, start=elems, limit=dim - len(elems))
        labels += extra_labels
        elems += extra
    return AlgebraBasis(labels, elems)


def _center_word_order() -> list[str]:
    first = ["a.a", "b.b", "a.b", "b.a", "a.b.a", "a.b.b", "b.a.b", "a.a.b", "a.a.a.a"]
    return first + [w for w in all_words(4) if w not in first]


# ---------- the isomorphism invariant for n = 9 ----------

@dataclass
class VarpiResult:
    value: Fraction
    bab_identity: bool  # bab = -aba - 4 ab^2 + varpi a^4
    a2b_identity: bool  # a^2 b = ab^2 - varpi/2 a^4


def canonical_n9_a() -> Mat:
    return block_diag(Mat.jordan(5), Mat.jordan(3), Mat.zeros(1))


def varpi(t) -> VarpiResult:
    a, b = t.a, t.b
    if a.shape != (9, 9) or not (a - canonical_n9_a()).is_zero():
        raise ValueError("a must equal diag(J5, J3, 0)")
    w = 3 * b[5, 7] - b[1, 3]
    a2, a4 = a @ a, a ** 4
    bab = b @ a @ b
    aba = a @ b @ a
    ab2 = a @ b @ b
    ok1 = (bab + aba + ab2 * 4 - a4 * w).is_zero()
    ok2 = (a2 @ b - ab2 + a4 * (w / 2)).is_zero()
    return VarpiResult(w, ok1, ok2)
