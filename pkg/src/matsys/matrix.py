"""Dense matrices over Q, a number field Q[t]/(m), or complex doubles.

Entries are plain Python scalars (``Fraction``, ``NFElem`` or ``complex``); the
``field`` tag only decides zero tests, coercion and serialization.  Numeric
matrices treat entries with modulus <= ``NUMERIC_TOL`` as zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import MinPoly, NFElem, scalar_from_json, scalar_to_json

NUMERIC_TOL = 1e-9


class _Field:
    name = "?"

    def __repr__(self):
        return self.name


class _Rationals(_Field):
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)


class _Complexes(_Field):
    name = "C"
    zero = 0j
    one = 1 + 0j


QQ = _Rationals()
CC = _Complexes()

FieldTag = "_Field | MinPoly"


def field_zero(field):
    return field.zero() if isinstance(field, MinPoly) else field.zero


def field_one(field):
    return field.one() if isinstance(field, MinPoly) else field.one


def coerce(x, field):
    if isinstance(field, MinPoly):
        if isinstance(x, NFElem):
            if x.field != field:
                raise ValueError("entry belongs to a different number field")
            return x
        if isinstance(x, complex):
            raise TypeError("cannot put a float entry into an exact field")
        return NFElem(field, [Fraction(x)])
    if field is QQ:
        if isinstance(x, NFElem):
            return x.rational()
        if isinstance(x, (float, complex)):
            raise TypeError("cannot put a float entry into Q")
        return Fraction(x)
    if isinstance(x, NFElem):
        raise TypeError("embed number field entries explicitly before going numeric")
    return complex(x)


def is_zero(x, field) -> bool:
    if field is CC:
        return abs(x) <= NUMERIC_TOL
    return not x


def join_fields(f, g):
    if f == g:
        return f
    if f is QQ:
        return g
    if g is QQ:
        return f
    if f is CC or g is CC:
        raise ValueError("cannot mix number field and numeric matrices implicitly")
    raise ValueError("mismatched number fields")


def _scalar_field(x):
    if isinstance(x, NFElem):
        return x.field
    if isinstance(x, (complex, float)):
        return CC
    return QQ


class Mat:
    """Immutable dense matrix."""

    __slots__ = ("rows", "field")

    def __init__(self, rows: Iterable[Iterable], field=None):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        if field is None:
            field = QQ
            for r in rows:
                for x in r:
                    field = join_fields(field, _scalar_field(x))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", tuple(tuple(coerce(x, field) for x in r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # ---------- constructors ----------
    @classmethod
    def _raw(cls, rows, field) -> "Mat":
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", tuple(tuple(r) for r in rows))
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None, field=QQ) -> "Mat":
        ncols = nrows if ncols is None else ncols
        z = field_zero(field)
        return cls._raw([[z] * ncols for _ in range(nrows)], field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Mat":
        return cls.scalar(n, field_one(field), field)

    @classmethod
    def scalar(cls, n: int, value, field=None) -> "Mat":
        field = field or _scalar_field(value)
        z, v = field_zero(field), coerce(value, field)
        return cls._raw([[v if i == j else z for j in range(n)] for i in range(n)], field)

    @classmethod
    def diag(cls, values: Sequence, field=None) -> "Mat":
        n = len(values)
        if field is None:
            field = QQ
            for v in values:
                field = join_fields(field, _scalar_field(v))
        z = field_zero(field)
        return cls._raw(
            [[coerce(values[i], field) if i == j else z for j in range(n)] for i in range(n)], field
        )

    @classmethod
    def jordan(cls, k: int, field=QQ) -> "Mat":
        """Nilpotent Jordan block J_k (ones on the superdiagonal)."""
        z, o = field_zero(field), field_one(field)
        return cls._raw([[o if j == i + 1 else z for j in range(k)] for i in range(k)], field)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field=QQ) -> "Mat":
        """Matrix unit E_ij (0-indexed)."""
        z, o = field_zero(field), field_one(field)
        return cls._raw([[o if (r, c) == (i, j) else z for c in range(n)] for r in range(n)], field)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field=QQ) -> "Mat":
        return cls([[col[i] for col in cols] for i in range(len(cols[0]))], field)

    # ---------- shape ----------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def with_entry(self, i: int, j: int, value) -> "Mat":
        rows = [list(r) for r in self.rows]
        rows[i][j] = coerce(value, self.field)
        return Mat._raw(rows, self.field)

    # ---------- arithmetic ----------
    def _check_same(self, other: "Mat"):
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch: {self.shape} vs {other.shape}")
        return join_fields(self.field, other.field)

    def _lift(self, field) -> "Mat":
        if field == self.field:
            return self
        return Mat._raw([[coerce(x, field) for x in r] for r in self.rows], field)

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        f = self._check_same(other)
        a, b = self._lift(f), other._lift(f)
        return Mat._raw([[x + y for x, y in zip(r, s)] for r, s in zip(a.rows, b.rows)], f)

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        f = self._check_same(other)
        a, b = self._lift(f), other._lift(f)
        return Mat._raw([[x - y for x, y in zip(r, s)] for r, s in zip(a.rows, b.rows)], f)

    def __neg__(self):
        return Mat._raw([[-x for x in r] for r in self.rows], self.field)

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        f = join_fields(self.field, other.field)
        a, b = self._lift(f), other._lift(f)
        cols = b.columns()
        z = field_zero(f)
        out = []
        for r in a.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in cols:
                acc = z
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Mat._raw(out, f)

    def __mul__(self, other):
        if isinstance(other, Mat):
            return self @ other
        f = join_fields(self.field, _scalar_field(other))
        s = coerce(other, f)
        a = self._lift(f)
        return Mat._raw([[x * s for x in r] for r in a.rows], f)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Mat):
            return NotImplemented
        return self * (1 / (other if not isinstance(other, int) else Fraction(other)))

    def __pow__(self, k: int) -> "Mat":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Mat.identity(self.nrows, self.field), self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if CC in (self.field, other.field):
            return (self - other).is_zero()
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.shape, str(self.field)))

    def is_zero(self) -> bool:
        return all(is_zero(x, self.field) for r in self.rows for x in r)

    def max_abs(self) -> float:
        """Max-entry norm; number field entries are embedded at their principal root."""
        from .exactnum import embed_complex, principal_root_index

        if isinstance(self.field, MinPoly):
            idx = principal_root_index(self.field)
            return max(abs(embed_complex(x, idx)) for r in self.rows for x in r)
        return float(max(abs(complex(x)) for r in self.rows for x in r))

    def transpose(self) -> "Mat":
        return Mat._raw(list(zip(*self.rows)), self.field)

    T = property(transpose)

    def trace(self):
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        acc = field_zero(self.field)
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def commutator(self, other: "Mat") -> "Mat":
        return self @ other - other @ self

    def map(self, fn, field) -> "Mat":
        return Mat([[fn(x) for x in r] for r in self.rows], field)

    def to_numeric(self, root_choice: int | None = None) -> "Mat":
        from .exactnum import embed_complex, principal_root_index

        if self.field is CC:
            return self
        if isinstance(self.field, MinPoly) and root_choice is None:
            root_choice = principal_root_index(self.field)
        return Mat._raw([[embed_complex(x, root_choice or 0) for x in r] for r in self.rows], CC)

    def to_numpy(self):
        import numpy as np

        return np.array([[complex(x) for x in r] for r in self.to_numeric().rows], dtype=complex)

    @classmethod
    def from_numpy(cls, arr) -> "Mat":
        return cls._raw([[complex(x) for x in r] for r in arr.tolist()], CC)

    # ---------- structure ----------
    def apply(self, vec: Sequence) -> list:
        z = field_zero(self.field)
        out = []
        for r in self.rows:
            acc = z
            for x, y in zip(r, vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def rref(self) -> tuple[list[list], list[int]]:
        return rref(self.rows, self.field)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list]:
        return kernel_basis(self)

    def inverse(self) -> "Mat":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        one, z = field_one(self.field), field_zero(self.field)
        aug = [list(r) + [one if i == j else z for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, self.field)
        if piv[:n] != list(range(n)) or len([p for p in piv if p < n]) != n:
            raise ZeroDivisionError("singular matrix")
        return Mat._raw([r[n:] for r in red[:n]], self.field)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows

    def is_projector(self) -> bool:
        return self.is_square and self @ self == self

    def is_nilpotent(self) -> bool:
        return self.is_square and (self ** self.nrows).is_zero()

    def is_strictly_upper(self) -> bool:
        return all(is_zero(self.rows[i][j], self.field) for i in range(self.nrows) for j in range(min(i + 1, self.ncols)))

    def nilpotent_jordan_type(self) -> tuple[int, ...]:
        return nilpotent_jordan_type(self)

    # ---------- formatting / serialization ----------
    def __repr__(self):
        return f"Mat({[[str(x) for x in r] for r in self.rows]}, field={self.field!r})"

    def pretty(self) -> str:
        cells = [[_fmt(x) for x in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def to_json(self) -> dict:
        if isinstance(self.field, MinPoly):
            ftag = {"kind": "NF", "min_poly": self.field.to_json()}
        else:
            ftag = {"kind": self.field.name}
        return {
            "field": ftag,
            "nrows": self.nrows,
            "ncols": self.ncols,
            "entries": [[scalar_to_json(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Mat":
        try:
            ftag = data["field"]
            kind = ftag["kind"]
            entries = data["entries"]
            nrows, ncols = int(data["nrows"]), int(data["ncols"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix JSON: missing {exc}") from exc
        if kind == "Q":
            field, parse = QQ, lambda e: scalar_from_json(e)
        elif kind == "NF":
            field = MinPoly.from_json(ftag["min_poly"])
            parse = lambda e: scalar_from_json(e, field)  # noqa: E731
        elif kind == "C":
            field, parse = CC, lambda e: scalar_from_json(e, numeric=True)
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        if len(entries) != nrows or any(len(r) != ncols for r in entries):
            raise ValueError("matrix JSON entries do not match nrows/ncols")
        return cls._raw([[parse(e) for e in r] for r in entries], field)


def _fmt(x) -> str:
    if isinstance(x, complex):
        if abs(x.imag) <= NUMERIC_TOL:
            return f"{x.real:.6g}"
        return f"{x.real:.6g}{x.imag:+.6g}i"
    if isinstance(x, Fraction):
        return str(x)
    return f"({x})" if isinstance(x, NFElem) and " " in str(x) else str(x)


# ---------- elimination ----------

def _bareiss_int(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination over the integers; returns echelon rows and pivots."""
    m = [r[:] for r in rows]
    nr, nc = len(m), len(m[0]) if m else 0
    prev = 1
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, nc):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def rref(rows: Sequence[Sequence], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    if field is QQ:
        int_rows = []
        for r in rows:
            den = 1
            for x in r:
                den = den * x.denominator // _gcd(den, x.denominator)
            int_rows.append([int(x * den) for x in r])
        ech, pivots = _bareiss_int(int_rows)
        red = [[Fraction(x) for x in r] for r in ech]
    elif field is CC:
        return _rref_numeric(rows)
    else:
        red, pivots = _gauss_forward(rows, field)
    # normalize and back-substitute
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        inv = 1 / red[k][c] if not isinstance(red[k][c], int) else Fraction(1, red[k][c])
        red[k] = [x * inv for x in red[k]]
        for i in range(k):
            f = red[i][c]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], red[k])]
    return red, pivots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _gauss_forward(rows: list[list], field) -> tuple[list[list], list[int]]:
    m = [r[:] for r in rows]
    nr, nc = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, nr):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def _rref_numeric(rows: list[list]) -> tuple[list[list], list[int]]:
    m = [[complex(x) for x in r] for r in rows]
    nr, nc = len(m), len(m[0])
    scale = max((abs(x) for r in m for x in r), default=0.0) or 1.0
    tol = NUMERIC_TOL * scale
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = max(range(r, nr), key=lambda i: abs(m[i][c]))
        if abs(m[p][c]) <= tol:
            for i in range(r, nr):
                m[i][c] = 0j
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def kernel_basis(m: Mat) -> list[list]:
    """Basis of the right null space, one vector per free column (ascending)."""
    red, pivots = m.rref()
    z, one = field_zero(m.field), field_one(m.field)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [z] * m.ncols
        v[f] = one
        for k, c in enumerate(pivots):
            v[c] = -red[k][f]
        basis.append(v)
    return basis


def rank(m: Mat) -> int:
    return m.rank()


def span_basis(vectors: Sequence[Sequence], n: int, field) -> list[list]:
    """Reduced echelon basis (as vectors) of the span of ``vectors`` in field^n."""
    if not vectors:
        return []
    red, _ = rref(vectors, field)
    return red


def nilpotent_jordan_type(m: Mat) -> tuple[int, ...]:
    """Jordan block sizes (descending) of a nilpotent matrix from its rank sequence."""
    if not m.is_square:
        raise ValueError("Jordan type of a non-square matrix")
    n = m.nrows
    ranks = [n]
    p = Mat.identity(n, m.field)
    while ranks[-1] > 0:
        p = p @ m
        r = p.rank()
        if r == ranks[-1]:
            raise ValueError("matrix is not nilpotent")
        ranks.append(r)
    # at_least[k] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exact)
    return tuple(sizes)


# ---------- block operations ----------

def block_diag(*blocks: Mat) -> Mat:
    blocks = [b for b in blocks if b is not None]
    field = QQ
    for b in blocks:
        field = join_fields(field, b.field)
    n = sum(b.nrows for b in blocks)
    k = sum(b.ncols for b in blocks)
    z = field_zero(field)
    rows = [[z] * k for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            for j, x in enumerate(row):
                rows[r0 + i][c0 + j] = coerce(x, field)
        r0 += b.nrows
        c0 += b.ncols
    return Mat._raw(rows, field)


def block(grid: Sequence[Sequence[Mat]]) -> Mat:
    """Assemble a block matrix from a 2-D grid of matrices."""
    field = QQ
    for row in grid:
        for b in row:
            field = join_fields(field, b.field)
    rows = []
    for brow in grid:
        h = brow[0].nrows
        for i in range(h):
            line = []
            for b in brow:
                if b.nrows != h:
                    raise ValueError("block heights differ")
                line.extend(coerce(x, field) for x in b.rows[i])
            rows.append(line)
    return Mat._raw(rows, field)


def kron(a: Mat, b: Mat) -> Mat:
    field = join_fields(a.field, b.field)
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([coerce(x * y, field) for x in ra for y in rb])
    return Mat._raw(rows, field)


def conjugate(p: Mat, m: Mat) -> Mat:
    """p m p^-1."""
    return p @ m @ p.inverse()


def submatrix(m: Mat, rows: Sequence[int], cols: Sequence[int]) -> Mat:
    return Mat._raw([[m.rows[i][j] for j in cols] for i in rows], m.field)
