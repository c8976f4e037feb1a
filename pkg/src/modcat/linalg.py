"""Exact scalars, dense matrices and row reduction over Q and F_p.

Everything downstream (tensor quotients, hom spaces, coherence checks)
reduces to the handful of routines here: ``rref``, ``kernel``, ``solve``,
``quotient`` and the ``Subspace`` carrier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Residue:
    """Element of F_p, stored as a residue in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Residue(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Residue(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Residue(v - self.value, self.p)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Residue(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        if v % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(v, self.p) / self

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0 and self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"


@dataclass(frozen=True)
class Field:
    """Exact base field: the rationals (``p == 0``) or F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"F_p needs a prime p, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, x):
        if self.p == 0:
            if type(x) is Fraction:
                return x
            if isinstance(x, Residue):
                raise TypeError("residue used as a rational")
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if type(x) is Residue:
            if x.p != self.p:
                raise ValueError(f"residue mod {x.p} used in F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, int):
            return Residue(x, self.p)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def vector(self, values: Iterable) -> Vector:
        return tuple(self(v) for v in values)

    def zeros(self, n: int) -> Vector:
        z = self.zero
        return (z,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        v = [self.zero] * n
        v[i] = self.one
        return tuple(v)

    def format(self, x) -> str:
        """Text encoding: ``a/b`` (``b`` omitted when 1) or a decimal residue."""
        x = self(x)
        if self.p:
            return str(x.value)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text) -> object:
        return self(text)

    @property
    def spec(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("fp:"):
            return cls(int(t[3:]))
        raise ValueError(f"unknown field spec {text!r}; use q or fp:<p>")

    def __str__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"


QQ = Field(0)


# -- vectors ----------------------------------------------------------------

def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def lin_comb(field: Field, coeffs: Sequence, vectors: Sequence[Sequence], length: int) -> Vector:
    out = [field.zero] * length
    for c, vec in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(vec):
            if a:
                out[i] += c * a
    return tuple(out)


# -- matrices ---------------------------------------------------------------

class Matrix:
    """Immutable dense matrix; acts on column vectors."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: Iterable[Iterable] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            self.data = tuple((z,) * cols for _ in range(rows))
        else:
            self.data = tuple(tuple(field(x) for x in r) for r in data)
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise ValueError(f"matrix data does not have shape {rows}x{cols}")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ValueError("column count needed for an empty row list")
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = list(columns)
        if rows is None:
            if not columns:
                raise ValueError("row count needed for an empty column list")
            rows = len(columns[0])
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [field.unit_vector(n, i) for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def from_flat(cls, field: Field, rows: int, cols: int, flat: Sequence) -> "Matrix":
        return cls(field, rows, cols, [flat[i * cols:(i + 1) * cols] for i in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def flatten(self) -> Vector:
        return tuple(x for r in self.data for x in r)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __matmul__(self, other):
        z = self.field.zero
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return Matrix(self.field, self.rows, other.cols,
                          [[_dot(r, c, z) for c in ocols] for r in self.data])
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} against {self.shape} matrix")
        return tuple(_dot(r, v, z) for r in self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.rows, self.cols,
                      [vec_add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.rows, self.cols,
                      [vec_sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, [vec_scale(c, r) for r in self.data])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def to_text(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self.data]


def _dot(u, v, zero):
    s = zero
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def hstack(field: Field, blocks: Sequence[Matrix], rows: int) -> Matrix:
    data = [[] for _ in range(rows)]
    for b in blocks:
        for i in range(rows):
            data[i].extend(b.data[i])
    return Matrix(field, rows, sum(b.cols for b in blocks), data)


def vstack(field: Field, blocks: Sequence[Matrix], cols: int) -> Matrix:
    data = [r for b in blocks for r in b.data]
    return Matrix(field, len(data), cols, data)


def block_diag(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r0 + i][c0 + j] = b.data[i][j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(field, rows, cols, data)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, index (i, j) -> i * b.rows + j."""
    f = a.field
    data = []
    for i in range(a.rows):
        for k in range(b.rows):
            row = []
            for j in range(a.cols):
                x = a.data[i][j]
                for l in range(b.cols):
                    row.append(x * b.data[k][l])
            data.append(row)
    return Matrix(f, a.rows * b.rows, a.cols * b.cols, data)


# -- row reduction ----------------------------------------------------------

def _rref_rows(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows, pivots = _rref_rows(m.field, list(m.data), m.cols)
    return Matrix(m.field, len(rows), m.cols, rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(m: Matrix, rhs: Sequence) -> Vector | None:
    """One solution of ``m x = rhs`` with free variables set to zero, or None."""
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    f = m.field
    aug = [list(r) + [f(b)] for r, b in zip(m.data, rhs)]
    rows, pivots = _rref_rows(f, aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [f.zero] * m.cols
    for r, p in zip(rows, pivots):
        x[p] = r[m.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix | None:
    if m.rows != m.cols:
        return None
    f = m.field
    n = m.rows
    aug = [list(r) + list(f.unit_vector(n, i)) for i, r in enumerate(m.data)]
    rows, pivots = _rref_rows(f, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        return None
    return Matrix(f, n, n, [r[n:] for r in rows])


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient_dim`` held as a canonical RREF basis."""

    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[Vector]:
        return list(self.basis.data)

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in the RREF basis, or None when ``v`` is outside."""
        v = tuple(v)
        coeffs = tuple(v[p] for p in self.pivots)
        back = lin_comb(self.field, coeffs, self.basis.data, self.ambient_dim)
        return coeffs if back == v else None

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def join(self, other: "Subspace") -> "Subspace":
        return span(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def basis_columns(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self.field, self.vectors(), rows=self.ambient_dim)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix(field, 0, n), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n), tuple(range(n)))


def span(field: Field, n: int, vectors: Iterable[Sequence]) -> Subspace:
    rows, pivots = _rref_rows(field, [list(map(field, v)) for v in vectors], n)
    return Subspace(field, n, Matrix(field, len(rows), n, rows), tuple(pivots))


def row_space(m: Matrix) -> Subspace:
    return span(m.field, m.cols, m.data)


def column_space(m: Matrix) -> Subspace:
    return span(m.field, m.rows, m.columns())


def kernel(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}`` as an RREF basis."""
    f = m.field
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vecs = []
    for c in free:
        v = [f.zero] * m.cols
        v[c] = f.one
        for row, p in zip(r.data, pivots):
            v[p] = -row[c]
        vecs.append(v)
    return span(f, m.cols, vecs)


@dataclass(frozen=True)
class QuotientSpace:
    """``field^ambient_dim / relations`` with explicit projection and section.

    The quotient basis is indexed by the non-pivot coordinates of the relation
    RREF, so ``projection @ section`` is the identity.
    """

    ambient_dim: int
    relations: Subspace
    free: tuple[int, ...]
    projection: Matrix
    section: Matrix

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, v: Sequence) -> Vector:
        return self.projection @ v


def quotient(ambient_dim: int, relations: Subspace) -> QuotientSpace:
    if relations.ambient_dim != ambient_dim:
        raise ValueError("relations live in a different ambient space")
    f = relations.field
    piv = set(relations.pivots)
    free = tuple(c for c in range(ambient_dim) if c not in piv)
    where = {c: i for i, c in enumerate(free)}
    cols = []
    pivot_row = {p: relations.basis.row(i) for i, p in enumerate(relations.pivots)}
    for c in range(ambient_dim):
        col = [f.zero] * len(free)
        if c in where:
            col[where[c]] = f.one
        else:
            row = pivot_row[c]
            for d, i in where.items():
                col[i] = -row[d]
        cols.append(col)
    projection = Matrix.from_columns(f, cols, rows=len(free))
    section = Matrix.from_columns(f, [f.unit_vector(ambient_dim, c) for c in free], rows=ambient_dim)
    return QuotientSpace(ambient_dim, relations, free, projection, section)


# -- joint intertwiner systems ------------------------------------------------

def intertwiner_space(field: Field, shapes: dict, constraints: Iterable[tuple]) -> Subspace:
    """Tuples of matrices ``T[key]`` (shape ``shapes[key]``) with ``Y @ T[a] == T[b] @ X``.

    Each constraint is ``(Y, a, b, X)``. Unknowns are flattened key by key in
    the order of ``shapes``, each block row-major; see :func:`unflatten`.
    """
    offsets, n = {}, 0
    for key, (r, c) in shapes.items():
        offsets[key] = n
        n += r * c
    rows = []
    for Y, a, b, X in constraints:
        (ra, ca), (_, cb) = shapes[a], shapes[b]
        oa, ob = offsets[a], offsets[b]
        # (Y T_a)[r][c] - (T_b X)[r][c] = 0
        for r in range(Y.rows):
            for c in range(ca):
                row = [field.zero] * n
                for k in range(ra):
                    if Y.data[r][k]:
                        row[oa + k * ca + c] += Y.data[r][k]
                for k in range(cb):
                    if X.data[k][c]:
                        row[ob + r * cb + k] -= X.data[k][c]
                rows.append(row)
    return kernel(Matrix(field, len(rows), n, rows))


def unflatten(field: Field, shapes: dict, vec: Sequence) -> dict:
    out, n = {}, 0
    for key, (r, c) in shapes.items():
        out[key] = Matrix.from_flat(field, r, c, vec[n:n + r * c])
        n += r * c
    return out
