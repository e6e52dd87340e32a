"""Exact rational matrices and subspaces of n x n matrix space.

Every subspace is stored as a reduced row-echelon basis of flattened
matrices.  Entry (i, j) of an n x n matrix (0-based) sits at vector
coordinate i * n + j, so pivots are ordered row-major and two subspaces
are equal exactly when their bases are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Operands live in incompatible ambient spaces."""


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or literal string like ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(to_rational(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix literal")
        return cls(len(rows), ncols, tuple(e for r in rows for e in r))

    from_literal = from_rows

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        entries = [ZERO] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = to_rational(v)
        return cls(n, n, tuple(entries))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RatMatrix":
        """Elementary matrix E_ij with 1-based indices, as written in the literature."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"E_{i}{j} outside {n}x{n}")
        entries = [ZERO] * (n * n)
        entries[(i - 1) * n + (j - 1)] = ONE
        return cls(n, n, tuple(entries))

    @classmethod
    def from_vector(cls, vec: Sequence, n: int) -> "RatMatrix":
        return cls(n, n, tuple(vec))

    # access -----------------------------------------------------------
    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_literal(self) -> list[list[str]]:
        return [[format_rational(e) for e in self.row(i)] for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def flatten(self) -> tuple:
        return self.entries

    # arithmetic -------------------------------------------------------
    def _check_same_shape(self, other: "RatMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, scalar) -> "RatMatrix":
        c = to_rational(scalar)
        return RatMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.entries, other.entries
        m, k, n = self.rows, self.cols, other.cols
        out = []
        for i in range(m):
            arow = a[i * k:(i + 1) * k]
            for j in range(n):
                s = ZERO
                for t in range(k):
                    x = arow[t]
                    if x:
                        y = b[t * n + j]
                        if y:
                            s += x * y
                out.append(s)
        return RatMatrix(m, n, tuple(out))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), ZERO)

    def inverse(self) -> "RatMatrix":
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
        reduced, pivots = rref_rows(aug, 2 * n)
        if len(pivots) < n or pivots[n - 1] >= n:
            raise ZeroDivisionError("matrix is singular")
        return RatMatrix.from_rows([r[n:] for r in reduced])

    def __repr__(self):
        return f"RatMatrix({self.to_literal()})"


def rref_rows(rows: Iterable[Sequence], ncols: int, order: Sequence[int] | None = None):
    """Gauss-Jordan elimination over the rationals.

    ``order`` gives the column priority for pivots; the default is left to
    right.  Returns (nonzero reduced rows sorted by pivot priority, pivot
    columns).  Pivot entries are 1 and pivot columns are zero elsewhere.
    """
    order = list(range(ncols)) if order is None else list(order)
    work = [list(map(to_rational, r)) for r in rows]
    pivots = []
    r = 0
    for c in order:
        if r == len(work):
            break
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        prow = work[r]
        inv = ONE / prow[c]
        if inv != ONE:
            prow = work[r] = [x * inv for x in prow]
        nz = [k for k, x in enumerate(prow) if x]
        for i in range(len(work)):
            if i != r:
                f = work[i][c]
                if f:
                    row = work[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def kernel(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {v : M v = 0} for the matrix whose rows are given."""
    reduced, pivots = rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class MatrixSubspace:
    """Subspace of n x n matrices, stored as a canonical echelon basis."""

    n: int
    basis: tuple  # tuple of flattened vectors in reduced echelon form

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.n * self.n

    @property
    def pivots(self) -> tuple:
        return tuple(next(k for k, x in enumerate(v) if x) for v in self.basis)

    def matrices(self) -> list[RatMatrix]:
        return [RatMatrix.from_vector(v, self.n) for v in self.basis]

    def reduce(self, vec: Sequence) -> tuple:
        """Residue of ``vec`` modulo the space (zero iff vec is in the space)."""
        v = list(vec)
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                for k, x in enumerate(row):
                    if x:
                        v[k] -= f * x
        return tuple(v)

    def __contains__(self, m: RatMatrix) -> bool:
        return contains(self, m)

    def __add__(self, other: "MatrixSubspace") -> "MatrixSubspace":
        return sum_spaces(self, other)

    def __and__(self, other: "MatrixSubspace") -> "MatrixSubspace":
        return intersect(self, other)

    def is_subspace_of(self, other: "MatrixSubspace") -> bool:
        _check_n(self, other)
        return all(not any(other.reduce(v)) for v in self.basis)

    @classmethod
    def zero(cls, n: int) -> "MatrixSubspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "MatrixSubspace":
        return cls.coordinate(n, [(i, j) for i in range(n) for j in range(n)])

    @classmethod
    def coordinate(cls, n: int, coords: Iterable[tuple[int, int]]) -> "MatrixSubspace":
        """Span of the elementary matrices at the given 0-based (i, j)."""
        idx = sorted({i * n + j for i, j in coords})
        basis = []
        for k in idx:
            v = [ZERO] * (n * n)
            v[k] = ONE
            basis.append(tuple(v))
        return cls(n, tuple(basis))

    @classmethod
    def span(cls, mats: Iterable[RatMatrix], n: int | None = None) -> "MatrixSubspace":
        return echelonize(list(mats), n=n)

    def to_literal(self) -> list:
        return [m.to_literal() for m in self.matrices()]

    def __repr__(self):
        return f"MatrixSubspace(n={self.n}, dim={self.dim})"


def _check_n(a: MatrixSubspace, b: MatrixSubspace):
    if a.n != b.n:
        raise DimensionError(f"ambient {a.n}x{a.n} vs {b.n}x{b.n}")


def space_from_vectors(vectors: Iterable[Sequence], n: int) -> MatrixSubspace:
    vecs = [tuple(map(to_rational, v)) for v in vectors]
    if any(len(v) != n * n for v in vecs):
        raise DimensionError(f"vectors must have length {n * n}")
    reduced, _ = rref_rows(vecs, n * n)
    return MatrixSubspace(n, tuple(tuple(r) for r in reduced))


def echelonize(vectors: Sequence[RatMatrix], n: int | None = None) -> MatrixSubspace:
    """Canonical echelon basis of the span of square matrices."""
    if not vectors:
        return MatrixSubspace.zero(0 if n is None else n)
    sizes = {(m.rows, m.cols) for m in vectors}
    if len(sizes) != 1:
        raise DimensionError(f"mixed matrix shapes {sorted(sizes)}")
    rows, cols = sizes.pop()
    if rows != cols or (n is not None and n != rows):
        raise DimensionError(f"expected square {n}x{n} matrices, got {rows}x{cols}")
    return space_from_vectors((m.entries for m in vectors), rows)


def contains(space: MatrixSubspace, m: RatMatrix) -> bool:
    if (m.rows, m.cols) != (space.n, space.n):
        raise DimensionError(f"{m.rows}x{m.cols} matrix vs {space.n}x{space.n} space")
    return not any(space.reduce(m.entries))


def sum_spaces(a: MatrixSubspace, b: MatrixSubspace) -> MatrixSubspace:
    _check_n(a, b)
    return space_from_vectors(a.basis + b.basis, a.n)


def intersect(a: MatrixSubspace, b: MatrixSubspace) -> MatrixSubspace:
    """Exact intersection via the kernel of (c, d) -> sum c_i a_i - sum d_j b_j."""
    _check_n(a, b)
    if not a.dim or not b.dim:
        return MatrixSubspace.zero(a.n)
    N = a.n * a.n
    k = a.dim
    # columns of the system are the coefficients (c, d); rows are coordinates
    cols = list(a.basis) + [tuple(-x for x in v) for v in b.basis]
    system = [[col[t] for col in cols] for t in range(N)]
    combos = kernel(system, len(cols))
    vecs = []
    for c in combos:
        v = [ZERO] * N
        for ci, basis_vec in zip(c[:k], a.basis):
            if ci:
                for t, x in enumerate(basis_vec):
                    if x:
                        v[t] += ci * x
        vecs.append(v)
    return space_from_vectors(vecs, a.n)
