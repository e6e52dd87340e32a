"""Brackets, closure, centralizers, normalizers and weight gradings."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .exactmat import (
    ZERO,
    DimensionError,
    MatrixSubspace,
    RatMatrix,
    format_rational,
    kernel,
    rref_rows,
    space_from_vectors,
    to_rational,
)


@dataclass(frozen=True)
class DiagonalDirection:
    """X = diag(d_1, ..., d_n); entry (i, j) has weight d_i - d_j."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(to_rational(w) for w in self.weights))

    @classmethod
    def of(cls, *weights) -> "DiagonalDirection":
        return cls(tuple(weights))

    @classmethod
    def zero(cls, n: int) -> "DiagonalDirection":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, i: int, j: int) -> Fraction:
        return self.weights[i] - self.weights[j]

    def matrix(self) -> RatMatrix:
        return RatMatrix.diag(self.weights)

    def is_zero(self) -> bool:
        return not any(self.weights)

    def scaled(self, c) -> "DiagonalDirection":
        c = to_rational(c)
        return DiagonalDirection(tuple(c * w for w in self.weights))

    def __add__(self, other: "DiagonalDirection") -> "DiagonalDirection":
        if self.n != other.n:
            raise DimensionError("directions of different size")
        return DiagonalDirection(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def traceless(self) -> "DiagonalDirection":
        """Shift by a multiple of the identity so the weights sum to zero (scaled by n to stay integral)."""
        n = self.n
        s = sum(self.weights, ZERO)
        return DiagonalDirection(tuple(n * w - s for w in self.weights))

    def to_literal(self) -> list[str]:
        return [format_rational(w) for w in self.weights]

    def __repr__(self):
        return f"diag({', '.join(self.to_literal())})"


@dataclass(frozen=True)
class WeightDecomposition:
    direction: DiagonalDirection
    components: dict  # weight -> frozenset of 0-based (i, j)

    def coordinates(self, sign: int) -> list[tuple[int, int]]:
        """All coordinates whose weight has the given sign (-1, 0 or 1)."""
        out = []
        for lam, coords in self.components.items():
            if (lam > 0) - (lam < 0) == sign:
                out.extend(coords)
        return sorted(out)


def weight_decomposition(x: DiagonalDirection) -> WeightDecomposition:
    comps = defaultdict(set)
    for i in range(x.n):
        for j in range(x.n):
            comps[x.weight(i, j)].add((i, j))
    return WeightDecomposition(x, {lam: frozenset(c) for lam, c in sorted(comps.items(), reverse=True)})


def _check_square(*mats: RatMatrix):
    n = mats[0].rows
    for m in mats:
        if m.rows != n or m.cols != n:
            raise DimensionError("expected square matrices of equal size")


def bracket(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    _check_square(a, b)
    return a @ b - b @ a


def is_subalgebra(s: MatrixSubspace) -> bool:
    mats = s.matrices()
    for k, a in enumerate(mats):
        for b in mats[k + 1:]:
            if any(s.reduce(bracket(a, b).entries)):
                return False
    return True


def _check_direction(s: MatrixSubspace, x: DiagonalDirection):
    if s.n != x.n:
        raise DimensionError(f"{x.n} weights for {s.n}x{s.n} matrices")


def zero_weight_space(x: DiagonalDirection) -> MatrixSubspace:
    return MatrixSubspace.coordinate(x.n, weight_decomposition(x).coordinates(0))


def positive_weight_space(x: DiagonalDirection) -> MatrixSubspace:
    return MatrixSubspace.coordinate(x.n, weight_decomposition(x).coordinates(1))


def centralizer_in(s: MatrixSubspace, x: DiagonalDirection) -> MatrixSubspace:
    _check_direction(s, x)
    if x.is_zero():
        return s
    return s & zero_weight_space(x)


def centralizer_of_elements(s: MatrixSubspace, elements: Sequence[RatMatrix]) -> MatrixSubspace:
    """{Y in s : [Y, e] = 0 for every e}, solved directly on coefficients of the basis of s."""
    mats = s.matrices()
    if not mats:
        return s
    cols = []
    for m in mats:
        col = []
        for e in elements:
            col.extend(bracket(m, e).entries)
        cols.append(col)
    if not cols[0]:
        return s
    system = [[col[t] for col in cols] for t in range(len(cols[0]))]
    vecs = []
    for c in kernel(system, len(mats)):
        v = [ZERO] * (s.n * s.n)
        for ci, m in zip(c, mats):
            if ci:
                for t, e in enumerate(m.entries):
                    v[t] += ci * e
        vecs.append(v)
    return space_from_vectors(vecs, s.n)


def linear_condition_space(n: int, condition: Callable[[RatMatrix], RatMatrix]) -> MatrixSubspace:
    """Kernel of a linear map on n x n matrices, evaluated on the elementary basis."""
    images = [condition(RatMatrix.unit(n, i + 1, j + 1)).entries for i in range(n) for j in range(n)]
    system = [[img[t] for img in images] for t in range(len(images[0]))]
    return space_from_vectors(kernel(system, n * n), n)


def normalizer_dim(s: MatrixSubspace) -> int:
    """dim {Y in gl_n : [Y, s] in s}."""
    if not is_subalgebra(s):
        raise ValueError("normalizer_dim expects a subalgebra")
    n = s.n
    N = n * n
    basis = s.matrices()
    if not basis:
        return N
    columns = []
    for i in range(n):
        for j in range(n):
            e = RatMatrix.unit(n, i + 1, j + 1)
            col = []
            for b in basis:
                col.extend(s.reduce(bracket(e, b).entries))
            columns.append(col)
    system = [[col[t] for col in columns] for t in range(len(columns[0]))]
    _, pivots = rref_rows(system, N)
    return N - len(pivots)


def weight_decompose(m: RatMatrix, x: DiagonalDirection) -> dict:
    if (m.rows, m.cols) != (x.n, x.n):
        raise DimensionError(f"{m.rows}x{m.cols} matrix vs {x.n} weights")
    n = x.n
    parts: dict = {}
    for i in range(n):
        for j in range(n):
            v = m[i, j]
            if v:
                parts.setdefault(x.weight(i, j), [ZERO] * (n * n))[i * n + j] = v
    if not parts:
        return {Fraction(0): RatMatrix.zeros(n)}
    return {lam: RatMatrix(n, n, tuple(v)) for lam, v in sorted(parts.items(), reverse=True)}


def conjugate_space(g: RatMatrix, s: MatrixSubspace, g_inv: RatMatrix | None = None) -> MatrixSubspace:
    """Ad(g) s = span{g Y g^-1}."""
    g_inv = g.inverse() if g_inv is None else g_inv
    return MatrixSubspace.span([g @ m @ g_inv for m in s.matrices()], n=s.n)


def permutation_matrix(perm: Sequence[int]) -> RatMatrix:
    """P with P e_k = e_{perm[k]} (0-based)."""
    n = len(perm)
    entries = [ZERO] * (n * n)
    for k, target in enumerate(perm):
        entries[target * n + k] = Fraction(1)
    return RatMatrix(n, n, tuple(entries))
