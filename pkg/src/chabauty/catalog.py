"""Symmetric subalgebras of gl_n(R) and the data that enumerates their limits.

Each family is written in coordinates where its torus b is diagonal:

* ``O(p,q)``: J = diag(-I_p, I_q), algebra {Y : Y^T J + J Y = 0}.
* ``GLpGLq(p,q)``: basis f_i = e_i + e_{s+i}, g_i = e_i - e_{s+i}, then the
  remaining e's (s = min(p, q)).  There J = [[0,-I_s,0],[-I_s,0,0],[0,0,I_r]]
  and the algebra is {Y : JY = YJ}.
* ``GLC(m)``: J = [[0, I_m], [-I_m, 0]], algebra {Y : JY = YJ}.
* ``Sp(2m)``: J = diag(J_0, ..., J_0), algebra {Y : Y^T J + J Y = 0}.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exactmat import ZERO, MatrixSubspace, RatMatrix, space_from_vectors
from .liealg import DiagonalDirection, linear_condition_space, permutation_matrix

KINDS = ("O", "GLpGLq", "GLC", "Sp")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricFamily:
    kind: str
    params: tuple
    n: int
    defining_form: RatMatrix
    algebra: MatrixSubspace

    @property
    def label(self) -> str:
        if self.kind == "Sp":
            return f"Sp({self.n})"
        return f"{self.kind}({','.join(map(str, self.params))})"

    def involution(self, y: RatMatrix) -> RatMatrix:
        J = self.defining_form
        if self.kind in ("O", "Sp"):
            return -(J @ y.T @ J.inverse())
        return J @ y @ J.inverse()


def expected_dim(kind: str, params: tuple) -> int:
    if kind == "O":
        n = sum(params)
        return n * (n - 1) // 2
    if kind == "GLpGLq":
        p, q = params
        return p * p + q * q
    if kind == "GLC":
        (m,) = params
        return 2 * m * m
    (two_m,) = params
    m = two_m // 2
    return m * (2 * m + 1)


def orthogonal_algebra(J: RatMatrix) -> MatrixSubspace:
    return linear_condition_space(J.rows, lambda y: y.T @ J + J @ y)


def commutant(J: RatMatrix) -> MatrixSubspace:
    return linear_condition_space(J.rows, lambda y: J @ y - y @ J)


def _block(blocks, n):
    """Assemble an n x n matrix from {(i, j): value} with 0-based indices."""
    entries = [ZERO] * (n * n)
    for (i, j), v in blocks.items():
        entries[i * n + j] = Fraction(v)
    return RatMatrix(n, n, tuple(entries))


def gl_pq_form(p: int, q: int) -> RatMatrix:
    s, n = min(p, q), p + q
    vals = {}
    for i in range(s):
        vals[(i, s + i)] = -1
        vals[(s + i, i)] = -1
    for k in range(2 * s, n):
        vals[(k, k)] = 1
    return _block(vals, n)


def glc_form(m: int) -> RatMatrix:
    vals = {}
    for i in range(m):
        vals[(i, m + i)] = 1
        vals[(m + i, i)] = -1
    return _block(vals, 2 * m)


def symplectic_form(n: int) -> RatMatrix:
    vals = {}
    for j in range(n // 2):
        vals[(2 * j, 2 * j + 1)] = 1
        vals[(2 * j + 1, 2 * j)] = -1
    return _block(vals, n)


def make_family(kind: str, *params: int) -> SymmetricFamily:
    """``make_family("O", 1, 3)``, ``("GLpGLq", p, q)``, ``("GLC", m)``, ``("Sp", 2m)``."""
    if kind not in KINDS:
        raise FamilyError(f"unknown family kind {kind!r}")
    if any(not isinstance(v, int) or v < 0 for v in params):
        raise FamilyError(f"parameters must be non-negative integers, got {params}")
    if kind in ("O", "GLpGLq"):
        if len(params) != 2 or sum(params) < 1:
            raise FamilyError(f"{kind} needs (p, q) with p + q >= 1")
        p, q = params
        n = p + q
        if kind == "O":
            J = RatMatrix.diag([-1] * p + [1] * q)
            alg = orthogonal_algebra(J)
        else:
            J = gl_pq_form(p, q)
            alg = commutant(J)
    elif kind == "GLC":
        if len(params) != 1 or params[0] < 1:
            raise FamilyError("GLC needs m >= 1")
        n = 2 * params[0]
        J = glc_form(params[0])
        alg = commutant(J)
    else:
        if len(params) != 1 or params[0] < 2 or params[0] % 2:
            raise FamilyError("Sp needs an even size 2m >= 2")
        n = params[0]
        J = symplectic_form(n)
        alg = orthogonal_algebra(J)
    fam = SymmetricFamily(kind, tuple(params), n, J, alg)
    assert alg.dim == expected_dim(kind, fam.params)
    return fam


_SPEC = re.compile(r"^\s*(O|GLpGLq|GLC|Sp)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def parse_family(spec: str) -> SymmetricFamily:
    m = _SPEC.match(spec)
    if not m:
        raise FamilyError(f"cannot parse family spec {spec!r}")
    kind = m.group(1)
    nums = [int(g) for g in m.group(2, 3) if g is not None]
    return make_family(kind, *nums)


# ---------------------------------------------------------------- roots

@dataclass(frozen=True)
class RootChoice:
    family: SymmetricFamily
    b_basis: tuple  # DiagonalDirections spanning b
    simple_roots: tuple  # coefficient vectors on the parameters (d_1, ..., d_k)
    root_labels: tuple
    weyl_reps: tuple  # permutations as 0-based tuples


def _n_params(fam: SymmetricFamily) -> int:
    if fam.kind == "O":
        return fam.n
    if fam.kind == "GLpGLq":
        return min(fam.params)
    return fam.n // 2


def embed(fam: SymmetricFamily, d) -> DiagonalDirection:
    """The diagonal element of b with parameters d."""
    d = [Fraction(v) for v in d]
    if fam.kind == "O":
        return DiagonalDirection(tuple(d))
    if fam.kind == "GLpGLq":
        s = len(d)
        return DiagonalDirection(tuple(d) + tuple(-v for v in d) + (ZERO,) * (fam.n - 2 * s))
    if fam.kind == "GLC":
        return DiagonalDirection(tuple(d) + tuple(-v for v in d))
    return DiagonalDirection(tuple(v for v in d for _ in range(2)))


def shuffle_permutations(p: int, q: int) -> list[tuple]:
    """The shuffle representatives of S_n / (S_p x S_q), as 0-based images."""
    n = p + q
    reps = []
    for k in range(min(p, q) + 1):
        for i_set in itertools.combinations(range(p), k):
            for j_set in itertools.combinations(range(p, n), k):
                perm = [None] * n
                for r, i in enumerate(i_set):
                    perm[i] = p + r
                for r, j in enumerate(j_set):
                    perm[j] = p - k + r
                rest_p = [i for i in range(p) if i not in i_set]
                rest_q = [j for j in range(p, n) if j not in j_set]
                for t, i in enumerate(rest_p):
                    perm[i] = t
                for t, j in enumerate(rest_q):
                    perm[j] = p + k + t
                reps.append(tuple(perm))
    assert len(reps) == comb(n, p)
    return reps


def root_choice(fam: SymmetricFamily) -> RootChoice:
    k = _n_params(fam)
    roots, labels = [], []
    for i in range(k - 1):
        v = [0] * k
        v[i + 1], v[i] = 1, -1
        roots.append(tuple(v))
        labels.append(f"d{i + 2}-d{i + 1}")
    if fam.kind in ("GLC", "GLpGLq") and k >= 1:
        v = [0] * k
        v[0] = 2
        roots.append(tuple(v))
        labels.append("2d1")
    if fam.kind in ("O", "Sp"):
        b = tuple(embed(fam, [1 if t == i else -1 if t == i + 1 else 0 for t in range(k)]) for i in range(k - 1))
    else:
        b = tuple(embed(fam, [1 if t == i else 0 for t in range(k)]) for i in range(k))
    if fam.kind == "O":
        weyl = tuple(shuffle_permutations(*fam.params))
    else:
        weyl = (tuple(range(fam.n)),)
    return RootChoice(fam, b, tuple(roots), tuple(labels), weyl)


def chamber_parameters(fam: SymmetricFamily, I) -> tuple:
    """Integer parameters putting x in the relative interior of b_I^+ (before trace clearing)."""
    k = _n_params(fam)
    if k == 0:
        return ()
    rc_labels = root_choice_labels(fam)
    I = set(I)
    unknown = I - set(rc_labels)
    if unknown:
        raise FamilyError(f"roots {sorted(unknown)} not simple roots of {fam.label}")
    if fam.kind in ("GLC", "GLpGLq"):
        d = [0 if "2d1" in I else 1]
    else:
        d = [0]
    for i in range(k - 1):
        d.append(d[-1] + (0 if f"d{i + 2}-d{i + 1}" in I else 1))
    return tuple(d)


def root_choice_labels(fam: SymmetricFamily) -> tuple:
    k = _n_params(fam)
    labels = [f"d{i + 2}-d{i + 1}" for i in range(k - 1)]
    if fam.kind in ("GLC", "GLpGLq") and k >= 1:
        labels.append("2d1")
    return tuple(labels)


def direction_for(fam: SymmetricFamily, I) -> DiagonalDirection:
    x = embed(fam, chamber_parameters(fam, I))
    return x.traceless() if fam.kind in ("O", "Sp") else x


def weyl_form(fam: SymmetricFamily, w: tuple) -> RatMatrix:
    """J_w with J_w[i, i] = J[w(i), w(i)], i.e. P^-1 J P for P e_i = e_{w(i)}."""
    P = permutation_matrix(w)
    return P.inverse() @ fam.defining_form @ P


@dataclass(frozen=True)
class DirectionChoice:
    I: frozenset
    w: tuple
    x: DiagonalDirection
    form: RatMatrix
    algebra: MatrixSubspace


def enumerate_directions(fam: SymmetricFamily) -> list[DirectionChoice]:
    rc = root_choice(fam)
    out = []
    for r in range(len(rc.root_labels) + 1):
        for I in itertools.combinations(rc.root_labels, r):
            x = direction_for(fam, I)
            for w in rc.weyl_reps:
                if fam.kind == "O" and w != tuple(range(fam.n)):
                    form = weyl_form(fam, w)
                    alg = orthogonal_algebra(form)
                else:
                    form, alg = fam.defining_form, fam.algebra
                out.append(DirectionChoice(frozenset(I), w, x, form, alg))
    return out


# ---------------------------------------------------------- block forms

@dataclass(frozen=True)
class BlockSpec:
    kind: str
    indices: tuple  # 0-based coordinates the block acts on


@dataclass(frozen=True)
class BlockForm:
    n: int
    blocks: tuple
    unipotent: frozenset  # 0-based (i, j) coordinates of U(F)
    generators: tuple = field(repr=False)

    def span(self) -> MatrixSubspace:
        return MatrixSubspace.span(list(self.generators), n=self.n) + MatrixSubspace.coordinate(self.n, self.unipotent)

    def describe(self) -> str:
        return " + ".join(f"{b.kind}{list(i + 1 for i in b.indices)}" for b in self.blocks)


def _unit(n, i, j):
    return RatMatrix.unit(n, i + 1, j + 1)


def _classes(values) -> dict:
    out: dict = {}
    for i, v in enumerate(values):
        out.setdefault(v, []).append(i)
    return out


def _outer(n, u, v):
    return RatMatrix(n, n, tuple(a * b for a in u for b in v))


def predicted_block_form(fam: SymmetricFamily, I, w: tuple | None = None) -> BlockForm:
    """Block-diagonal centralizer plus flag unipotent part, built from explicit generators."""
    n = fam.n
    x = direction_for(fam, I)
    d = x.weights
    unip = frozenset((i, j) for i in range(n) for j in range(n) if d[i] > d[j])
    gens, blocks = [], []
    if fam.kind == "O":
        form = weyl_form(fam, w) if w is not None else fam.defining_form
        sign = [form[i, i] for i in range(n)]
        for _, idx in sorted(_classes(d).items()):
            p = sum(1 for i in idx if sign[i] < 0)
            blocks.append(BlockSpec(f"O({p},{len(idx) - p})", tuple(idx)))
            for a, b in itertools.combinations(idx, 2):
                gens.append(_unit(n, a, b) - _unit(n, b, a) * (sign[a] * sign[b]))
    elif fam.kind == "Sp":
        Jinv = fam.defining_form.inverse()
        for _, idx in sorted(_classes(d).items()):
            blocks.append(BlockSpec(f"Sp({len(idx)})", tuple(idx)))
            for a, b in itertools.combinations_with_replacement(idx, 2):
                gens.append(Jinv @ (_unit(n, a, b) + _unit(n, b, a)))
    else:
        k = _n_params(fam)
        params = d[:k]
        for lam, idx in sorted(_classes(params).items()):
            paired = tuple(idx) + tuple(k + a for a in idx)
            if lam > 0:
                blocks.append(BlockSpec(f"GL({len(idx)})x2", paired))
                for a in idx:
                    for b in idx:
                        gens.append(_unit(n, a, b) + _unit(n, k + a, k + b))
        zero = [a for a in range(k) if params[a] == 0]
        rest = list(range(2 * k, n))
        if fam.kind == "GLC" and zero:
            blocks.append(BlockSpec(f"GL({len(zero)},C)", tuple(zero) + tuple(m + k for m in zero)))
            for a in zero:
                for b in zero:
                    gens.append(_unit(n, a, b) + _unit(n, k + a, k + b))
                    gens.append(_unit(n, a, k + b) - _unit(n, k + a, b))
        elif fam.kind == "GLpGLq" and (zero or rest):
            # J = -1 on u_a = f_a + g_a and +1 on v_a = f_a - g_a and the trailing e's
            half = Fraction(1, 2)

            def vec(pairs):
                v = [ZERO] * n
                for i, c in pairs:
                    v[i] += c
                return v

            minus = [(vec([(a, 1), (k + a, 1)]), vec([(a, half), (k + a, half)])) for a in zero]
            plus = [(vec([(a, 1), (k + a, -1)]), vec([(a, half), (k + a, -half)])) for a in zero]
            plus += [(vec([(e, 1)]), vec([(e, 1)])) for e in rest]
            blocks.append(BlockSpec(f"GL({len(minus)})+GL({len(plus)})",
                                    tuple(zero) + tuple(k + a for a in zero) + tuple(rest)))
            for space in (minus, plus):
                for u, _ in space:
                    for _, vstar in space:
                        gens.append(_outer(n, u, vstar))
    return BlockForm(n, tuple(blocks), unip, tuple(gens))


def signature_from_direction(form: RatMatrix, x: DiagonalDirection) -> tuple:
    """Signature pairs of a diagonal form on the eigenspaces of x, by increasing weight."""
    out = []
    for _, idx in sorted(_classes(x.weights).items()):
        p = sum(1 for i in idx if form[i, i] < 0)
        out.append((p, len(idx) - p))
    return tuple(out)
