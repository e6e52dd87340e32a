"""Signature sequences of partial flags of quadratic forms and their limit posets.

A sequence ((p_0,q_0),...,(p_k,q_k)) names the group preserving a flag
whose successive quotients carry forms of those signatures.  Its Lie
algebra, in adapted coordinates, is block-diagonal so(p_i,q_i) plus every
strictly-lower block.  Limits refine each block into an ordered
composition; in group mode every block may be reversed, in geometry mode
the first block may not (the domain {beta_0 < 0} must survive).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .exactmat import MatrixSubspace, RatMatrix, rref_rows
from .liealg import (
    DiagonalDirection,
    centralizer_of_elements,
    is_subalgebra,
    permutation_matrix,
    conjugate_space,
)
from .limits import grassmann_limit

GROUP = "group"
GEOMETRY = "geometry"
MODES = (GROUP, GEOMETRY)


class SignatureError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SignatureSequence:
    sigs: tuple

    def __post_init__(self):
        sigs = tuple((int(p), int(q)) for p, q in self.sigs)
        if not sigs:
            raise SignatureError("empty signature sequence")
        for p, q in sigs:
            if p < 0 or q < 0 or (p, q) == (0, 0):
                raise SignatureError(f"invalid signature pair {(p, q)}")
        object.__setattr__(self, "sigs", sigs)

    @classmethod
    def of(cls, *pairs) -> "SignatureSequence":
        return cls(tuple((p, 0) if isinstance(p, int) else p for p in pairs))

    @property
    def n(self) -> int:
        return sum(p + q for p, q in self.sigs)

    @property
    def sizes(self) -> tuple:
        return tuple(p + q for p, q in self.sigs)

    def __len__(self):
        return len(self.sigs)

    @property
    def is_geometry(self) -> bool:
        return self.sigs[0][0] > 0

    def label(self) -> str:
        parts = "".join(f"({p})" if q == 0 else f"({p},{q})" for p, q in self.sigs)
        return f"X({parts})"

    def __str__(self):
        return self.label()


_PAIR = re.compile(r"\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)")


def parse_signature(text: str) -> SignatureSequence:
    """Accepts "X(1,3)", "X((1,1)(2))", "((1,0),(2,0))" and the bare forms."""
    t = text.strip()
    if t.startswith("X"):
        t = t[1:].strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise SignatureError(f"cannot parse signature {text!r}")
    inner = t[1:-1].strip()
    if not inner.startswith("("):
        inner = f"({inner})"
    pairs, pos = [], 0
    for m in _PAIR.finditer(inner):
        gap = inner[pos:m.start()].strip().strip(",").strip()
        if gap:
            raise SignatureError(f"cannot parse signature {text!r}")
        pairs.append((int(m.group(1)), int(m.group(2) or 0)))
        pos = m.end()
    if not pairs or inner[pos:].strip():
        raise SignatureError(f"cannot parse signature {text!r}")
    return SignatureSequence(tuple(pairs))


def _normal(pair):
    p, q = pair
    return (p, q) if (p, q) >= (q, p) else (q, p)


def _check_mode(mode):
    if mode not in MODES:
        raise SignatureError(f"mode must be one of {MODES}, got {mode!r}")


def canonicalize(s: SignatureSequence, mode: str = GROUP) -> SignatureSequence:
    _check_mode(mode)
    if mode == GROUP:
        return SignatureSequence(tuple(_normal(x) for x in s.sigs))
    return SignatureSequence((s.sigs[0],) + tuple(_normal(x) for x in s.sigs[1:]))


def isom_algebra(s: SignatureSequence) -> MatrixSubspace:
    n = s.n
    starts = list(itertools.accumulate((0,) + s.sizes))
    gens = []
    coords = []
    for b, (p, q) in enumerate(s.sigs):
        idx = range(starts[b], starts[b + 1])
        sign = [-1] * p + [1] * q
        for (a, sa), (c, sc) in itertools.combinations(zip(idx, sign), 2):
            gens.append(RatMatrix.unit(n, a + 1, c + 1) - RatMatrix.unit(n, c + 1, a + 1) * (sa * sc))
        for i in range(starts[b + 1], n):
            coords.extend((i, j) for j in idx)
    return MatrixSubspace.span(gens, n=n) + MatrixSubspace.coordinate(n, coords)


def isom_dim(s: SignatureSequence) -> int:
    sizes = s.sizes
    so = sum(m * (m - 1) // 2 for m in sizes)
    return so + sum(sizes[i] * sizes[j] for i in range(len(sizes)) for j in range(i))


def _compositions(pair):
    """Ordered compositions of (p, q) into nonzero pairs."""
    p, q = pair
    if (p, q) == (0, 0):
        yield ()
        return
    for a in range(p + 1):
        for b in range(q + 1):
            if (a, b) == (0, 0):
                continue
            for rest in _compositions((p - a, q - b)):
                yield ((a, b),) + rest


@lru_cache(maxsize=None)
def _limits(sigs: tuple, mode: str) -> tuple:
    s = SignatureSequence(sigs)
    if mode == GEOMETRY and not s.is_geometry:
        raise SignatureError(f"{s.label()} is empty as a geometry (p_0 = 0)")
    found = set()
    for parts in itertools.product(*(list(_compositions(x)) for x in sigs)):
        flat = tuple(x for part in parts for x in part)
        if mode == GEOMETRY and flat[0][0] == 0:
            continue
        found.add(canonicalize(SignatureSequence(flat), mode))
    return tuple(sorted(found, key=_node_key))


def _node_key(s: SignatureSequence):
    return (len(s), tuple((-p - q, -p) for p, q in s.sigs))


def enumerate_limits(s: SignatureSequence, mode: str = GROUP) -> list[SignatureSequence]:
    _check_mode(mode)
    return list(_limits(canonicalize(s, mode).sigs, mode))


@dataclass(frozen=True)
class LimitPoset:
    nodes: tuple
    edges: tuple
    mode: str

    def successors(self, u) -> list:
        return [v for a, v in self.edges if a == u]

    def reachable(self) -> dict:
        """Reflexive-transitive closure of the cover edges."""
        reach = {u: {u} for u in self.nodes}
        for u in reversed(self.nodes):
            for v in self.successors(u):
                reach[u] |= reach[v]
        return reach

    def to_dot(self) -> str:
        ids = {u: f"n{k}" for k, u in enumerate(self.nodes)}
        lines = ["digraph limits {"]
        for u in self.nodes:
            lines.append(f'  {ids[u]} [label="{u.label()}"];')
        for u, v in self.edges:
            lines.append(f"  {ids[u]} -> {ids[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"mode: {self.mode}", f"nodes: {len(self.nodes)}"]
        lines += [f"  {u.label()}" for u in self.nodes]
        lines.append(f"edges: {len(self.edges)}")
        lines += [f"  {u.label()} -> {v.label()}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def build_poset(starts: SignatureSequence | Iterable[SignatureSequence], mode: str = GROUP) -> LimitPoset:
    """Cover relation on the limits of one start, or the union over several."""
    _check_mode(mode)
    if isinstance(starts, SignatureSequence):
        starts = [starts]
    nodes = set()
    for s in starts:
        nodes.update(enumerate_limits(s, mode))
    nodes = sorted(nodes, key=_node_key)
    below = {u: set(enumerate_limits(u, mode)) - {u} for u in nodes}
    edges = []
    for u in nodes:
        for v in nodes:
            if v in below[u] and not any(v in below[w] for w in below[u] if w != v):
                edges.append((u, v))
    return LimitPoset(tuple(nodes), tuple(edges), mode)


# ----------------------------------------------------------- witnesses

@dataclass(frozen=True)
class LimitWitness:
    direction: DiagonalDirection
    permutation: tuple  # coordinate c of the source goes to position permutation[c]
    base_point: int

    def check(self, s_from: SignatureSequence, s_to: SignatureSequence) -> bool:
        lim = grassmann_limit(isom_algebra(s_from), self.direction)
        moved = conjugate_space(permutation_matrix(self.permutation), lim)
        return moved == isom_algebra(s_to)


def limit_witness(s_from: SignatureSequence, s_to: SignatureSequence) -> LimitWitness:
    s_to = canonicalize(s_to, GEOMETRY)
    if s_to not in enumerate_limits(s_from, GEOMETRY):
        raise SignatureError(f"{s_to.label()} is not a limit of {s_from.label()}")
    pieces = list(s_to.sigs)
    plan = None
    # the first piece keeps its orientation so the base point stays negative
    for groups in _all_assignments(list(s_from.sigs), pieces):
        if not groups[0][0][1]:
            plan = groups
            break
    assert plan is not None
    n = s_from.n
    weights = [0] * n
    target_pos = {}
    offsets = list(itertools.accumulate((0,) + s_to.sizes))
    start = 0
    g = 0
    for (p, q), group in zip(s_from.sigs, plan):
        negs = list(range(start, start + p))
        poss = list(range(start + p, start + p + q))
        for (cp, cq), flipped in group:
            a, b = (cq, cp) if flipped else (cp, cq)
            mine_neg, negs = negs[:a], negs[a:]
            mine_pos, poss = poss[:b], poss[b:]
            ordered = (mine_pos + mine_neg) if flipped else (mine_neg + mine_pos)
            for k, c in enumerate(ordered):
                weights[c] = g
                target_pos[c] = offsets[g] + k
            g += 1
        start += p + q
    perm = tuple(target_pos[c] for c in range(n))
    base = min(c for c in range(s_from.sigs[0][0]) if weights[c] == 0)
    return LimitWitness(DiagonalDirection(tuple(weights)), perm, base)


def _all_assignments(blocks, pieces):
    if not blocks:
        if not pieces:
            yield []
        return
    target = blocks[0]
    for cut in range(1, len(pieces) + 1):
        group = pieces[:cut]
        for flips in itertools.product((False, True), repeat=cut):
            actual = [(q, p) if f else (p, q) for (p, q), f in zip(group, flips)]
            if (sum(a for a, _ in actual), sum(b for _, b in actual)) == target:
                for rest in _all_assignments(blocks[1:], pieces[cut:]):
                    yield [list(zip(group, flips))] + rest


def geometry_limit_witness(s_from: SignatureSequence, s_to: SignatureSequence) -> DiagonalDirection:
    """A diagonal x with grassmann_limit(isom(s_from), x) conjugate by a permutation to isom(s_to)."""
    if canonicalize(s_from, GEOMETRY) == canonicalize(s_to, GEOMETRY):
        return DiagonalDirection.zero(s_from.n)
    return limit_witness(s_from, s_to).direction


# ----------------------------------------------------- Thurston checks

def _E(i, j, n=4):
    return RatMatrix.unit(n, i, j)


def nil_algebra() -> list[RatMatrix]:
    """Unipotent translations (a, b, c) plus the rotation of the O(2) block."""
    return [_E(2, 1) - _E(4, 3), _E(3, 1) + _E(4, 2), _E(4, 1), _E(2, 3) - _E(3, 2)]


def sol_algebra() -> list[RatMatrix]:
    return [_E(1, 2) + _E(2, 1), _E(3, 1) + _E(3, 2), _E(4, 1) - _E(4, 2)]


def evaluation_rank(gens: list[RatMatrix], base: int) -> int:
    """Rank of Y -> Y e_base modulo the line through e_base (infinitesimal orbit map)."""
    n = gens[0].rows
    rows = [[g[i, base] for i in range(n) if i != base] for g in gens]
    return len(rref_rows(rows, n - 1)[1])


def thurston_subalgebra_checks() -> dict:
    nil = nil_algebra()
    nil_home = isom_algebra(SignatureSequence.of(1, 2, 1))
    nil_space = MatrixSubspace.span(nil, n=4)
    sol = sol_algebra()
    sol_home = isom_algebra(SignatureSequence(((1, 1), (2, 0))))
    sol_space = MatrixSubspace.span(sol, n=4)
    sol_rank = evaluation_rank(sol, 0)
    half_pipe = isom_algebra(SignatureSequence(((1, 2), (1, 0))))
    so21 = [_embed(m, 4) for m in isom_algebra(SignatureSequence(((1, 2),))).matrices()]
    cent = centralizer_of_elements(half_pipe, so21)
    with_scalars = half_pipe + MatrixSubspace.span([RatMatrix.identity(4)], n=4)
    cent_scalars = centralizer_of_elements(with_scalars, so21)
    return {
        "nil_contained": nil_space.is_subspace_of(nil_home),
        "nil_is_subalgebra": is_subalgebra(nil_space),
        "sol_contained": sol_space.is_subspace_of(sol_home),
        "sol_is_subalgebra": is_subalgebra(sol_space),
        "sol_evaluation_rank": sol_rank,
        "sol_stabilizer_dim": sol_space.dim - sol_rank,
        "halfpipe_centralizer_dim": cent.dim,
        "halfpipe_centralizer_dim_with_scalars": cent_scalars.dim,
    }


def _embed(m: RatMatrix, n: int) -> RatMatrix:
    entries = [0] * (n * n)
    for i in range(m.rows):
        for j in range(m.cols):
            entries[i * n + j] = m[i, j]
    return RatMatrix(n, n, tuple(entries))
