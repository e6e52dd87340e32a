"""Worked degenerations with known answers, checked at the Lie algebra level."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .charpoly import obstruction_witness
from .exactmat import MatrixSubspace, RatMatrix
from .liealg import DiagonalDirection, conjugate_space, is_subalgebra
from .limits import grassmann_limit
from .catalog import orthogonal_algebra
from .pfqf import thurston_subalgebra_checks


def E(n: int, i: int, j: int) -> RatMatrix:
    return RatMatrix.unit(n, i, j)


def span(n: int, *mats: RatMatrix) -> MatrixSubspace:
    return MatrixSubspace.span(list(mats), n=n)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    run: Callable[[], tuple]  # -> (computed, expected)

    def check(self) -> tuple[bool, str]:
        got, want = self.run()
        ok = got == want
        return ok, "" if ok else f"got {got.to_literal()}, expected {want.to_literal()}"


def sphere_form(n: int) -> RatMatrix:
    """-x_{n+1}^2 - (x_1^2 + ... + x_n^2) on R^{n+1}."""
    return RatMatrix.diag([-1] * (n + 1))


def euclidean_isometries(n: int) -> MatrixSubspace:
    """Antisymmetric n x n block, free last column, zero last row."""
    N = n + 1
    gens = [E(N, i, j) - E(N, j, i) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    gens += [E(N, i, N) for i in range(1, n + 1)]
    return span(N, *gens)


def sphere_to_euclidean(n: int, form: RatMatrix | None = None) -> tuple:
    form = sphere_form(n) if form is None else form
    x = DiagonalDirection((1,) * n + (0,))
    return grassmann_limit(orthogonal_algebra(form), x), euclidean_isometries(n)


def boost_to_parabolic():
    x = DiagonalDirection.of(1, -1)
    return grassmann_limit(span(2, E(2, 1, 2) + E(2, 2, 1)), x), span(2, E(2, 1, 2))


def rotation_to_parabolic():
    x = DiagonalDirection.of(1, -1)
    return grassmann_limit(span(2, E(2, 1, 2) - E(2, 2, 1)), x), span(2, E(2, 1, 2))


def unipotent_collapse():
    """A non-diagonalizable one-parameter group whose limit is diagonal."""
    x = DiagonalDirection.of(-1, 1, 0)
    h = span(3, E(3, 1, 2) - E(3, 3, 3) * 2)
    return grassmann_limit(h, x), span(3, E(3, 3, 3))


def helix():
    """Parabolic times rotation; the parabolic part is squeezed out."""
    x = DiagonalDirection.of(-1, 1, 0, 0)
    h = span(4, E(4, 1, 2) - E(4, 3, 4) + E(4, 4, 3))
    return grassmann_limit(h, x), span(4, E(4, 4, 3) - E(4, 3, 4))


def proper_self_limit():
    """Identity component I_2 + P(t) is fixed by diag(n, 1/n, 1, 1)."""
    x = DiagonalDirection.of(1, -1, 0, 0)
    h = span(4, E(4, 3, 4))
    return grassmann_limit(h, x), span(4, E(4, 3, 4))


def _block_embed(n: int, lo: int, block: list) -> RatMatrix:
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, r in enumerate(block):
        for b, v in enumerate(r):
            rows[lo + a][lo + b] = v
    return RatMatrix.from_rows(rows)


def character_family(alpha: int = 2):
    """H(s,t) conjugated by a non-diagonal sequence whose last block is U diag(n, 1/n) V.

    U = [[1, 0], [1, 1]] and V = [[1, alpha], [0, 1]], so the limit is
    Ad(U) applied to the diagonal limit of Ad(V) h.
    """
    n = 5
    h = span(n, E(n, 1, 1) + E(n, 3, 4), E(n, 2, 2) + E(n, 3, 5))
    U = _block_embed(n, 3, [[1, 0], [1, 1]])
    V = _block_embed(n, 3, [[1, alpha], [0, 1]])
    x = DiagonalDirection.of(0, 0, 0, 1, -1)
    lim = conjugate_space(U, grassmann_limit(conjugate_space(V, h), x))
    want = span(n, E(n, 1, 1) + E(n, 2, 2) * alpha, E(n, 3, 4) - E(n, 3, 5))
    return lim, want


def fixtures() -> list[Fixture]:
    out = [
        Fixture("boost_to_parabolic", "D(t) under diag(n, 1/n) tends to P(t)", boost_to_parabolic),
        Fixture("rotation_to_parabolic", "R(t) under diag(n, 1/n) tends to P(t) (identity component)",
                rotation_to_parabolic),
        Fixture("unipotent_collapse", "non-diagonalizable 1-parameter group with diagonal limit", unipotent_collapse),
        Fixture("helix", "P(t) + R(t) under diag(1/n, n, 1, 1) keeps only the rotation", helix),
        Fixture("proper_self_limit", "I_2 + P(t) under diag(n, 1/n, 1, 1) is unchanged", proper_self_limit),
        Fixture("character_family_alpha2", "L_alpha block form for alpha = 2", character_family),
    ]
    for k in range(2, 6):
        out.append(Fixture(f"sphere_to_euclidean_n{k}", f"so(n+1) under diag(1,...,1,0) gives isom(E^{k})",
                           lambda k=k: sphere_to_euclidean(k)))
    return out


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def run_all(seed: int = 20240611) -> list[CheckResult]:
    results = []
    for fx in fixtures():
        ok, detail = fx.check()
        got, _ = fx.run()
        if ok and not is_subalgebra(got):
            ok, detail = False, "limit is not a subalgebra"
        results.append(CheckResult(fx.name, ok, detail))
    th = thurston_subalgebra_checks()
    results.append(CheckResult("nil_in_isom_1_2_1", th["nil_contained"] and th["nil_is_subalgebra"]))
    results.append(CheckResult("sol_in_isom_11_2", th["sol_contained"] and th["sol_is_subalgebra"]))
    results.append(CheckResult("sol_simply_transitive", th["sol_evaluation_rank"] == 3 and th["sol_stabilizer_dim"] == 0,
                               f"rank {th['sol_evaluation_rank']}"))
    results.append(CheckResult("halfpipe_centralizer", th["halfpipe_centralizer_dim_with_scalars"] <= 1,
                               f"dim {th['halfpipe_centralizer_dim']} (with scalars {th['halfpipe_centralizer_dim_with_scalars']})"))
    ob = obstruction_witness(seed=seed)
    results.append(CheckResult("h2xr_obstruction", ob.holds, str(ob.poly)))
    return results
