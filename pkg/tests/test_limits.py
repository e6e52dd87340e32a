import itertools
from fractions import Fraction

import pytest

from chabauty.catalog import enumerate_directions, make_family, orthogonal_algebra, signature_from_direction
from chabauty.exactmat import MatrixSubspace, RatMatrix, rref_rows
from chabauty.liealg import DiagonalDirection, is_subalgebra
from chabauty.limits import DimensionBalanceError, closed_form_limit, grassmann_limit, verify_limit
from chabauty.pfqf import SignatureSequence, canonicalize, enumerate_limits, isom_algebra
from conftest import random_subspace

E = RatMatrix.unit


def conjugated_in_limit_chart(s, x, limit, big):
    """Basis of Ad(diag(big^d)) s written in the pivot chart of ``limit``."""
    n = s.n
    scale = [Fraction(big) ** int(x.weight(k // n, k % n)) for k in range(n * n)]
    rows = [[v * c for v, c in zip(vec, scale)] for vec in s.basis]
    piv = limit.pivots
    sub = [[r[p] for p in piv] for r in rows]
    k = len(piv)
    aug = [list(sub[i]) + [int(i == j) for j in range(k)] for i in range(k)]
    red, pv = rref_rows(aug, 2 * k)
    assert pv[:k] == list(range(k)), "conjugated space is not in the limit chart"
    inv = [r[k:] for r in red]
    return [[sum(inv[i][t] * rows[t][c] for t in range(k)) for c in range(n * n)] for i in range(k)]


def assert_brute_force_limit(s, x, big=10 ** 8, tol=Fraction(1, 10 ** 3)):
    lim = grassmann_limit(s, x)
    approx = conjugated_in_limit_chart(s, x, lim, big)
    for row, exact in zip(approx, lim.basis):
        assert all(abs(a - b) < tol for a, b in zip(row, exact))


def test_so2_to_parabolic():
    so2 = MatrixSubspace.span([E(2, 1, 2) - E(2, 2, 1)])
    assert grassmann_limit(so2, DiagonalDirection.of(1, -1)) == MatrixSubspace.span([E(2, 1, 2)])


def test_zero_direction_is_identity(rng):
    s = random_subspace(rng, 3, 5)
    assert grassmann_limit(s, DiagonalDirection.zero(3)) == s


def test_helix_limit():
    h = MatrixSubspace.span([E(4, 1, 2) + E(4, 4, 3) - E(4, 3, 4)])
    assert grassmann_limit(h, DiagonalDirection.of(-1, 1, 0, 0)) == MatrixSubspace.span([E(4, 3, 4) - E(4, 4, 3)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("form", ["definite", "hyperbolic"])
def test_sphere_and_hyperbolic_to_euclidean(n, form):
    signs = [-1] * (n + 1) if form == "definite" else [1] * n + [-1]
    s = orthogonal_algebra(RatMatrix.diag(signs))
    lim = grassmann_limit(s, DiagonalDirection((1,) * n + (0,)))
    N = n + 1
    want = [E(N, i, j) - E(N, j, i) for i in range(1, N - 1) for j in range(i + 1, N)]
    want += [E(N, i, N) for i in range(1, N)]
    assert lim == MatrixSubspace.span(want, n=N)


def test_closed_form_half_pipe():
    so13 = orthogonal_algebra(RatMatrix.diag([-1, 1, 1, 1]))
    x = DiagonalDirection.of(0, 0, 0, 1)
    lim = closed_form_limit(so13, x)
    assert lim.dim == 6
    assert lim == isom_algebra(SignatureSequence(((1, 2), (1, 0))))
    for j in (1, 2, 3):
        assert E(4, 4, j) in lim


def test_closed_form_zero_direction():
    fam = make_family("Sp", 4)
    assert closed_form_limit(fam.algebra, DiagonalDirection.zero(4)) == fam.algebra


def test_glc1_dual_numbers_both_directions():
    h = make_family("GLC", 1).algebra
    assert h == MatrixSubspace.span([RatMatrix.identity(2), E(2, 1, 2) - E(2, 2, 1)])
    # positive weight lives at (1,2) for weights (1,-1) and at (2,1) for (-1,1)
    assert closed_form_limit(h, DiagonalDirection.of(1, -1)) == MatrixSubspace.span([RatMatrix.identity(2), E(2, 1, 2)])
    assert closed_form_limit(h, DiagonalDirection.of(-1, 1)) == MatrixSubspace.span([RatMatrix.identity(2), E(2, 2, 1)])


def test_closed_form_rejects_unbalanced():
    with pytest.raises(DimensionBalanceError):
        closed_form_limit(MatrixSubspace.span([E(2, 1, 1)]), DiagonalDirection.of(1, -1))


def test_verify_limit_examples():
    so13 = orthogonal_algebra(RatMatrix.diag([-1, 1, 1, 1]))
    rep = verify_limit(so13, DiagonalDirection.of(0, 0, 0, 1), symmetric=True)
    assert rep.agree and rep.dims == (6, 6) and rep.oracle_is_subalgebra
    so22 = orthogonal_algebra(RatMatrix.diag([-1, 1, -1, 1]))
    rep = verify_limit(so22, DiagonalDirection.of(0, 0, 1, 1), symmetric=True)
    assert rep.agree
    assert rep.oracle_limit == isom_algebra(SignatureSequence(((1, 1), (1, 1))))
    rep = verify_limit(so22, DiagonalDirection.zero(4), symmetric=True)
    assert rep.agree and rep.oracle_limit == so22
    d = rep.to_dict()
    assert d["agree"] is True and d["dims"] == [6, 6]


def test_verify_limit_reports_unbalanced():
    rep = verify_limit(MatrixSubspace.span([E(2, 1, 1)]), DiagonalDirection.of(1, -1), symmetric=True)
    assert not rep.agree and rep.closed_form_error


def test_oracle_matches_brute_force_conjugation(rng):
    for _ in range(25):
        n = rng.randint(2, 4)
        s = random_subspace(rng, n, 6)
        if not s.dim:
            continue
        x = DiagonalDirection(tuple(rng.randint(-2, 2) for _ in range(n)))
        assert_brute_force_limit(s, x)


@pytest.mark.parametrize("kind,params", [("O", (1, 2)), ("O", (2, 2)), ("GLC", (2,)), ("Sp", (4,)), ("GLpGLq", (1, 2))])
def test_family_limits_match_brute_force(kind, params):
    fam = make_family(kind, *params)
    for dc in enumerate_directions(fam):
        if not dc.x.is_zero():
            assert_brute_force_limit(dc.algebra, dc.x)


def _o_families(max_n):
    return [make_family("O", p, n - p) for n in range(1, max_n + 1) for p in range(n + 1)]


@pytest.mark.parametrize("fam", _o_families(4), ids=lambda f: f.label)
def test_transitivity_of_limits(fam):
    """A limit of a limit is a single limit along N x + y, and its signature is enumerated."""
    start = SignatureSequence(((fam.params[0], fam.params[1]),))
    allowed = set(enumerate_limits(start, "group"))
    dirs = enumerate_directions(fam)
    ys = {dc.x for dc in dirs}
    for dc in dirs:
        first = grassmann_limit(dc.algebra, dc.x)
        for y in ys:
            second = grassmann_limit(first, y)
            spread = max(y.weights) - min(y.weights)
            z = dc.x.scaled(2 * spread + 1) + y
            assert second == grassmann_limit(dc.algebra, z)
            sig = canonicalize(SignatureSequence(signature_from_direction(dc.form, z)), "group")
            assert sig in allowed
            assert is_subalgebra(second)
