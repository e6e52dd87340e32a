import itertools
import math
import random
from fractions import Fraction

import pytest

from chabauty.catalog import make_family, orthogonal_algebra
from chabauty.charpoly import (
    MonicPoly,
    char_poly,
    h2xr_poly,
    in_char_h2xr,
    in_char_so31,
    obstruction_witness,
    poly_from_roots,
    random_so31_element,
    so31_poly,
)
from chabauty.exactmat import DimensionError, RatMatrix
from conftest import SEED, random_invertible, random_matrix


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inv
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def poly_mul(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def test_char_poly_examples():
    assert char_poly(RatMatrix.identity(2)).coeffs == (-2, 1)
    assert char_poly(RatMatrix.zeros(4)).coeffs == (0, 0, 0, 0)
    assert char_poly(RatMatrix.diag([1, 2, 3])).coeffs == (-6, 11, -6)
    with pytest.raises(DimensionError):
        char_poly(RatMatrix(2, 3, (0,) * 6))


def test_char_poly_matches_leibniz(rng):
    for _ in range(30):
        n = rng.randint(1, 4)
        m = random_matrix(rng, n)
        p = char_poly(m)
        for c in range(-2, 3):
            shifted = [[(c if i == j else 0) - m[i, j] for j in range(n)] for i in range(n)]
            assert p(c) == leibniz_det(shifted)


def test_conjugation_invariance(rng):
    for _ in range(20):
        n = rng.randint(2, 4)
        x, g = random_matrix(rng, n), random_invertible(rng, n)
        assert char_poly(g @ x @ g.inverse()) == char_poly(x)


def test_so31_examples():
    assert in_char_so31(MonicPoly((0, 0, 0, 0)))
    assert in_char_so31(MonicPoly((0, 3, 0, -4)))
    assert not in_char_so31(poly_from_roots([1, 1, 1, -3]))
    with pytest.raises(ValueError):
        in_char_so31(MonicPoly((0, 0, 0)))


def test_h2xr_examples():
    assert in_char_h2xr(poly_from_roots([0, 0, 1, -1]))
    assert in_char_h2xr(poly_from_roots([1, 1, 1, -3]))
    assert not in_char_h2xr(MonicPoly((0, 3, 0, -4)))
    assert not in_char_h2xr(MonicPoly((1, 0, 0, 0)))
    with pytest.raises(ValueError):
        in_char_h2xr(MonicPoly((0, 0)))


def test_h2xr_expansion_matches_product():
    for t, mu in itertools.product(range(-3, 4), range(-4, 5)):
        t, mu = Fraction(t, 2), Fraction(mu, 3)
        prod = poly_mul(poly_mul([1, -t], [1, -2 * t, t * t - mu]), [1, 3 * t])
        assert list(h2xr_poly(t, mu).coeffs) == prod[1:]


def test_so31_parametrization_matches_product():
    for lam, th in itertools.product(range(0, 4), range(0, 4)):
        prod = poly_mul([1, 0, -lam * lam], [1, 0, th * th])
        assert list(so31_poly(lam * lam, th * th).coeffs) == prod[1:]


def _so31_scan(a2, a0):
    """Float scan for L >= 0, T = a2 + L >= 0 with L * T = -a0."""
    lo = max(0.0, -float(a2))
    f = lambda L: L * (float(a2) + L) + float(a0)
    if abs(f(lo)) < 1e-12:
        return True
    # f is increasing on [lo, inf); it reaches 0 iff f(lo) <= 0
    hi = lo + 1.0
    while f(hi) < 0:
        hi *= 2
    return f(lo) <= 0 <= f(hi)


def test_so31_predicate_against_scan(rng):
    for _ in range(300):
        a2, a0 = rng.randint(-6, 6), rng.randint(-6, 6)
        p = MonicPoly((0, a2, 0, a0))
        assert in_char_so31(p) == _so31_scan(a2, a0)
    for lam, th in itertools.product(range(4), range(4)):
        assert in_char_so31(so31_poly(Fraction(lam, 2) ** 2, Fraction(th, 3) ** 2))


def _h2xr_scan(a2, a1, a0):
    """Float oracle: scan real roots of f by sign changes, then test g there."""
    f = lambda t: 20 * t ** 3 + 2 * a2 * t - a1
    g = lambda t: 21 * t ** 4 + 3 * a2 * t * t + a0
    R = 2 + abs(a2) + abs(a1)
    grid = [-R + k * (2 * R) / 20000 for k in range(20001)]
    roots = []
    for a, b in zip(grid, grid[1:]):
        fa, fb = f(a), f(b)
        if fa == 0:
            roots.append(a)
        elif fa * fb < 0:
            for _ in range(80):
                mid = (a + b) / 2
                if f(a) * f(mid) <= 0:
                    b = mid
                else:
                    a = mid
            roots.append((a + b) / 2)
    return any(abs(g(t)) < 1e-6 * (1 + abs(a0) + abs(a2)) for t in roots)


def test_h2xr_predicate_against_scan():
    rng = random.Random(SEED)
    positives = 0
    for _ in range(150):
        if rng.random() < 0.5:
            t, mu = Fraction(rng.randint(-4, 4), rng.randint(1, 2)), Fraction(rng.randint(-6, 6))
            p = h2xr_poly(t, mu)
        else:
            p = MonicPoly((0, rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-6, 6)))
        _, a2, a1, a0 = (float(c) for c in p.coeffs)
        expected = _h2xr_scan(a2, a1, a0)
        assert in_char_h2xr(p) == expected
        positives += expected
    assert positives >= 50


def test_irrational_t_is_accepted():
    # t^2 = 1/2, mu = 2: a1 = t(8t^2 - 2mu) = 0, the rest is rational
    p = MonicPoly((0, -5, 0, Fraction(9, 4)))
    assert in_char_h2xr(p)
    assert _h2xr_scan(-5.0, 0.0, 2.25)
    assert not any(h2xr_poly(Fraction(k, 12), 2) == p for k in range(-24, 25))


def test_obstruction_witness():
    rep = obstruction_witness()
    assert rep.element == RatMatrix.diag([1, 1, 1, -3])
    assert rep.poly.coeffs == (0, -6, 8, -3)
    assert rep.in_h2xr and not rep.in_so31
    assert rep.samples == rep.samples_even == 1000
    assert rep.holds
    zero = char_poly(RatMatrix.zeros(4))
    assert in_char_h2xr(zero) and in_char_so31(zero)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 0), (1, 3), (2, 2), (3, 3)])
def test_even_signature_char_polys_are_even(p, q):
    rng = random.Random(SEED + p * 10 + q)
    basis = orthogonal_algebra(RatMatrix.diag([-1] * p + [1] * q)).matrices()
    for _ in range(25):
        x = RatMatrix.zeros(p + q)
        for b in basis:
            x = x + b * rng.randint(-4, 4)
        coeffs = char_poly(x).coeffs
        assert all(c == 0 for c in coeffs[0::2])


def test_limit_chars_inside_so31_chars():
    """Elements of isom((1)(3)) and the half-pipe have char polys in Char(so(3,1))."""
    from chabauty.pfqf import isom_algebra, parse_signature
    rng = random.Random(SEED)
    for sig in ["X((1)(3))", "X((1,2)(1))", "X((1,1)(2))", "X((1)(1)(1)(1))"]:
        basis = isom_algebra(parse_signature(sig)).matrices()
        for _ in range(40):
            x = RatMatrix.zeros(4)
            for b in basis:
                x = x + b * Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            assert in_char_so31(char_poly(x))
