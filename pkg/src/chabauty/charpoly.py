"""Characteristic polynomials and the two char-set predicates used against H^2 x R.

Char(so(3,1)) = {(x^2 - l^2)(x^2 + th^2)} has a3 = a1 = 0 and
a0 = -l^2 th^2 <= 0, a2 = th^2 - l^2 arbitrary.  Conversely any a2 and
a0 <= 0 is reached: l^2 and -th^2 are the roots of u^2 + a2 u + a0, which
are real with opposite signs (or a zero) when a0 <= 0.

For the H^2 x R family (x - t)((x - t)^2 - mu)(x + 3t) with mu = l^2 real:
    a3 = 0,  a2 = -6t^2 - mu,  a1 = 8t^3 - 2 mu t,  a0 = -3t^4 + 3 mu t^2.
Eliminating mu = -6t^2 - a2 leaves f(t) = 20t^3 + 2 a2 t - a1 = 0 and
g(t) = 21t^4 + 3 a2 t^2 + a0 = 0, so membership is a common real root.
"""
from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmat import ZERO, DimensionError, RatMatrix, format_rational
from .catalog import orthogonal_algebra


@dataclass(frozen=True)
class MonicPoly:
    """x^n + a_{n-1} x^{n-1} + ... + a_0, with coeffs = (a_{n-1}, ..., a_0)."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(1)
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = [f"x^{self.degree}"]
        for k, c in enumerate(self.coeffs):
            power = self.degree - 1 - k
            if c:
                mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
                coef = format_rational(abs(c))
                if mono and abs(c) == 1:
                    coef = ""
                terms.append(f"{'-' if c < 0 else '+'} {coef}{mono}")
        return " ".join(terms)


def char_poly(m: RatMatrix) -> MonicPoly:
    """det(xI - m) by the Faddeev-LeVerrier recurrence."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = m.rows
    ident = RatMatrix.identity(n)
    M = RatMatrix.zeros(n)
    coeffs = []
    c = Fraction(1)
    for k in range(1, n + 1):
        M = m @ M + ident * c
        c = -(m @ M).trace() / k
        coeffs.append(c)
    return MonicPoly(tuple(coeffs))


def _check_quartic(p: MonicPoly):
    if p.degree != 4:
        raise ValueError(f"expected a quartic, got degree {p.degree}")


def in_char_so31(p: MonicPoly) -> bool:
    _check_quartic(p)
    a3, _, a1, a0 = p.coeffs
    return a3 == 0 and a1 == 0 and a0 <= 0


# --- polynomials over Q as coefficient lists, highest degree first

def _trim(f):
    f = list(f)
    while f and f[0] == 0:
        f.pop(0)
    return f


def _polyrem(f, g):
    f, g = _trim(f), _trim(g)
    while len(f) >= len(g) and f:
        q = f[0] / g[0]
        for k in range(len(g)):
            f[k] -= q * g[k]
        f = _trim(f)
    return f


def _gcd(f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _polyrem(f, g)
    return [c / f[0] for c in f] if f else []


def _has_real_root(f) -> bool:
    f = _trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg % 2 == 1:
        return True
    if deg == 2:
        a, b, c = f
        return b * b - 4 * a * c >= 0
    raise AssertionError("gcd of degree 4 cannot occur here")


def in_char_h2xr(p: MonicPoly) -> bool:
    """True iff some real t and real mu reproduce p (mu may be negative)."""
    _check_quartic(p)
    a3, a2, a1, a0 = p.coeffs
    if a3 != 0:
        return False
    f = [Fraction(20), ZERO, 2 * a2, -a1]
    g = [Fraction(21), ZERO, 3 * a2, ZERO, a0]
    return _has_real_root(_gcd(f, g))


def h2xr_poly(t, mu) -> MonicPoly:
    t, mu = Fraction(t), Fraction(mu)
    return MonicPoly((ZERO, -6 * t * t - mu, 8 * t ** 3 - 2 * mu * t, -3 * t ** 4 + 3 * mu * t * t))


def so31_poly(lam_sq, theta_sq) -> MonicPoly:
    lam_sq, theta_sq = Fraction(lam_sq), Fraction(theta_sq)
    return MonicPoly((ZERO, theta_sq - lam_sq, ZERO, -lam_sq * theta_sq))


SO31_FORM = RatMatrix.diag([-1, -1, -1, 1])


@lru_cache(maxsize=1)
def _so31_basis() -> tuple:
    return tuple(orthogonal_algebra(SO31_FORM).matrices())


def random_so31_element(rng: random.Random, bound: int = 9) -> RatMatrix:
    basis = _so31_basis()
    out = RatMatrix.zeros(4)
    for b in basis:
        out = out + b * Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return out


@dataclass(frozen=True)
class ObstructionReport:
    element: RatMatrix
    poly: MonicPoly
    in_h2xr: bool
    in_so31: bool
    samples: int
    samples_even: int

    @property
    def holds(self) -> bool:
        return self.in_h2xr and not self.in_so31 and self.samples == self.samples_even

    def to_dict(self) -> dict:
        return {
            "element": self.element.to_literal(),
            "char_poly": str(self.poly),
            "in_char_h2xr": self.in_h2xr,
            "in_char_so31": self.in_so31,
            "so31_samples": self.samples,
            "so31_samples_even": self.samples_even,
        }


def obstruction_witness(seed: int = 20240611, samples: int = 1000) -> ObstructionReport:
    """diag(tI_3, -3t) at t = 1 lies in isom(H^2 x R) but its char poly is not in Char(so(3,1))."""
    elem = RatMatrix.diag([1, 1, 1, -3])
    poly = char_poly(elem)
    rng = random.Random(seed)
    even = 0
    for _ in range(samples):
        a3, _, a1, _ = char_poly(random_so31_element(rng)).coeffs
        even += a3 == 0 and a1 == 0
    return ObstructionReport(elem, poly, in_char_h2xr(poly), in_char_so31(poly), samples, even)


def poly_from_roots(roots: Sequence) -> MonicPoly:
    f = [Fraction(1)]
    for r in roots:
        r = Fraction(r)
        f = [a - r * b for a, b in zip(f + [ZERO], [ZERO] + f)]
    return MonicPoly(tuple(f[1:]))
