"""Limits of Ad(exp(tX)) s as t -> +infinity.

Two engines live here.  ``grassmann_limit`` works for any subspace: it
keeps, for each vector, only its highest-weight part after eliminating
higher weights.  ``closed_form_limit`` is the structural answer for
symmetric subalgebras: the centralizer of X plus every positive-weight
coordinate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exactmat import ZERO, MatrixSubspace, rref_rows, space_from_vectors
from .liealg import (
    DiagonalDirection,
    _check_direction,
    centralizer_in,
    is_subalgebra,
    positive_weight_space,
)


class DimensionBalanceError(ValueError):
    """dim z_h(X) + #positive coordinates != dim h, so X is not a valid direction for h."""


def grassmann_limit(s: MatrixSubspace, x: DiagonalDirection) -> MatrixSubspace:
    _check_direction(s, x)
    if x.is_zero() or not s.dim:
        return s
    n = s.n
    w = [x.weight(k // n, k % n) for k in range(n * n)]
    # higher weights first; ties keep the row-major order
    order = sorted(range(n * n), key=lambda k: (-w[k], k))
    reduced, pivots = rref_rows(s.basis, n * n, order)
    leading = []
    for row, pc in zip(reduced, pivots):
        lam = w[pc]
        leading.append([v if w[k] == lam else ZERO for k, v in enumerate(row)])
    out = space_from_vectors(leading, n)
    assert out.dim == s.dim
    return out


def closed_form_limit(family_algebra: MatrixSubspace, x: DiagonalDirection) -> MatrixSubspace:
    z = centralizer_in(family_algebra, x)
    plus = positive_weight_space(x)
    if z.dim + plus.dim != family_algebra.dim:
        raise DimensionBalanceError(
            f"dim z = {z.dim}, positive coordinates = {plus.dim}, dim h = {family_algebra.dim}")
    return z + plus


@dataclass(frozen=True)
class LimitReport:
    input_algebra: MatrixSubspace
    direction: DiagonalDirection
    oracle_limit: MatrixSubspace
    closed_form_limit: Optional[MatrixSubspace]
    agree: bool
    dims: tuple
    oracle_is_subalgebra: bool
    closed_form_error: Optional[str] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "direction": self.direction.to_literal(),
            "input_basis": self.input_algebra.to_literal(),
            "oracle_limit": self.oracle_limit.to_literal(),
            "closed_form_limit": None if self.closed_form_limit is None else self.closed_form_limit.to_literal(),
            "closed_form_error": self.closed_form_error,
            "agree": self.agree,
            "dims": list(self.dims),
            "oracle_is_subalgebra": self.oracle_is_subalgebra,
        }


def verify_limit(s: MatrixSubspace, x: DiagonalDirection, symmetric: bool = False) -> LimitReport:
    """Run the oracle, and the closed form too when ``symmetric`` is set."""
    oracle = grassmann_limit(s, x)
    closed = None
    err = None
    agree = True
    if symmetric:
        try:
            closed = closed_form_limit(s, x)
            agree = closed == oracle
        except DimensionBalanceError as exc:
            err = str(exc)
            agree = False
    sub_in = is_subalgebra(s)
    sub_out = is_subalgebra(oracle)
    if sub_in and not sub_out:
        agree = False
    return LimitReport(s, x, oracle, closed, agree, (s.dim, oracle.dim), sub_out, err)
