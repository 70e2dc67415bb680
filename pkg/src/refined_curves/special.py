"""The characteristic-class series in x over the refinement ring, and the
functional inverse of the node-polynomial variable change.

With z = y^(1/2) and s = 1/z - z, the per-Chern-root class is

    X(x) = x * (1/z - z*e^(-x*s)) / (1 - e^(-x*s)).

Both numerator and denominator carry the common factor x*s, which is not
invertible over LaurentZ; it is cancelled symbolically before dividing:
writing G(x) = (1 - e^(-x*s)) / (x*s) = sum_k (-s)^k x^k / (k+1)!,

    X(x) = 1/G(x) + z*x,

a unit series with constant term 1.  At z = 1 (s = 0) G collapses to 1 and
X(x) = 1 + x exactly: the class degenerates to the total Chern class.

The insertion factor of a point condition is

    ins(x) = (1/z - z*e^(-x*s)) / s = 1 + z*x*G(x).

The variable change of the node-polynomial extraction inverts
1/Q = w + 1/w - z - 1/z, i.e. w(Q) solves w = Q*(1 + w^2 - (z + 1/z)*w)
with leading term Q.
"""

from __future__ import annotations

from functools import lru_cache

from refined_curves._rat import rat
from refined_curves.series import Z, ZINV, LaurentZ, TruncSeries


@lru_cache(maxsize=None)
def g_series(order: int) -> TruncSeries:
    """G(x) = (1 - e^(-x*s))/(x*s) with s = 1/z - z; constant term 1."""
    s = ZINV - Z
    coeffs = []
    p = LaurentZ.one()
    fact = 1
    for k in range(order + 1):
        fact *= k + 1
        coeffs.append(p * rat(1, fact))
        p = p * (-s)
    return TruncSeries("x", 0, coeffs, _norm=False)


@lru_cache(maxsize=None)
def x_series(order: int) -> TruncSeries:
    """X(x) over LaurentZ through x^order; xi_0 = 1."""
    g = g_series(order)
    res = g.invert()
    if order >= 1:
        res = res + TruncSeries("x", 1, [Z] + [LaurentZ.zero()] * (order - 1),
                                _norm=False)
    return res


@lru_cache(maxsize=None)
def log_x_series(order: int) -> TruncSeries:
    return x_series(order).log()


@lru_cache(maxsize=None)
def insertion_series(order: int) -> TruncSeries:
    """Point-insertion factor ins(x) = 1 + z*x*G(x); constant term 1."""
    one = TruncSeries.constant("x", LaurentZ.one(), order)
    if order < 1:
        return one
    zx = TruncSeries("x", 1, [Z] + [LaurentZ.zero()] * (order - 1), _norm=False)
    return one + (zx * g_series(order)).truncate(order)


@lru_cache(maxsize=None)
def log_insertion_series(order: int) -> TruncSeries:
    return insertion_series(order).log()


@lru_cache(maxsize=None)
def functional_inverse_wQ(order: int) -> TruncSeries:
    """w(Q) with B(w(Q)) = Q for B(w) = w/((1 - w/z)(1 - w*z)).

    Fixed-point iteration of w <- Q*(1 + w^2 - (z + 1/z)*w), which gains one
    Q-order per pass; run to stabilization.
    """
    if order < 1:
        raise ValueError("need order >= 1")
    a = Z + ZINV
    q_one = TruncSeries.variable("Q", LaurentZ.one(), order)
    one = TruncSeries.constant("Q", LaurentZ.one(), order)
    w = q_one
    for _ in range(order + 1):
        rhs = one + (w * w).truncate(order) - w.scale(a)
        nxt = (q_one * rhs).truncate(order)
        if nxt == w:
            break
        w = nxt
    return w


def w_over_q(order: int) -> TruncSeries:
    """The unit series w(Q)/Q, constant term 1, through Q^order."""
    return functional_inverse_wQ(order + 1).shift(-1)


def one_over_q_of(w: TruncSeries) -> TruncSeries:
    """1/Q = w + 1/w - z - 1/z evaluated on a series of positive valuation."""
    a = Z + ZINV
    neg_a = TruncSeries.constant(w.var, -a, w.order)
    return w + w.invert() + neg_a
