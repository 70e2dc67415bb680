"""Torus-fixed points of the Hilbert scheme of points of a toric surface.

A fixed point of S^[n] is one partition per chart, total size n; the
partition in a chart encodes a monomial ideal there.  The cell (r, c) of the
chart partition corresponds to the quotient monomial in direction r*v + c*w
for chart tangent weights (v, w); the induced weights are

    tangent, per cell:  (leg+1)*v - arm*w   and   -leg*v + (arm+1)*w
    tautological, per cell:  mu + r*v + c*w

for a line bundle of fiber character mu at the chart's fixed point.  These
two formulas are one consistent convention pair; all downstream integrals
are convention-independent, and the choice is pinned by the chi_{-y} and
intersection-number oracles.

The Bialynicki-Birula index (count of tangent weights negative against a
generic covector) gives an independent route to chi_{-y}(S^[n]): the Hodge
structure is of Tate type, so chi_{-y} = sum over fixed points of y^index.
"""

from __future__ import annotations

from functools import lru_cache

from refined_curves.partitions import cells, conjugate, partitions
from refined_curves.series import LaurentZ
from refined_curves._rat import rat


class CovectorError(ValueError):
    """Covector vanishes on some tangent weight; caller must re-draw."""


def enumerate_fixed_points(model, n: int):
    """Stream all chart-partition tuples of total size n, deterministically."""
    k = len(model.charts)

    def rec(i, rest):
        if i == k - 1:
            for lam in partitions(rest):
                yield (lam,)
            return
        for size in range(rest + 1):
            for lam in partitions(size):
                for tail in rec(i + 1, rest - size):
                    yield (lam,) + tail

    yield from rec(0, n)


def count_fixed_points(model, n: int) -> int:
    return sum(1 for _ in enumerate_fixed_points(model, n))


@lru_cache(maxsize=None)
def _chart_tangent_weights(v, w, lam):
    out = []
    conj = conjugate(lam)
    for r, c in cells(lam):
        a = lam[r] - c - 1
        l = conj[c] - r - 1
        out.append(((l + 1) * v[0] - a * w[0], (l + 1) * v[1] - a * w[1]))
        out.append((-l * v[0] + (a + 1) * w[0], -l * v[1] + (a + 1) * w[1]))
    return tuple(out)


@lru_cache(maxsize=None)
def _chart_taut_offsets(v, w, lam):
    return tuple((r * v[0] + c * w[0], r * v[1] + c * w[1]) for r, c in cells(lam))


def tangent_character(model, fp) -> list:
    """The 2n tangent weights of S^[n] at the fixed point."""
    out = []
    for (v, w), lam in zip(model.charts, fp):
        out.extend(_chart_tangent_weights(v, w, lam))
    return out


def taut_character(model, bundle, fp) -> list:
    """The n weights of the tautological bundle L^[n] at the fixed point."""
    out = []
    for (v, w), mu, lam in zip(model.charts, bundle.characters, fp):
        for ov, ow in _chart_taut_offsets(v, w, lam):
            out.append((mu[0] + ov, mu[1] + ow))
    return out


def bb_index(model, fp, covector) -> int:
    """Number of tangent weights pairing negatively with the covector."""
    a, b = covector
    idx = 0
    for wx, wy in tangent_character(model, fp):
        p = a * wx + b * wy
        if p == 0:
            raise CovectorError("covector %r vanishes on weight %r" % (covector, (wx, wy)))
        if p < 0:
            idx += 1
    return idx


def chi_y_bb(model, n: int, covector=(1, 1000003)) -> LaurentZ:
    """Normalized chi_{-y} genus of S^[n] via Bialynicki-Birula indices.

    Returns z^(-2n) * sum over fixed points of z^(2*index); independent of
    the (generic) covector.
    """
    d = {}
    for fp in enumerate_fixed_points(model, n):
        e = 2 * bb_index(model, fp, covector) - 2 * n
        d[e] = d.get(e, 0) + 1
    return LaurentZ({e: rat(c) for e, c in d.items()})
