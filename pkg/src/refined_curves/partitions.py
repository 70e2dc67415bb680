"""Partition combinatorics for monomial-ideal fixed points."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """All partitions of n as weakly decreasing tuples, reverse-lex order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n))


def cells(lam) -> list:
    """Cells (r, c) with 0 <= r < len(lam), 0 <= c < lam[r]."""
    return [(r, c) for r, part in enumerate(lam) for c in range(part)]


def conjugate(lam) -> tuple:
    if not lam:
        return ()
    m = lam[0]
    return tuple(sum(1 for part in lam if part > c) for c in range(m))


def arm(lam, r, c) -> int:
    """Boxes strictly to the right of (r, c) in its row."""
    return lam[r] - c - 1


def leg(lam, r, c, conj=None) -> int:
    """Boxes strictly below (r, c) in its column."""
    if conj is None:
        conj = conjugate(lam)
    return conj[c] - r - 1


def compositions(n: int, parts: int):
    """All ordered tuples of `parts` nonnegative integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def euler_product_coeff(c2: int, n: int) -> int:
    """Coefficient of q^n in prod_k (1-q^k)^(-c2): the fixed-point census."""
    total = 0
    for comp in compositions(n, c2) if c2 > 0 else ([()] if n == 0 else []):
        prod = 1
        for ni in comp:
            prod *= partition_count(ni)
        total += prod
    return total
