"""Isomorphism types of finite abelian groups, as invariant-factor lists."""
from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .group import GroupTable, Subgroup


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _from_primary(parts: dict[int, list[int]]) -> tuple[int, ...]:
    """Combine per-prime exponent lists into invariant factors ``d1 | d2 | ...``."""
    width = max((len(v) for v in parts.values()), default=0)
    factors = [1] * width
    for p, exps in parts.items():
        for k, e in enumerate(sorted(exps, reverse=True)):
            factors[width - 1 - k] *= p ** e
    return tuple(f for f in factors if f > 1)


def invariant_factors(factors: Sequence[int]) -> tuple[int, ...]:
    """Canonical invariant factors (ascending, each dividing the next) of ``Z_f1 x Z_f2 x ...``."""
    parts: dict[int, list[int]] = defaultdict(list)
    for f in factors:
        for p, e in _factorize(f).items():
            parts[p].append(e)
    return _from_primary(parts)


def _partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def abelian_types(order: int) -> list[tuple[int, ...]]:
    """All abelian groups of the given order, as invariant-factor tuples."""
    if order == 1:
        return [()]
    primes = _factorize(order)
    per_prime = [[(p, part) for part in _partitions(e)] for p, e in sorted(primes.items())]
    out = []
    for combo in product(*per_prime):
        out.append(_from_primary({p: part for p, part in combo}))
    return sorted(out)


def is_z2m_times_z4(factors: Sequence[int], min_m: int = 0) -> bool:
    """Whether the type is ``Z_2^m x Z_4`` with ``m >= min_m``."""
    inv = invariant_factors(factors)
    return bool(inv) and inv[-1] == 4 and all(f == 2 for f in inv[:-1]) and len(inv) - 1 >= min_m


def is_elementary_2(factors: Sequence[int]) -> bool:
    inv = invariant_factors(factors)
    return bool(inv) and all(f == 2 for f in inv)


def subgroup_type(g: GroupTable, h: Subgroup) -> tuple[int, ...]:
    """Invariant factors of an abelian subgroup, from its element-order statistics.

    For the ``p``-part with exponents ``e_i``, the number of elements of
    order dividing ``p^k`` is ``p^(sum_i min(k, e_i))``.
    """
    orders = g.element_orders[h.elements(g.order)]
    parts: dict[int, list[int]] = {}
    for p, e in _factorize(h.order).items():
        # counts of elements with order dividing p^k (restricted to the p-part)
        cofactor = h.order // p ** e
        pparts = np.array([_p_part(int(o), p) for o in orders])
        mins = []
        for k in range(1, e + 1):
            c = int(np.sum(pparts <= p ** k)) // cofactor
            mins.append(round(np.log(c) / np.log(p)))
        # number of cyclic factors of exponent >= k is mins[k-1] - mins[k-2]
        ge = [mins[0]] + [mins[k] - mins[k - 1] for k in range(1, e)]
        exps = []
        for k in range(e, 0, -1):
            count = ge[k - 1] - (ge[k] if k < e else 0)
            exps += [k] * count
        parts[p] = exps
    return _from_primary(parts)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out
