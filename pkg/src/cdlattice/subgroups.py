"""Exhaustive subgroup enumeration.

The fast path starts from the trivial subgroup and the cyclic subgroups
and closes the collection under joins with cyclic subgroups of
prime-power order (every subgroup is such a join, so this reaches the
same fixed point as closing under all pairwise joins). For nilpotent
groups the joins are restricted to minimal normal extensions: ``K`` is
produced from ``H`` only when ``H`` is normal of prime index in ``K``.
In a nilpotent group every subgroup is reachable through such steps,
because a proper subgroup is always properly contained in its
normalizer.

:func:`verify_complete` is an independent, much slower oracle used by
the tests to certify the fast path.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .group import GroupTable, Subgroup, mask_to_bits

log = logging.getLogger(__name__)

DEFAULT_MAX_SUBGROUPS = 500_000
DEFAULT_MAX_JOIN_STEPS = 2_000_000


class ResourceLimitError(RuntimeError):
    pass


@dataclass
class SubgroupSet:
    """All subgroups of a group, sorted by ``(order, bit-vector)``."""

    group: GroupTable
    subgroups: list[Subgroup]
    index_of: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.subgroups.sort(key=Subgroup.sort_key)
        self.index_of = {h.bits: i for i, h in enumerate(self.subgroups)}

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self) -> Iterator[Subgroup]:
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def __contains__(self, h: Subgroup) -> bool:
        return h.bits in self.index_of

    def index(self, h: Subgroup) -> int:
        return self.index_of[h.bits]

    def canonical(self, h: Subgroup) -> Subgroup:
        """The stored instance equal to ``h`` (keeps cached generators)."""
        return self.subgroups[self.index_of[h.bits]]

    def of_order(self, order: int) -> list[Subgroup]:
        return [h for h in self.subgroups if h.order == order]

    def fingerprint(self) -> bytes:
        """Deterministic byte serialization of the sorted member bit-vectors."""
        n = (self.group.order + 7) // 8
        return b"".join(h.bits.to_bytes(n, "little") for h in self.subgroups)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class _Enumerator:
    def __init__(self, g: GroupTable, max_subgroups: int, max_join_steps: int):
        self.g = g
        self.n = g.order
        self.max_subgroups = max_subgroups
        self.max_join_steps = max_join_steps
        self.primes = _prime_divisors(self.n) if self.n > 1 else []
        ident = np.arange(self.n)
        self.powers = {q: self._power_map(q, ident) for q in self.primes}
        self.nilpotent = g.predicates.nilpotency_class is not None

    def _power_map(self, q: int, ident: np.ndarray) -> np.ndarray:
        out = ident
        for _ in range(q - 1):
            out = self.g.mul[out, ident]
        return out

    def cyclic_seeds(self) -> list[Subgroup]:
        seen = np.zeros(self.n, dtype=bool)
        seeds = []
        for x in range(1, self.n):
            if seen[x]:
                continue
            c = self.g.cyclic_subgroup(x)
            els = c.elements(self.n)
            # elements generating the same cyclic subgroup: same order, inside it
            orders = self.g.element_orders
            seen[els[orders[els] == c.order]] = True
            seeds.append(c)
        return seeds

    # -- nilpotent groups: minimal normal extensions --------------------------------

    def normal_extensions(self, h: Subgroup) -> list[Subgroup]:
        g, n = self.g, self.n
        hmask = h.mask(n)
        helems = h.elements(n)
        norm = g.normalizer_mask(h) & ~hmask
        out = []
        for q in self.primes:
            cand = norm & hmask[self.powers[q]]
            while True:
                nz = np.flatnonzero(cand)
                if nz.size == 0:
                    break
                x = int(nz[0])
                # K = H <x> = union of cosets H x^j, j < q
                layers = [helems]
                y = x
                for _ in range(q - 1):
                    layers.append(g.mul[helems, y])
                    y = int(g.mul[y, x])
                kel = np.concatenate(layers)
                kmask = np.zeros(n, dtype=bool)
                kmask[kel] = True
                cand &= ~kmask
                kel.sort()
                gens = g.generators_of(h) + (x,)
                out.append(Subgroup(mask_to_bits(kmask), len(kel), gens, kel))
        return out

    # -- general groups: joins with prime-power cyclic subgroups ----------------------

    def cyclic_joins(self, h: Subgroup, seeds: list[Subgroup]) -> list[Subgroup]:
        g, n = self.g, self.n
        out = []
        hmask = h.mask(n)
        hgens = list(g.generators_of(h))
        for c in seeds:
            if c <= h:
                continue
            mask = hmask.copy()
            gens = hgens + list(c.gens)
            mask = self._bounded_close(mask, gens)
            out.append(g.subgroup_from_mask(mask, gens))
        return out

    def _bounded_close(self, mask: np.ndarray, gens: list[int]) -> np.ndarray:
        cols = self.g.mul[:, gens]
        frontier = np.flatnonzero(mask)
        steps = 0
        while frontier.size:
            steps += frontier.size * len(gens)
            if steps > self.max_join_steps:
                raise ResourceLimitError(f"join closure exceeded {self.max_join_steps} steps")
            cand = cols[frontier].ravel()
            cand = np.unique(cand[~mask[cand]])
            mask[cand] = True
            frontier = cand
        return mask

    def run(self, workers: int) -> list[Subgroup]:
        g = self.g
        found: dict[int, Subgroup] = {g.trivial.bits: g.trivial}
        if self.nilpotent:
            # cyclic subgroups are reached as chains of normal extensions
            frontier = [g.trivial]
            expand = self.normal_extensions
        else:
            seeds = self.cyclic_seeds()
            pp_seeds = [c for c in seeds if len(_prime_divisors(c.order)) == 1]
            for c in seeds:
                found.setdefault(c.bits, c)
            frontier = sorted(found.values(), key=Subgroup.sort_key)
            expand = lambda h: self.cyclic_joins(h, pp_seeds)  # noqa: E731
        pool = ThreadPoolExecutor(workers) if workers > 1 else None
        try:
            while frontier:
                if pool is None:
                    results: Iterable[list[Subgroup]] = map(expand, frontier)
                else:
                    results = pool.map(expand, frontier, chunksize=max(1, len(frontier) // (4 * workers)))
                new = []
                for batch in results:
                    for k in batch:
                        if k.bits not in found:
                            found[k.bits] = k
                            new.append(k)
                    if len(found) > self.max_subgroups:
                        raise ResourceLimitError(f"more than {self.max_subgroups} subgroups")
                # canonical processing order keeps the run independent of scheduling
                new.sort(key=Subgroup.sort_key)
                log.debug("enumeration level: %d new, %d total", len(new), len(found))
                frontier = new
        finally:
            if pool is not None:
                pool.shutdown()
        return list(found.values())


def all_subgroups(g: GroupTable, workers: int = 1,
                  max_subgroups: int = DEFAULT_MAX_SUBGROUPS,
                  max_join_steps: int = DEFAULT_MAX_JOIN_STEPS) -> SubgroupSet:
    """Every subgroup of ``g``.

    ``workers > 1`` expands each enumeration level on a thread pool; the
    result is identical for any worker count. Raises
    :class:`ResourceLimitError` when a cap is exceeded.
    """
    subs = _Enumerator(g, max_subgroups, max_join_steps).run(workers)
    for h in subs:
        h._elements = None  # drop cached element arrays; they are rebuilt on demand
    return SubgroupSet(g, subs)


def _oracle_closure(mul: list[list[int]], members: set[int], extra: int) -> frozenset[int]:
    gens = list(members | {extra})
    seen = {0}
    queue = [0]
    for x in queue:
        row = mul[x]
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def oracle_subgroups(g: GroupTable) -> set[frozenset[int]]:
    """All subgroups by breadth-first one-element extension from the trivial subgroup.

    Pure Python over the raw table; quadratic-ish in the number of
    subgroups, meant for groups of order at most 128.
    """
    mul = g.mul.tolist()
    n = g.order
    start = frozenset({0})
    known = {start}
    queue = [start]
    for h in queue:
        done = set(h)
        for x in range(n):
            if x in done:
                continue
            k = _oracle_closure(mul, set(h), x)
            # <H, x> = <H, hx> for every h in H
            done.update(mul[y][x] for y in h)
            if k not in known:
                known.add(k)
                queue.append(k)
    return known


def verify_complete(g: GroupTable, s: SubgroupSet) -> bool:
    """Compare ``s`` against :func:`oracle_subgroups`; also checks every member is a subgroup."""
    if g.order > 128:
        raise ValueError("oracle limited to groups of order <= 128")
    oracle = oracle_subgroups(g)
    fast = {frozenset(int(x) for x in h.elements(g.order)) for h in s}
    if len(fast) != len(s.subgroups):
        return False
    return fast == oracle and all(g.is_subgroup(h) for h in s)
