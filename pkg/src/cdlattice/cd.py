"""Chermak-Delgado measures and lattices.

The measure of ``H <= G`` is ``|H| * |C_G(H)|``; the lattice is the set of
subgroups of maximum measure. Everything here is computed from the full
subgroup list, no pruning.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from .group import GroupTable, Subgroup, mask_to_bits
from .subgroups import SubgroupSet, all_subgroups


@dataclass(frozen=True)
class LatticeShape:
    """``chain`` (param = length), ``quasi_antichain`` (param = width) or ``general``."""

    tag: str
    param: int | None = None

    def __str__(self) -> str:
        if self.tag == "general":
            return "general"
        name = "width" if self.tag == "quasi_antichain" else "length"
        return f"{self.tag}({name} {self.param})"

    @classmethod
    def chain(cls, length: int) -> "LatticeShape":
        return cls("chain", length)

    @classmethod
    def quasi_antichain(cls, width: int) -> "LatticeShape":
        return cls("quasi_antichain", width)


GENERAL = LatticeShape("general")


def classify_shape(items: Sequence[Hashable], leq: Callable[[object, object], bool] | None = None) -> LatticeShape:
    """Shape of a finite poset given by ``items`` and the order ``leq`` (default ``<=``)."""
    if leq is None:
        leq = lambda x, y: x <= y  # noqa: E731
    items = list(items)
    k = len(items)
    comparable = [[i == j or leq(items[i], items[j]) or leq(items[j], items[i]) for j in range(k)]
                  for i in range(k)]
    if all(all(row) for row in comparable):
        return LatticeShape.chain(k - 1)
    bottoms = [i for i in range(k) if all(leq(items[i], y) for y in items)]
    tops = [i for i in range(k) if all(leq(y, items[i]) for y in items)]
    if len(bottoms) != 1 or len(tops) != 1 or k < 4:
        return GENERAL
    middle = [i for i in range(k) if i not in (bottoms[0], tops[0])]
    if all(not comparable[i][j] for i, j in itertools.combinations(middle, 2)):
        return LatticeShape.quasi_antichain(len(middle))
    return GENERAL


def measure(g: GroupTable, h: Subgroup) -> int:
    return h.order * g.centralizer(h).order


class MeasureTable:
    """Centralizers and measures of every subgroup in a :class:`SubgroupSet`."""

    def __init__(self, g: GroupTable, subs: SubgroupSet):
        self.group = g
        self.subs = subs
        cent_bits = {}
        whole = (1 << g.order) - 1
        for x in set(x for h in subs for x in g.generators_of(h)):
            cent_bits[x] = _element_centralizer_bits(g, x)
        self.centralizer_bits = []
        for h in subs:
            bits = whole
            for x in g.generators_of(h):
                bits &= cent_bits[x]
            self.centralizer_bits.append(bits)
        self.centralizer_orders = np.array([b.bit_count() for b in self.centralizer_bits], dtype=np.int64)
        self.orders = np.array([h.order for h in subs], dtype=np.int64)
        self.measures = self.orders * self.centralizer_orders

    def centralizer(self, i: int) -> Subgroup:
        return self.subs.canonical(Subgroup(self.centralizer_bits[i]))

    @cached_property
    def m_star(self) -> int:
        return int(self.measures.max())

    def is_abelian(self, i: int) -> bool:
        h = self.subs[i]
        return h.bits & self.centralizer_bits[i] == h.bits

    def self_centralizing(self) -> list[int]:
        return [i for i, h in enumerate(self.subs) if self.centralizer_bits[i] == h.bits]


def _element_centralizer_bits(g: GroupTable, x: int) -> int:
    return mask_to_bits(g.element_centralizer_mask(x))


@dataclass
class CDLattice:
    group: GroupTable
    members: list[Subgroup]
    m_star: int
    measures: dict[int, int]
    hasse: list[tuple[int, int]]
    minimum: int
    maximum: int
    shape: LatticeShape
    table: MeasureTable

    def __len__(self) -> int:
        return len(self.members)

    def index(self, h: Subgroup) -> int:
        return self._pos[h.bits]

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {h.bits: i for i, h in enumerate(self.members)}

    def __contains__(self, h: Subgroup) -> bool:
        return h.bits in self._pos

    @property
    def member_set(self) -> frozenset[int]:
        return frozenset(self._pos)

    def centralizer(self, h: Subgroup) -> Subgroup:
        return self.table.centralizer(self.table.subs.index(h))

    @property
    def bottom(self) -> Subgroup:
        return self.members[self.minimum]

    @property
    def top(self) -> Subgroup:
        return self.members[self.maximum]

    def meet(self, i: int, j: int) -> int:
        return self._pos[self.members[i].bits & self.members[j].bits]

    def join(self, i: int, j: int) -> int:
        return self._pos[self.group.join(self.members[i], self.members[j]).bits]


def hasse_edges(members: Sequence[Subgroup]) -> list[tuple[int, int]]:
    """Cover relations ``(lo, hi)`` of the inclusion order on ``members``.

    Members are processed in increasing order; a pair ``lo < hi`` is a
    cover unless some intermediate member lies between them.
    """
    k = len(members)
    below = [[j for j in range(k) if j != i and members[j] < members[i]] for i in range(k)]
    edges = []
    for hi in range(k):
        cands = set(below[hi])
        for lo in below[hi]:
            # anything strictly below an element of cands is not a cover
            cands.difference_update(below[lo])
        edges.extend((lo, hi) for lo in sorted(cands))
    return sorted(edges)


def cd_lattice(g: GroupTable, subs: SubgroupSet | None = None, validate: bool = True) -> CDLattice:
    """The Chermak-Delgado lattice of ``g``; ``validate`` asserts the lattice invariants."""
    if subs is None:
        subs = all_subgroups(g)
    table = MeasureTable(g, subs)
    m_star = table.m_star
    idx = np.flatnonzero(table.measures == m_star)
    members = [subs[int(i)] for i in idx]  # already sorted by (order, bits)
    measures = {h.bits: m_star for h in members}
    lo = [i for i, h in enumerate(members) if all(h <= k for k in members)]
    hi = [i for i, h in enumerate(members) if all(k <= h for k in members)]
    assert len(lo) == 1 and len(hi) == 1, "CD set has no unique minimum/maximum"
    lat = CDLattice(
        group=g, members=members, m_star=m_star, measures=measures,
        hasse=hasse_edges(members), minimum=lo[0], maximum=hi[0],
        shape=classify_shape(members), table=table,
    )
    if validate:
        problems = lattice_violations(lat)
        assert not problems, "; ".join(problems)
    return lat


def lattice_violations(lat: CDLattice, check_modular: bool = True) -> list[str]:
    """Every failed structural property of a CD lattice, as messages (empty if sound)."""
    g = lat.group
    table = lat.table
    subs = table.subs
    out = []
    if int(table.measures.max()) != lat.m_star:
        out.append("m_star is not the maximum measure")
    if lat.m_star < g.order * g.center.order:
        out.append("m_star below |G||Z(G)|")
    z = g.center
    for h in lat.members:
        i = subs.index(h)
        if int(table.measures[i]) != lat.m_star:
            out.append(f"member of order {h.order} has wrong measure")
        c = table.centralizer(i)
        if c not in lat:
            out.append(f"centralizer of member of order {h.order} not a member")
        elif table.centralizer_bits[subs.index(c)] != h.bits:
            out.append(f"C(C(H)) != H for member of order {h.order}")
        if not z <= h:
            out.append(f"member of order {h.order} does not contain Z(G)")
        if (g.order // z.order) % (g.order // h.order):
            out.append(f"|G:H| does not divide |G:Z(G)| for member of order {h.order}")
    k = len(lat.members)
    meet = np.full((k, k), -1)
    join = np.full((k, k), -1)
    pos = {h.bits: i for i, h in enumerate(lat.members)}
    for i in range(k):
        for j in range(i, k):
            mb = lat.members[i].bits & lat.members[j].bits
            jb = g.join(lat.members[i], lat.members[j]).bits
            if mb not in pos or jb not in pos:
                out.append("members not closed under meet/join")
                return out
            meet[i, j] = meet[j, i] = pos[mb]
            join[i, j] = join[j, i] = pos[jb]
    if check_modular and not is_modular(lat.members, meet, join):
        out.append("lattice is not modular")
    m = lat.bottom
    if not table.is_abelian(subs.index(m)):
        out.append("minimum member is not abelian")
    if not g.is_normal(m):
        out.append("minimum member is not normal")
    if not z <= m:
        out.append("minimum member does not contain Z(G)")
    return out


def is_modular(members: Sequence[Subgroup], meet: np.ndarray, join: np.ndarray) -> bool:
    """``x v (y ^ z) == (x v y) ^ z`` for all ``x <= z``."""
    k = len(members)
    for x in range(k):
        for z in range(k):
            if not members[x] <= members[z]:
                continue
            lhs = join[x, meet[:, z]]        # over all y
            rhs = meet[join[x, :], z]
            if not np.array_equal(lhs, rhs):
                return False
    return True


def is_complemented(meet: np.ndarray, join: np.ndarray, bottom: int, top: int) -> bool:
    k = meet.shape[0]
    return all(any(meet[x, y] == bottom and join[x, y] == top for y in range(k)) for x in range(k))


def meet_join_tables(lat: CDLattice) -> tuple[np.ndarray, np.ndarray]:
    k = len(lat.members)
    meet = np.empty((k, k), dtype=np.int64)
    join = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(i, k):
            meet[i, j] = meet[j, i] = lat.meet(i, j)
            join[i, j] = join[j, i] = lat.join(i, j)
    return meet, join


def max_self_centralizing(g: GroupTable, subs: SubgroupSet, table: MeasureTable | None = None) -> Subgroup:
    """A self-centralizing subgroup of maximum order; ties go to the first in ``(order, bits)`` order."""
    table = table or MeasureTable(g, subs)
    cands = table.self_centralizing()
    best = max(subs[i].order for i in cands)
    return next(subs[i] for i in cands if subs[i].order == best)


def self_centralizing_of_max_order(g: GroupTable, subs: SubgroupSet, table: MeasureTable | None = None) -> list[Subgroup]:
    table = table or MeasureTable(g, subs)
    cands = table.self_centralizing()
    best = max(subs[i].order for i in cands)
    return [subs[i] for i in cands if subs[i].order == best]


def cgz_predicate(g: GroupTable, subs: SubgroupSet, table: MeasureTable | None = None) -> bool:
    """``C_G(H) = Z(H)`` for every non-abelian subgroup ``H`` (vacuously true if ``G`` is abelian)."""
    table = table or MeasureTable(g, subs)
    for i, h in enumerate(subs):
        c = table.centralizer_bits[i]
        if h.bits & c != h.bits and c & h.bits != c:  # non-abelian and C(H) not inside H
            return False
    return True
