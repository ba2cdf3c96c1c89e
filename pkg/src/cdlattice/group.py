"""Finite groups as multiplication tables, and subgroups as bit-vectors.

Elements are integers ``0 .. order-1`` with the identity fixed at ``0``.
A subgroup stores its member set as a Python ``int`` used as a bit-vector
(bit ``i`` set iff element ``i`` belongs), which makes intersection,
equality and hashing word-wise operations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 20000
ASSOCIATIVITY_CHECK_LIMIT = 512


class GroupError(ValueError):
    """Raised when a table does not describe a group."""


def _dtype_for(order: int):
    return np.int16 if order <= np.iinfo(np.int16).max else np.int32


def mask_to_bits(mask: np.ndarray) -> int:
    """Pack a boolean membership mask into an int bit-vector (element 0 = bit 0)."""
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def bits_to_mask(bits: int, order: int) -> np.ndarray:
    nbytes = (order + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little", count=order).astype(bool)


def bits_to_indices(bits: int, order: int) -> np.ndarray:
    return np.flatnonzero(bits_to_mask(bits, order))


class Subgroup:
    """An immutable set of element indices of a :class:`GroupTable`.

    Equality and hashing use the bit-vector only, so two subgroups of
    different groups with the same members compare equal; callers never
    mix groups.
    """

    __slots__ = ("bits", "order", "gens", "_elements")

    def __init__(self, bits: int, order: int | None = None, gens: Sequence[int] = (),
                 elements: np.ndarray | None = None):
        self.bits = bits
        self.order = bits.bit_count() if order is None else order
        self.gens = tuple(gens)
        self._elements = elements

    def elements(self, group_order: int) -> np.ndarray:
        if self._elements is None:
            self._elements = bits_to_indices(self.bits, group_order)
        return self._elements

    def mask(self, group_order: int) -> np.ndarray:
        return bits_to_mask(self.bits, group_order)

    def __contains__(self, x: int) -> bool:
        return (self.bits >> x) & 1 == 1

    def __le__(self, other: "Subgroup") -> bool:
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "Subgroup") -> bool:
        return self.bits != other.bits and self <= other

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.bits & other.bits)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def sort_key(self) -> tuple[int, int]:
        # order first, then the bit-vector read as an integer (element 0 = least significant)
        return (self.order, self.bits)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order})"


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its full multiplication table.

    ``mul[x, y]`` is the index of the product ``x*y``. Construction checks
    the Latin-square, identity and inverse laws; associativity is checked
    exhaustively for orders up to ``ASSOCIATIVITY_CHECK_LIMIT`` unless
    ``check_associativity`` says otherwise.
    """

    mul: np.ndarray
    name: str = ""
    element_names: tuple[str, ...] | None = None
    check_associativity: bool | None = None
    gen_elements: tuple[int, ...] = ()
    inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mul = np.asarray(self.mul)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        n = mul.shape[0]
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds the table representation limit {MAX_ORDER}")
        mul = np.ascontiguousarray(mul, dtype=_dtype_for(n))
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("table entries out of range")
        ident = np.arange(n)
        if not (np.array_equal(mul[0], ident) and np.array_equal(mul[:, 0], ident)):
            raise GroupError("element 0 is not the identity")
        srow = np.sort(mul, axis=1)
        scol = np.sort(mul, axis=0)
        if not (np.all(srow == ident) and np.all(scol == ident[:, None])):
            raise GroupError("table is not a Latin square")
        inv = np.argmin(mul, axis=1).astype(mul.dtype)  # position of the 0 entry in each row
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)
        check = self.check_associativity
        if check is None:
            check = n <= ASSOCIATIVITY_CHECK_LIMIT
        if check and not self.is_associative():
            raise GroupError("table is not associative")

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    identity = 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.name or '?'}, order={self.order})"

    def renamed(self, name: str) -> "GroupTable":
        """The same (already validated) table under another name."""
        g = object.__new__(GroupTable)
        for f in ("mul", "element_names", "check_associativity", "gen_elements", "inv"):
            object.__setattr__(g, f, getattr(self, f))
        object.__setattr__(g, "name", name)
        return g

    def is_associative(self) -> bool:
        mul = self.mul.astype(np.int64)
        for x in range(self.order):
            # (x*y)*z == x*(y*z) for all y, z
            left = mul[mul[x]]          # row y -> (x*y)*z over z
            right = mul[x][mul]         # [y, z] -> x*(y*z)
            if not np.array_equal(left, right):
                return False
        return True

    def name_of(self, x: int) -> str:
        if self.element_names:
            return self.element_names[x]
        return str(x)

    # ---- elementary arithmetic -------------------------------------------------

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        result, base = 0, x
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def product(self, word: Iterable[int]) -> int:
        return reduce(lambda a, b: int(self.mul[a, b]), word, 0)

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.product((int(self.inv[a]), int(self.inv[b]), a, b))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        ident = np.arange(n)
        for k in range(1, n + 1):
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.mul[cur, ident]
        return orders

    @cached_property
    def prime_power(self) -> tuple[int, int] | None:
        """``(p, n)`` when the order is ``p**n`` with ``n >= 1``, else ``None``."""
        return prime_power_decomposition(self.order)

    # ---- subgroups -------------------------------------------------------------

    def subgroup_from_mask(self, mask: np.ndarray, gens: Sequence[int] = ()) -> Subgroup:
        elements = np.flatnonzero(mask)
        return Subgroup(mask_to_bits(mask), len(elements), gens, elements)

    def subgroup_from_elements(self, elements: Iterable[int], gens: Sequence[int] = ()) -> Subgroup:
        mask = np.zeros(self.order, dtype=bool)
        mask[list(elements)] = True
        return self.subgroup_from_mask(mask, gens)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(1, 1, ())

    @cached_property
    def whole(self) -> Subgroup:
        elements = np.arange(self.order)
        return Subgroup((1 << self.order) - 1, self.order, self.generators, elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for x in range(self.order):
            if not mask[x]:
                gens.append(x)
                mask = self._close(mask, gens)
        return tuple(gens)

    def _close(self, mask: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        """Close ``mask`` (which must contain 0) under right multiplication by ``gens``.

        In a finite group this yields the subgroup generated by the mask and gens
        provided the mask's own elements are generated by ``gens``.
        """
        mask = mask.copy()
        mask[0] = True
        frontier = np.flatnonzero(mask)
        cols = self.mul[:, list(gens)] if gens else None
        while frontier.size and cols is not None:
            cand = cols[frontier].ravel()
            cand = np.unique(cand[~mask[cand]])
            mask[cand] = True
            frontier = cand
        return mask

    def generated_subgroup(self, seed: Iterable[int]) -> Subgroup:
        gens = sorted({int(s) for s in seed if s != 0})
        if not gens:
            return self.trivial
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        mask = self._close(mask, gens)
        return self.subgroup_from_mask(mask, gens)

    def join(self, h: Subgroup, k: Subgroup) -> Subgroup:
        """Smallest subgroup containing both ``h`` and ``k``."""
        if k <= h:
            return h
        if h <= k:
            return k
        gens = list(h.gens or self.generators_of(h)) + list(k.gens or self.generators_of(k))
        mask = h.mask(self.order) | k.mask(self.order)
        mask = self._close(mask, gens)
        return self.subgroup_from_mask(mask, gens)

    def generators_of(self, h: Subgroup) -> tuple[int, ...]:
        if h.gens or h.order == 1:
            return h.gens
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for x in h.elements(self.order):
            if not mask[x]:
                gens.append(int(x))
                mask = self._close(mask, gens)
                if mask.sum() == h.order:
                    break
        h.gens = tuple(gens)
        return h.gens

    def cyclic_subgroup(self, x: int) -> Subgroup:
        els = [0]
        y = x
        while y != 0:
            els.append(y)
            y = int(self.mul[y, x])
        return self.subgroup_from_elements(els, (x,) if x else ())

    def is_subgroup(self, h: Subgroup) -> bool:
        els = h.elements(self.order)
        if 0 not in h or self.order % h.order:
            return False
        mask = h.mask(self.order)
        return bool(mask[self.mul[np.ix_(els, els)]].all() and mask[self.inv[els]].all())

    # ---- centralizers and friends ----------------------------------------------

    def element_centralizer_mask(self, x: int) -> np.ndarray:
        return self.mul[:, x] == self.mul[x, :]

    def centralizer(self, h: Subgroup) -> Subgroup:
        """``C_G(h)``: the elements commuting with every element of ``h``."""
        mask = np.ones(self.order, dtype=bool)
        for s in self.generators_of(h):
            mask &= self.element_centralizer_mask(s)
        return self.subgroup_from_mask(mask)

    @cached_property
    def center(self) -> Subgroup:
        return self.centralizer(self.whole)

    def is_abelian_subgroup(self, h: Subgroup) -> bool:
        return h <= self.centralizer(h)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def normalizer_mask(self, h: Subgroup) -> np.ndarray:
        """Mask of ``g`` with ``g^-1 h g = h``."""
        hmask = h.mask(self.order)
        g = np.arange(self.order)
        ok = np.ones(self.order, dtype=bool)
        for s in self.generators_of(h):
            conj = self.mul[self.mul[self.inv, s], g]  # g^-1 s g
            ok &= hmask[conj]
        return ok

    def normalizer(self, h: Subgroup) -> Subgroup:
        return self.subgroup_from_mask(self.normalizer_mask(h))

    def is_normal(self, h: Subgroup) -> bool:
        return bool(self.normalizer_mask(h).all())

    def normal_closure(self, seed: Iterable[int]) -> Subgroup:
        """Smallest normal subgroup containing ``seed``."""
        gens = sorted({int(s) for s in seed if s != 0})
        if not gens:
            return self.trivial
        ggens = self.generators
        mask = self._close(np.zeros(self.order, dtype=bool), gens)
        while True:
            # conjugates s^g of current generators by the group generators
            conj = self.mul[self.mul[self.inv[list(ggens)][:, None], np.array(gens)[None, :]],
                            np.array(ggens)[:, None]].ravel()
            extra = sorted({int(c) for c in conj if not mask[c]})
            if not extra:
                break
            gens.extend(extra)
            mask = self._close(mask, gens)
        return self.subgroup_from_mask(mask, gens)

    def commutator_with_group(self, h: Subgroup) -> Subgroup:
        """``[h, G]``, the normal closure of the commutators of generators."""
        comms = {self.commutator(s, g) for s in self.generators_of(h) for g in self.generators}
        return self.normal_closure(comms)

    @cached_property
    def derived_subgroup(self) -> Subgroup:
        return self.commutator_with_group(self.whole)

    @cached_property
    def lower_central_series(self) -> tuple[Subgroup, ...]:
        series = [self.whole]
        while True:
            nxt = self.commutator_with_group(series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return tuple(series)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*map(int, np.unique(self.element_orders)))

    @cached_property
    def predicates(self) -> "GroupPredicates":
        series = self.lower_central_series
        nil_class = len(series) - 1 if series[-1].order == 1 else None
        pp = self.prime_power
        maximal_class = (
            pp is not None and pp[1] >= 3 and nil_class == pp[1] - 1
        )
        derived = self.derived_subgroup
        return GroupPredicates(
            is_abelian=self.is_abelian,
            nilpotency_class=nil_class,
            exponent=self.exponent,
            is_maximal_class=maximal_class,
            is_metabelian=self.is_abelian_subgroup(derived),
        )

    def word_value(self, word: Sequence[int], gens: Sequence[int]) -> int:
        """Evaluate a signed word (1-based generator numbers, negative = inverse)."""
        acc = 0
        for letter in word:
            g = gens[abs(letter) - 1]
            if letter < 0:
                g = int(self.inv[g])
            acc = int(self.mul[acc, g])
        return acc


@dataclass(frozen=True)
class GroupPredicates:
    is_abelian: bool
    nilpotency_class: int | None
    exponent: int
    is_maximal_class: bool
    is_metabelian: bool


def prime_power_decomposition(n: int) -> tuple[int, int] | None:
    if n < 2:
        return None
    p = smallest_prime_divisor(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise ValueError("no prime divisor")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_divisor(n) == n


def exact_log(n: int, p: int) -> int | None:
    """``k`` with ``p**k == n``, or ``None``."""
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


# Module-level functional API mirroring the methods.

def element_order(g: GroupTable, x: int) -> int:
    return int(g.element_orders[x])


def center(g: GroupTable) -> Subgroup:
    return g.center


def centralizer(g: GroupTable, s: Subgroup) -> Subgroup:
    return g.centralizer(s)


def generated_subgroup(g: GroupTable, seed: Iterable[int]) -> Subgroup:
    return g.generated_subgroup(seed)


def derived_subgroup(g: GroupTable) -> Subgroup:
    return g.derived_subgroup


def lower_central_series(g: GroupTable) -> list[Subgroup]:
    return list(g.lower_central_series)


def group_predicates(g: GroupTable) -> GroupPredicates:
    return g.predicates


def is_normal(g: GroupTable, s: Subgroup) -> bool:
    return g.is_normal(s)
