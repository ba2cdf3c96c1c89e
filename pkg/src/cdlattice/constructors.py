"""Group constructors.

Every constructor documents its element indexing; the identity is always
index 0 and indexing is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .group import GroupError, GroupTable, Subgroup, is_prime

__all__ = [
    "AbelianSpec", "abelian", "cyclic", "direct_product", "dicyclic",
    "generalized_dicyclic", "semidirect_by_automorphism", "semidirect_product",
    "dihedral", "semidihedral", "generalized_quaternion", "extraspecial",
    "heisenberg", "quotient", "central_product",
]


@dataclass(frozen=True)
class AbelianSpec:
    """Direct product of cyclic groups ``Z_f1 x Z_f2 x ...``.

    Elements are coordinate vectors ``(c1, c2, ...)`` with ``0 <= ci < fi``,
    indexed mixed-radix with the *first* factor least significant:
    ``index = c1 + f1*(c2 + f2*(c3 + ...))``. The standard generator of
    factor ``i`` is the unit vector ``e_i``.
    """

    factors: tuple[int, ...]

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(f) for f in factors)
        if any(f < 2 for f in factors):
            raise GroupError(f"invariant factors must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self) -> int:
        return int(np.prod(self.factors, dtype=np.int64)) if self.factors else 1

    @cached_property
    def coords(self) -> np.ndarray:
        """``coords[x]`` is the coordinate vector of element ``x``."""
        n = self.order
        idx = np.arange(n)
        out = np.empty((n, len(self.factors)), dtype=np.int64)
        for i, f in enumerate(self.factors):
            out[:, i] = idx % f
            idx = idx // f
        return out

    @cached_property
    def radix(self) -> np.ndarray:
        r = np.ones(len(self.factors), dtype=np.int64)
        for i in range(1, len(self.factors)):
            r[i] = r[i - 1] * self.factors[i - 1]
        return r

    def encode(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords) % np.array(self.factors)
        return coords @ self.radix

    def unit(self, i: int) -> int:
        return int(self.radix[i])

    @cached_property
    def add(self) -> np.ndarray:
        c = self.coords
        return self.encode(c[:, None, :] + c[None, :, :])

    @cached_property
    def neg(self) -> np.ndarray:
        return self.encode(-self.coords)

    def element_order(self, x: int) -> int:
        o = 1
        for c, f in zip(self.coords[x], self.factors):
            o = np.lcm(o, f // np.gcd(int(c), f))
        return int(o)

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.factors)) if self.factors else 1

    def involutions(self) -> list[int]:
        return [x for x in range(1, self.order) if self.element_order(x) == 2]

    def label(self) -> str:
        return "x".join(f"Z{f}" for f in self.factors) or "1"


def _as_spec(a: AbelianSpec | Sequence[int]) -> AbelianSpec:
    return a if isinstance(a, AbelianSpec) else AbelianSpec(a)


def abelian(spec: AbelianSpec | Sequence[int]) -> GroupTable:
    """Direct product of cyclic groups with :class:`AbelianSpec` indexing."""
    spec = _as_spec(spec)
    if spec.order == 1:
        return GroupTable(np.zeros((1, 1), dtype=np.int64), name="1")
    return GroupTable(spec.add, name=f"ab:{','.join(map(str, spec.factors))}")


def cyclic(n: int) -> GroupTable:
    return abelian([n]) if n > 1 else abelian([])


def direct_product(g: GroupTable, h: GroupTable, name: str | None = None) -> GroupTable:
    """``G x H`` with ``(x, y)`` at index ``x + |G|*y``."""
    n, m = g.order, h.order
    gx = np.arange(n * m) % n
    hy = np.arange(n * m) // n
    mul = g.mul[gx[:, None], gx[None, :]].astype(np.int64) + n * h.mul[hy[:, None], hy[None, :]]
    return GroupTable(mul, name=name or f"{g.name}*{h.name}")


def dicyclic(n: int) -> GroupTable:
    """``Dic_{4n} = <a, x | a^{2n} = 1, x^2 = a^n, a^x = a^-1>``.

    Element ``a^i x^e`` (``0 <= i < 2n``, ``e`` in {0, 1}) has index
    ``i + 2n*e``. This is exactly ``generalized_dicyclic([2n], n)``.
    """
    if n < 1:
        raise GroupError("dicyclic groups need n >= 1")
    g = generalized_dicyclic(AbelianSpec([2 * n]), n)
    names = tuple(_power_name("a", i) for i in range(2 * n)) + tuple(
        f"{_power_name('a', i)}x" if i else "x" for i in range(2 * n))
    return GroupTable(g.mul, name=f"dic:{n}", element_names=names, check_associativity=False)


def _power_name(sym: str, i: int) -> str:
    return "1" if i == 0 else sym if i == 1 else f"{sym}^{i}"


def generalized_dicyclic(a: AbelianSpec | Sequence[int], t: int) -> GroupTable:
    """``Dic(A) = <A, x | x^4 = 1, x^2 = t, a^x = a^-1>`` for an involution ``t`` of ``A``.

    Element ``(a, e)`` meaning ``a x^e`` has index ``a + |A|*e``, where
    ``a`` uses the :class:`AbelianSpec` indexing of ``A``.
    """
    a = _as_spec(a)
    n = a.order
    if n % 2:
        raise GroupError("generalized dicyclic groups need |A| even")
    if not (0 < t < n) or a.add[t, t] != 0:
        raise GroupError(f"t={t} is not an involution of {a.label()}")
    add, neg = a.add, a.neg
    diff = add[:, neg]  # diff[x, y] = x - y
    mul = np.empty((2 * n, 2 * n), dtype=np.int64)
    mul[:n, :n] = add
    mul[:n, n:] = add + n
    mul[n:, :n] = diff + n
    mul[n:, n:] = add[diff, t]
    return GroupTable(mul, name=f"gdic:{','.join(map(str, a.factors))},t={t}")


def _automorphism(a: AbelianSpec, images: Sequence[int]) -> np.ndarray:
    """Permutation of ``A`` extending ``e_i -> images[i]``; raises unless an automorphism."""
    if len(images) != len(a.factors):
        raise GroupError(f"need {len(a.factors)} generator images, got {len(images)}")
    img = np.asarray(images, dtype=np.int64)
    if np.any(img < 0) or np.any(img >= a.order):
        raise GroupError("generator image out of range")
    for x, f in zip(img, a.factors):
        if f % a.element_order(int(x)):
            raise GroupError("image order does not divide the generator order")
    # sigma(c) = sum_i c_i * images[i]
    perm = a.encode(a.coords @ a.coords[img])
    if len(np.unique(perm)) != a.order:
        raise GroupError("images do not define a bijection")
    return perm


def _perm_power(perm: np.ndarray, k: int) -> np.ndarray:
    out = np.arange(len(perm))
    for _ in range(k):
        out = perm[out]
    return out


def semidirect_product(a: AbelianSpec | Sequence[int], b: AbelianSpec | Sequence[int],
                       actions: Sequence[Sequence[int]]) -> GroupTable:
    """``A x| B`` for abelian ``A`` and ``B``.

    ``actions[j]`` lists the images of ``A``'s standard generators under
    the automorphism by which the ``j``-th generator of ``B`` acts. The
    automorphisms must commute and have orders dividing the corresponding
    factors of ``B``. Element ``(x, y)`` has index ``x + |A|*y`` and
    ``(x, y)(x', y') = (x + phi_y(x'), y + y')``.
    """
    a, b = _as_spec(a), _as_spec(b)
    if len(actions) != len(b.factors):
        raise GroupError(f"need one action per factor of B ({len(b.factors)})")
    sigmas = [_automorphism(a, imgs) for imgs in actions]
    ident = np.arange(a.order)
    for s, f in zip(sigmas, b.factors):
        if not np.array_equal(_perm_power(s, f), ident):
            raise GroupError("automorphism order does not divide its factor of B")
    for i, s in enumerate(sigmas):
        for t in sigmas[i + 1:]:
            if not np.array_equal(s[t], t[s]):
                raise GroupError("acting automorphisms do not commute")
    # phi[y] = product of sigma_j^{y_j}
    phi = np.empty((b.order, a.order), dtype=np.int64)
    for y in range(b.order):
        p = ident
        for s, c in zip(sigmas, b.coords[y]):
            p = _perm_power(s, int(c))[p]
        phi[y] = p
    na, nb = a.order, b.order
    xs = np.arange(na * nb) % na
    ys = np.arange(na * nb) // na
    acted = phi[ys[:, None], xs[None, :]]
    mul = a.add[xs[:, None], acted] + na * b.add[ys[:, None], ys[None, :]]
    return GroupTable(mul, name=f"sdp:{a.label()}:{b.label()}")


def semidirect_by_automorphism(a: AbelianSpec | Sequence[int], images: Sequence[int], k: int) -> GroupTable:
    """``A x| <x>`` with ``x`` of order ``k`` acting by ``e_i -> images[i]``.

    Element ``(a, i)`` has index ``a + |A|*i``.
    """
    if k < 1:
        raise GroupError("k must be positive")
    a = _as_spec(a)
    if k == 1:
        _automorphism(a, images)
        if not np.array_equal(_automorphism(a, images), np.arange(a.order)):
            raise GroupError("k = 1 requires the identity automorphism")
        return abelian(a)
    g = semidirect_product(a, AbelianSpec([k]), [images])
    return GroupTable(g.mul, name=f"sdp:{','.join(map(str, a.factors))};"
                                  f"{','.join(map(str, images))};{k}", check_associativity=False)


def dihedral(m: int) -> GroupTable:
    """Dihedral group of order ``2m``: ``Z_m`` inverted by an involution."""
    if m < 2:
        raise GroupError("dihedral groups need m >= 2")
    return _renamed(semidirect_by_automorphism([m], [m - 1], 2), f"D{2 * m}")


def semidihedral(order: int) -> GroupTable:
    """``SD_{2^k} = <a, x | a^{2^(k-1)}, x^2, a^x = a^(2^(k-2) - 1)>`` for ``k >= 4``."""
    k = order.bit_length() - 1
    if order != 1 << k or k < 4:
        raise GroupError("semidihedral groups have order 2^k with k >= 4")
    half = order // 2
    return _renamed(semidirect_by_automorphism([half], [half // 2 - 1], 2), f"SD{order}")


def generalized_quaternion(order: int) -> GroupTable:
    k = order.bit_length() - 1
    if order != 1 << k or k < 3:
        raise GroupError("generalized quaternion groups have order 2^k with k >= 3")
    return _renamed(dicyclic(order // 4), f"Q{order}")


def _renamed(g: GroupTable, name: str) -> GroupTable:
    return GroupTable(g.mul, name=name, element_names=g.element_names, check_associativity=False)


def quotient(g: GroupTable, n: Subgroup) -> GroupTable:
    """``G/N`` for normal ``N``; each coset is labelled by its least element, in increasing order."""
    if not g.is_normal(n):
        raise GroupError("quotient by a non-normal subgroup")
    els = n.elements(g.order)
    rep = np.min(g.mul[:, els], axis=1)
    reps = np.unique(rep)
    label = np.empty(g.order, dtype=np.int64)
    label[reps] = np.arange(len(reps))
    label = label[rep]
    mul = label[g.mul[np.ix_(reps, reps)]]
    return GroupTable(mul, name=f"{g.name}/N")


def central_product(g: GroupTable, h: GroupTable, zg: int, zh: int) -> GroupTable:
    """``G x H`` modulo ``<(zg, zh^-1)>``; ``zg`` and ``zh`` central of the same order."""
    d = direct_product(g, h)
    z = zg + g.order * int(h.inv[zh])
    return quotient(d, d.cyclic_subgroup(z))


def heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over ``Z_p``; ``(x, y, z)`` at ``x + p*y + p^2*z``.

    ``(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x*y')``.
    """
    if not is_prime(p):
        raise GroupError("heisenberg needs a prime")
    idx = np.arange(p ** 3)
    x, y, z = idx % p, (idx // p) % p, idx // (p * p)
    mul = ((x[:, None] + x[None, :]) % p
           + p * ((y[:, None] + y[None, :]) % p)
           + p * p * ((z[:, None] + z[None, :] + x[:, None] * y[None, :]) % p))
    return GroupTable(mul, name=f"heis:{p}")


EXTRASPECIAL_KINDS = {2: ("d", "q"), "odd": ("p", "p2")}


def extraspecial(p: int, n: int, kind: str) -> GroupTable:
    """Extraspecial group of order ``p^n`` (``n`` odd, ``n >= 3``).

    Built as a central product of ``(n-1)/2`` blocks of order ``p^3``.
    For ``p = 2``: kind ``"d"`` uses only dihedral blocks ``D8`` and kind
    ``"q"`` replaces one block by ``Q8``. For odd ``p``: kind ``"p"`` uses
    Heisenberg blocks (exponent ``p``) and kind ``"p2"`` replaces one block
    by ``Z_{p^2} x| Z_p`` (exponent ``p^2``).
    """
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if n < 3 or n % 2 == 0:
        raise GroupError("extraspecial groups have order p^n with n odd and n >= 3")
    kinds = EXTRASPECIAL_KINDS[2] if p == 2 else EXTRASPECIAL_KINDS["odd"]
    if kind not in kinds:
        raise GroupError(f"kind must be one of {kinds} for p = {p}")
    if p == 2:
        plain, special = dihedral(4), dicyclic(2)
    else:
        plain, special = heisenberg(p), semidirect_by_automorphism([p * p], [1 + p], p)
    blocks = [plain] * ((n - 1) // 2)
    if kind == kinds[1]:
        blocks[-1] = special
    g = blocks[0]
    for b in blocks[1:]:
        g = central_product(g, b, _center_generator(g), _center_generator(b))
    return _renamed(g, f"xsp:{p},{n},{kind}")


def _center_generator(g: GroupTable) -> int:
    z = g.center.elements(g.order)
    if len(z) < 2:
        raise GroupError("trivial center")
    return int(z[1])
