import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdlattice.abelian_types import abelian_types, invariant_factors, subgroup_type
from cdlattice.constructors import (AbelianSpec, abelian, central_product, dicyclic, dihedral, direct_product,
                                    extraspecial, generalized_dicyclic, generalized_quaternion, heisenberg,
                                    quotient, semidihedral, semidirect_by_automorphism, semidirect_product)
from cdlattice.group import GroupError

import brute


# -- abelian ----------------------------------------------------------------------------

def test_abelian_cyclic_generator_at_index_1():
    g = abelian([4])
    assert g.order == 4 and g.element_orders[1] == 4


def test_abelian_z2_z4():
    g = abelian([2, 4])
    assert g.order == 8 and g.exponent == 4 and g.is_abelian


def test_abelian_elementary_squares_trivial():
    a = AbelianSpec([2, 2, 2])
    assert a.exponent == 2
    assert all(a.add[x, x] == 0 for x in range(8))


def test_abelian_spec_rejects_factor_1():
    with pytest.raises(GroupError):
        AbelianSpec([1, 2])


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_abelian_type_recovered_from_table(factors):
    g = abelian(factors)
    assert subgroup_type(g, g.whole) == invariant_factors(factors)
    assert g.order == int(np.prod(factors))


def test_abelian_type_counts():
    # number of abelian groups of order p^k is the partition number of k
    assert len(abelian_types(16)) == 5
    assert len(abelian_types(32)) == 7
    assert len(abelian_types(24)) == 3
    assert abelian_types(1) == [()]


# -- dicyclic ------------------------------------------------------------------------------

def test_dicyclic_1_is_cyclic_of_order_4():
    g = dicyclic(1)
    assert g.order == 4 and g.is_abelian and g.exponent == 4


def test_dicyclic_2_is_quaternion():
    g = dicyclic(2)
    assert g.order == 8 and g.center.order == 2
    assert sorted(np.bincount(g.element_orders)[1:].tolist()) == [0, 1, 1, 6]  # 1 of order 1 and 2, 6 of order 4


def test_dicyclic_3_cyclic_index_2_self_centralizing():
    g = dicyclic(3)
    a = g.cyclic_subgroup(1)
    assert g.order == 12 and a.order == 6 and g.centralizer(a) == a


def test_dicyclic_rejects_zero():
    with pytest.raises(GroupError):
        dicyclic(0)


@pytest.mark.parametrize("n", range(1, 13))
def test_dicyclic_equals_generalized_over_cyclic(n):
    a = AbelianSpec([2 * n])
    assert np.array_equal(dicyclic(n).mul, generalized_dicyclic(a, n).mul)


# -- generalized dicyclic ------------------------------------------------------------------

def test_generalized_dicyclic_elementary_is_abelian():
    a = AbelianSpec([2, 2])
    for t in a.involutions():
        assert generalized_dicyclic(a, t).is_abelian


def test_generalized_dicyclic_z2_z4():
    a = AbelianSpec([2, 4])
    t = int(a.add[a.unit(1), a.unit(1)])  # square of the order-4 generator
    g = generalized_dicyclic(a, t)
    assert g.order == 16 and not g.is_abelian
    assert g.order // g.center.order == 4


@pytest.mark.parametrize("factors, t", [([2, 4], 0), ([6], 1), ([3], 0)])
def test_generalized_dicyclic_rejects_bad_t(factors, t):
    with pytest.raises(GroupError):
        generalized_dicyclic(AbelianSpec(factors), t)


def _all_gdic():
    for order in range(2, 33, 2):
        for inv in abelian_types(order):
            a = AbelianSpec(inv)
            for t in a.involutions():
                yield a, t


def test_generalized_dicyclic_center_formula():
    # Z = {a in A : a^2 = 1} whenever exp(A) != 2, for every |A| <= 32 and every involution t
    count = 0
    for a, t in _all_gdic():
        if a.exponent == 2:
            continue
        g = generalized_dicyclic(a, t)
        omega = {x for x in range(a.order) if a.add[x, x] == 0}
        assert set(g.center.elements(g.order).tolist()) == omega
        squares = {int(a.add[x, x]) for x in range(a.order)}
        assert len(omega) == a.order // len(squares)
        count += 1
    assert count == 86


def test_generalized_dicyclic_relations_brute_force():
    a = AbelianSpec([2, 6])
    t = a.involutions()[1]
    g = generalized_dicyclic(a, t)
    mul = brute.table(g)
    x = a.order
    assert mul[x][x] == t
    assert brute.order_of(mul, x) == 4
    xinv = next(y for y in range(g.order) if mul[x][y] == 0)
    for e in range(a.order):
        assert mul[mul[xinv][e]][x] == int(a.neg[e])


# -- semidirect products ------------------------------------------------------------------

def test_semidirect_inversion_gives_dihedral_10():
    g = semidirect_by_automorphism([5], [4], 2)
    assert g.order == 10 and not g.is_abelian
    assert g.center.order == 1
    assert np.array_equal(g.mul, dihedral(5).mul)


def test_semidirect_order3_on_klein_four_gives_a4_shape():
    g = semidirect_by_automorphism([2, 2], [2, 3], 3)
    assert g.order == 12 and g.derived_subgroup.order == 4 and g.center.order == 1


def test_semidirect_identity_k1_is_abelian():
    g = semidirect_by_automorphism([3, 3], [1, 3], 1)
    assert np.array_equal(g.mul, abelian([3, 3]).mul)


@pytest.mark.parametrize("factors, images, k", [
    ([5], [2], 2),        # 2 has order 4 mod 5, not dividing 2
    ([4], [2], 2),        # not a bijection
    ([2, 2], [1, 1], 2),  # not a bijection
    ([3], [2], 1),        # k = 1 needs the identity map
    ([6], [1, 2], 2),     # wrong number of images
])
def test_semidirect_rejects_invalid_maps(factors, images, k):
    with pytest.raises(GroupError):
        semidirect_by_automorphism(factors, images, k)


def test_semidirect_product_two_generators():
    # Z7 x| (Z3 x Z2) with the Z2 factor acting trivially
    g = semidirect_product([7], [3, 2], [[2], [1]])
    assert g.order == 42 and g.center.order == 2


def test_semidirect_product_rejects_noncommuting():
    with pytest.raises(GroupError):
        semidirect_product([2, 2], [2, 2], [[2, 1], [1, 3]])


# -- other families --------------------------------------------------------------------------

def test_dihedral_semidihedral_quaternion_maximal_class():
    for k in (16, 32, 64):
        for g in (dihedral(k // 2), semidihedral(k), generalized_quaternion(k)):
            assert g.order == k
            assert g.predicates.is_maximal_class
            assert g.center.order == 2


def test_semidihedral_class():
    assert semidihedral(16).predicates.nilpotency_class == 3


def test_direct_product_indexing():
    g = direct_product(dicyclic(2), abelian([3]))
    assert g.order == 24
    assert g.mul[1, 8] == 1 + 8  # (a, 0)(0, 1) = (a, 1)


def test_quotient_by_center_of_quaternion():
    q = dicyclic(2)
    assert quotient(q, q.center).is_abelian
    with pytest.raises(GroupError):
        quotient(dihedral(4), dihedral(4).cyclic_subgroup(4))


def test_heisenberg_exponent():
    g = heisenberg(3)
    assert g.order == 27 and g.exponent == 3 and g.center.order == 3


@pytest.mark.parametrize("p, n, kind", [(2, 3, "q"), (2, 3, "d"), (2, 5, "d"), (2, 5, "q"),
                                        (3, 3, "p"), (3, 3, "p2"), (3, 5, "p")])
def test_extraspecial_structure(p, n, kind):
    g = extraspecial(p, n, kind)
    assert g.order == p ** n
    z = g.center
    assert z.order == p
    assert g.derived_subgroup == z
    # G/Z elementary abelian: every p-th power and every commutator lies in Z
    zs = set(z.elements(g.order).tolist())
    assert all(g.power(x, p) in zs for x in range(g.order))


def test_extraspecial_kinds_differ():
    assert extraspecial(2, 3, "q").predicates.is_maximal_class
    assert np.bincount(extraspecial(2, 3, "q").element_orders)[2] == 1
    assert np.bincount(extraspecial(2, 3, "d").element_orders)[2] == 5
    assert extraspecial(3, 3, "p").exponent == 3
    assert extraspecial(3, 3, "p2").exponent == 9


@pytest.mark.parametrize("p, n, kind", [(2, 4, "d"), (2, 5, "p"), (3, 5, "q"), (4, 3, "d")])
def test_extraspecial_rejects(p, n, kind):
    with pytest.raises(GroupError):
        extraspecial(p, n, kind)


def test_central_product_of_two_quaternions_has_order_32():
    q = dicyclic(2)
    z = int(q.center.elements(8)[1])
    g = central_product(q, q, z, z)
    assert g.order == 32 and g.center.order == 2
