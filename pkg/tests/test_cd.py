import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdlattice.cd import (GENERAL, CDLattice, LatticeShape, cd_lattice, cgz_predicate, classify_shape,
                          hasse_edges, is_complemented, is_modular, lattice_violations, max_self_centralizing,
                          measure, meet_join_tables)
from cdlattice.constructors import abelian, dicyclic, extraspecial
from cdlattice.group import GroupTable, Subgroup
from cdlattice.groupspec import build_group
from cdlattice.subgroups import all_subgroups

import brute

SPECS = ["ab:2,2", "ab:6", "dic:1", "dic:2", "dic:3", "dic:4", "dih:4", "dih:6", "heis:3", "gdic:2,4",
         "sdp:2,2;2,3;3", "sdp:5;2;4", "sdih:16", "quat:16", "prod:dic:2*ab:3", "xsp:2,5,d"]


def _elements(g, h):
    return frozenset(h.elements(g.order).tolist())


# -- measure -----------------------------------------------------------------------------------

def test_measure_of_whole_group():
    g = dicyclic(5)
    assert measure(g, g.whole) == g.order * g.center.order


def test_measure_dic12_cyclic_part():
    g = dicyclic(3)
    assert measure(g, g.cyclic_subgroup(1)) == 36


def test_measure_quaternion_cyclic_subgroup():
    g = dicyclic(2)
    assert measure(g, g.cyclic_subgroup(1)) == 16


# -- cd_lattice ---------------------------------------------------------------------------------

def test_abelian_singleton():
    g = abelian([2, 6])
    lat = cd_lattice(g)
    assert [h.bits for h in lat.members] == [g.whole.bits]
    assert lat.m_star == g.order ** 2
    assert lat.shape == LatticeShape.chain(0)


def test_quaternion_quasi_antichain():
    g = dicyclic(2)
    lat = cd_lattice(g)
    assert lat.m_star == 16
    assert [h.order for h in lat.members] == [2, 4, 4, 4, 8]
    assert lat.shape == LatticeShape.quasi_antichain(3)
    assert lat.bottom == g.center and lat.top == g.whole


def test_dic12_singleton_cyclic():
    g = dicyclic(3)
    lat = cd_lattice(g)
    assert lat.members == [g.cyclic_subgroup(1)]
    assert lat.m_star == 36 and lat.shape == LatticeShape.chain(0)


@pytest.mark.parametrize("spec", [s for s in SPECS if build_group(s).order <= 16])
def test_cd_matches_brute_force(spec):
    g = build_group(spec)
    mul = brute.table(g)
    best, members = brute.cd_members(mul, brute.all_subgroups_by_subsets(mul))
    lat = cd_lattice(g)
    assert lat.m_star == best
    assert {_elements(g, h) for h in lat.members} == members


@pytest.mark.parametrize("spec", SPECS)
def test_cd_matches_generator_brute_force(spec):
    g = build_group(spec)
    mul = brute.table(g)
    best, members = brute.cd_members(mul, brute.all_subgroups_by_generators(mul))
    lat = cd_lattice(g)
    assert lat.m_star == best
    assert {_elements(g, h) for h in lat.members} == members


@pytest.mark.parametrize("spec", SPECS)
def test_lattice_invariants(spec):
    g = build_group(spec)
    subs = all_subgroups(g)
    lat = cd_lattice(g, subs)
    assert lattice_violations(lat) == []
    assert lat.m_star >= g.order * g.center.order
    for h in subs:
        m = measure(g, h)
        assert m <= lat.m_star
        assert (m == lat.m_star) == (h in lat)
    for h in lat.members:
        c = lat.centralizer(h)
        assert c in lat and lat.centralizer(c) == h
        assert measure(g, c) == measure(g, h)


def test_violations_are_reported():
    g = dicyclic(2)
    lat = cd_lattice(g)
    fake = CDLattice(group=g, members=lat.members[:-1], m_star=lat.m_star, measures={}, hasse=[],
                     minimum=0, maximum=3, shape=GENERAL, table=lat.table)
    assert lattice_violations(fake)


# -- Hasse diagram and shape -----------------------------------------------------------------------

@pytest.mark.parametrize("spec", SPECS)
def test_hasse_edges_are_covers(spec):
    g = build_group(spec)
    members = all_subgroups(g).subgroups
    edges = set(hasse_edges(members))
    expected = set()
    for i, j in itertools.permutations(range(len(members)), 2):
        if members[i] < members[j] and not any(members[i] < members[k] < members[j] for k in range(len(members))):
            expected.add((i, j))
    assert edges == expected


def test_shape_singleton_and_chain():
    a, b, c = (Subgroup(x) for x in (0b1, 0b11, 0b1111))
    assert classify_shape([a]) == LatticeShape.chain(0)
    assert classify_shape([a, b]) == LatticeShape.chain(1)
    assert classify_shape([a, b, c]) == LatticeShape.chain(2)


def test_shape_extraspecial_general():
    lat = cd_lattice(extraspecial(2, 5, "q"))
    assert len(lat) == 67 and lat.shape == GENERAL


def test_shape_needs_unique_extremes():
    # two incomparable elements only: no unique min or max
    assert classify_shape([Subgroup(0b01), Subgroup(0b10)]) == GENERAL


def _random_poset(rng, k):
    return [frozenset(rng.sample(range(6), rng.randint(0, 6))) for _ in range(k)]


@given(st.integers(0, 10_000), st.integers(1, 8))
def test_shape_invariant_under_relabeling(seed, k):
    rng = random.Random(seed)
    items = list(set(_random_poset(rng, k)))
    shape = classify_shape(items)
    perm = items[:]
    rng.shuffle(perm)
    assert classify_shape(perm) == shape
    # relabel the ground set as well
    relabel = dict(zip(range(6), rng.sample(range(100, 106), 6)))
    assert classify_shape([frozenset(relabel[x] for x in s) for s in perm]) == shape


def test_modular_and_complemented_tables():
    # diamond M3: 0 < a, b, c < 1
    meet = np.array([[0, 0, 0, 0, 0], [0, 1, 0, 0, 1], [0, 0, 2, 0, 2], [0, 0, 0, 3, 3], [0, 1, 2, 3, 4]])
    join = np.array([[0, 1, 2, 3, 4], [1, 1, 4, 4, 4], [2, 4, 2, 4, 4], [3, 4, 4, 3, 4], [4, 4, 4, 4, 4]])
    m3 = [Subgroup(b) for b in (0b0001, 0b0011, 0b0101, 0b1001, 0b1111)]
    assert is_modular(m3, meet, join)
    assert is_complemented(meet, join, 0, 4)
    # pentagon N5: 0 < a < b < 1, 0 < c < 1
    n5 = [Subgroup(b) for b in (0b0001, 0b0011, 0b0111, 0b1001, 0b1111)]
    meet = np.array([[0, 0, 0, 0, 0], [0, 1, 1, 0, 1], [0, 1, 2, 0, 2], [0, 0, 0, 3, 3], [0, 1, 2, 3, 4]])
    join = np.array([[0, 1, 2, 3, 4], [1, 1, 2, 4, 4], [2, 2, 2, 4, 4], [3, 4, 4, 3, 4], [4, 4, 4, 4, 4]])
    assert not is_modular(n5, meet, join)
    # a chain of length 2 is modular but not complemented
    chain = [Subgroup(b) for b in (0b1, 0b11, 0b111)]
    meet = np.array([[0, 0, 0], [0, 1, 1], [0, 1, 2]])
    join = np.array([[0, 1, 2], [1, 1, 2], [2, 2, 2]])
    assert is_modular(chain, meet, join) and not is_complemented(meet, join, 0, 2)


def test_meet_join_tables_quaternion():
    lat = cd_lattice(dicyclic(2))
    meet, join = meet_join_tables(lat)
    assert (meet == meet.T).all() and (join == join.T).all()
    assert meet[1, 2] == lat.minimum and join[1, 2] == lat.maximum


# -- self-centralizing subgroups and CGZ ------------------------------------------------------------

def test_max_self_centralizing_abelian_is_whole():
    g = abelian([3, 3])
    assert max_self_centralizing(g, all_subgroups(g)) == g.whole


@pytest.mark.parametrize("n", range(2, 9))
def test_max_self_centralizing_dicyclic(n):
    g = dicyclic(n)
    a = max_self_centralizing(g, all_subgroups(g))
    assert a.order == 2 * n
    if n > 2:
        assert a == g.cyclic_subgroup(1)


def test_max_self_centralizing_extraspecial():
    for kind in ("d", "q"):
        g = extraspecial(2, 5, kind)
        a = max_self_centralizing(g, all_subgroups(g))
        assert a.order == 8 and g.is_abelian_subgroup(a)


def test_max_self_centralizing_tie_break_is_first_in_order():
    g = dicyclic(2)
    subs = all_subgroups(g)
    a = max_self_centralizing(g, subs)
    order4 = [h for h in subs if h.order == 4]
    assert a == order4[0]


def _cgz_brute(g):
    mul = brute.table(g)
    for h in brute.all_subgroups_by_generators(mul):
        if brute.centralizer(mul, h) >= h:
            continue  # abelian
        zh = brute.centralizer(mul, h) & h
        if brute.centralizer(mul, h) != zh:
            return False
    return True


@pytest.mark.parametrize("spec", ["ab:2,2", "dic:2", "quat:16", "dic:3", "dih:4", "heis:3", "prod:dic:2*ab:3"])
def test_cgz_predicate_matches_brute_force(spec):
    g = build_group(spec)
    assert cgz_predicate(g, all_subgroups(g)) == _cgz_brute(g)


def test_cgz_examples():
    assert cgz_predicate(abelian([4]), all_subgroups(abelian([4])))
    q = dicyclic(2)
    assert cgz_predicate(q, all_subgroups(q))


# -- lattice properties under random relabelling of the elements -------------------------------------

def _relabel(g, perm):
    """Table of ``g`` with element x renamed perm[x] (perm[0] == 0)."""
    n = g.order
    mul = np.empty((n, n), dtype=np.int64)
    mul[np.ix_(perm, perm)] = perm[np.asarray(g.mul, dtype=np.int64)]
    return GroupTable(mul, check_associativity=False)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.randoms(use_true_random=False))
def test_lattice_properties_under_relabelling(spec, rng):
    g = build_group(spec)
    perm = np.array([0] + rng.sample(range(1, g.order), g.order - 1))
    h = _relabel(g, perm)
    lat, lat2 = cd_lattice(g), cd_lattice(h)
    # measure constant on members, closure, modularity
    assert lattice_violations(lat2) == []
    assert lat2.m_star == lat.m_star and lat2.shape == lat.shape
    image = {frozenset(perm[list(_elements(g, m))].tolist()) for m in lat.members}
    assert image == {_elements(h, m) for m in lat2.members}
    # self-duality: H -> C(H) is an order-reversing involution of the members
    for a in lat2.members:
        ca = lat2.centralizer(a)
        assert ca in lat2 and lat2.centralizer(ca) == a
        for b in lat2.members:
            if a <= b:
                assert lat2.centralizer(b) <= ca
