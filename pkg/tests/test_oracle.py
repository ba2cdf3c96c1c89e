import json

import pytest

from cdlattice import oracle
from cdlattice.constructors import AbelianSpec, abelian, dicyclic, extraspecial, heisenberg
from cdlattice.groupspec import build_group
from cdlattice.oracle import (FAIL, NA, PASS, analyze, check_consistency, check_corollary_2_2,
                              check_corollary_3_2, check_corollary_3_4, check_corollary_4_2, check_lemma_1_2,
                              check_lemma_1_3, check_lemmas, check_proposition_3_5, check_theorem_2_1,
                              check_theorem_3_1, check_theorem_3_3, check_theorem_4_1, cor_3_4_witness)


@pytest.fixture(scope="module")
def g729():
    return build_group("fp:sg_729_99.pres")


@pytest.fixture(scope="module")
def g3125():
    return build_group("fp:maxclass_p5_3125.pres")


# -- index classification ------------------------------------------------------------------------

def test_thm21_quaternion_item2():
    r = check_theorem_2_1(dicyclic(2))
    assert (r.theorem, r.verdict) == ("Thm2.1-2", PASS)
    assert r.details["p"] == 2 and r.details["shape"] == "quasi_antichain(width 3)"


def test_thm21_dic20_smallest_prime_item3():
    r = check_theorem_2_1(dicyclic(5))
    assert (r.theorem, r.verdict) == ("Thm2.1-3sp", PASS)
    assert r.details["center_index"] == 10


def test_thm21_extraspecial_item4b():
    r = check_theorem_2_1(extraspecial(2, 5, "q"))
    assert (r.theorem, r.verdict) == ("Thm2.1-4b", PASS)
    assert (r.details["n"], r.details["m"]) == (15, 34)


def test_thm21_abelian_item1():
    assert check_theorem_2_1(abelian([2, 3])).theorem == "Thm2.1-1"


def test_thm21_not_applicable():
    # S3 x S3 style: |G:A| = 4 is not a prime power of a prime that matches |G:Z|
    g = build_group("prod:dih:3*dih:3")
    r = check_theorem_2_1(g)
    assert r.verdict in (NA, PASS)
    if r.verdict == NA:
        assert not r.hypothesis_matched


def test_thm21_case_b_and_a_presentations(g729, g3125):
    assert check_theorem_2_1(g729).theorem == "Thm2.1-4c"
    r = check_theorem_2_1(g3125)
    assert r.theorem == "Thm2.1-4b" and r.verdict == PASS
    assert r.details["n"] >= 1 and r.details["m"] >= r.details["p"]


def test_wrong_prediction_fails():
    an = analyze(dicyclic(3))
    r = oracle._compare("probe", an, [an.subs.canonical(an.group.whole)], "CD = {G}")
    assert r.verdict == FAIL and r.details["missing_orders"] == [12] and r.details["extra_orders"] == [6]


# -- uniqueness corollary --------------------------------------------------------------------------

def test_cor22_dic12(g729):
    r = check_corollary_2_2(dicyclic(3))
    assert r.theorem.startswith("Cor2.2-1") and r.verdict == PASS and r.details["count"] == 1
    r = check_corollary_2_2(g729)
    assert r.theorem == "Cor2.2-2" and r.verdict == PASS and r.details["count"] == 1
    assert check_corollary_2_2(abelian([4])).verdict == NA


# -- dicyclic families -------------------------------------------------------------------------------

def test_thm31_examples():
    r = check_theorem_3_1([6])
    assert (r.theorem, r.verdict) == ("Thm3.1-a", PASS) and r.details["members"] == 1
    r = check_theorem_3_1([2, 4])
    assert (r.theorem, r.verdict) == ("Thm3.1-b", PASS) and r.details["shape"] == "quasi_antichain(width 3)"
    r = check_theorem_3_1([2, 2])
    assert (r.theorem, r.verdict) == ("Thm3.1-a", PASS)


def test_thm31_cyclic_z4_is_case_b():
    assert check_theorem_3_1([4]).theorem == "Thm3.1-b"


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_cor32(n):
    r = check_corollary_3_2(n)
    assert r.verdict == PASS
    assert r.theorem == ("Cor3.2-b" if n == 2 else "Cor3.2-a")


# -- coprime semidirect products ----------------------------------------------------------------------

def test_thm33_examples():
    r = check_theorem_3_3([5], [4], [[2]])
    assert r.verdict == PASS and r.details["m_star"] == 25 and r.details["C_B_order"] == 1
    r = check_theorem_3_3([7], [3], [[1]])
    assert r.verdict == PASS and r.details["m_star"] == 441 and r.details["C_B_order"] == 3
    r = check_theorem_3_3([3, 3], [2], [[2, 3]])  # inverts the first factor only
    assert r.verdict == PASS and r.details["m_star"] == 81


def test_thm33_rejects_non_coprime():
    with pytest.raises(ValueError):
        check_theorem_3_3([4], [2], [[3]])


# -- abelian groups as singleton lattices --------------------------------------------------------------

def test_cor34_witness_kinds():
    assert cor_3_4_witness([5])[0] == "inversion"
    kind, g = cor_3_4_witness([2, 2])
    assert kind == "order-3 automorphism" and g.order == 12
    assert cor_3_4_witness([6])[0] == "generalized dicyclic"
    assert cor_3_4_witness([2, 2, 4])[0] == "order-3 automorphism"
    for bad in ([2], [4], [4, 2]):
        with pytest.raises(ValueError):
            cor_3_4_witness(bad)


def test_cor34_sweep_small():
    reports = check_corollary_3_4(8, corpus=[dicyclic(2), dicyclic(3), abelian([4])])
    assert all(r.verdict == PASS for r in reports)
    neg = [r for r in reports if r.theorem == "Cor3.4-neg"]
    assert {r.group for r in neg} == {"Z2", "Z4", "Z2xZ4"}
    assert all(r.corpus_limited for r in neg)


# -- central direct factors -------------------------------------------------------------------------------

@pytest.mark.parametrize("h, z, members", [("dic:2", [3], 5), ("dic:3", [5], 1), ("ab:2,2", [3], 1)])
def test_prop35(h, z, members):
    r = check_proposition_3_5(build_group(h), z)
    assert r.verdict == PASS and r.details["members"] == members


# -- maximal class ---------------------------------------------------------------------------------------------

def test_thm41_examples(g729):
    r = check_theorem_4_1(heisenberg(3))
    assert (r.theorem, r.verdict) == ("Thm4.1-1", PASS) and r.details["shape"] == "quasi_antichain(width 4)"
    r = check_theorem_4_1(dicyclic(4))
    assert (r.theorem, r.verdict) == ("Thm4.1-2", PASS)
    r = check_theorem_4_1(g729)
    assert (r.theorem, r.verdict) == ("Thm4.1-3b", PASS)
    orders = sorted(h.order for h in analyze(g729).lattice.members)
    assert orders == [27, 81, 81, 81, 81, 243]


def test_thm41_case_a(g3125):
    r = check_theorem_4_1(g3125)
    assert (r.theorem, r.verdict) == ("Thm4.1-3a", PASS) and r.details["members"] == 10


def test_thm41_not_applicable():
    assert check_theorem_4_1(dicyclic(3)).verdict == NA
    assert check_theorem_4_1(extraspecial(2, 5, "d")).verdict == NA


def test_cor42(g729):
    r = check_corollary_4_2(dicyclic(4))
    assert r.verdict == PASS and r.details["chain0"] and r.corpus_limited
    r = check_corollary_4_2(g729)
    assert r.verdict == PASS and not r.details["chain0"]


def test_consistency(g729, g3125):
    for g in (dicyclic(2), dicyclic(4), heisenberg(5), g729, g3125):
        assert check_consistency(g).verdict == PASS
    assert check_consistency(dicyclic(3)).verdict == NA


# -- lemmas -----------------------------------------------------------------------------------------------------

def test_lemmas(g729, g3125):
    reports = check_lemmas([dicyclic(4), g729, g3125, heisenberg(3)])
    ids = [(r.theorem, r.group) for r in reports]
    assert ("Lem1.1", "dic:4") in ids
    assert all(r.verdict != FAIL for r in reports)
    r = check_lemma_1_2(g729)
    assert r.verdict == PASS and set(r.details["normal_counts"].values()) == {1}
    r = check_lemma_1_3(g3125)
    assert r.verdict == PASS and r.details["order_counts"] == {5: 1, 25: 1, 125: 6, 625: 1, 3125: 1}


def test_lemma_12_not_applicable():
    assert check_lemma_1_2(dicyclic(3)).verdict == NA


# -- reports ---------------------------------------------------------------------------------------------------

def test_reports_serialize_and_pass_implies_match(g729):
    reports = [check_theorem_2_1(g729), check_theorem_4_1(g729), check_corollary_3_2(5),
               check_theorem_4_1(dicyclic(3))]
    for r in reports:
        json.dumps(r.to_dict())
        if r.verdict == PASS:
            assert r.hypothesis_matched
        assert r.verdict in r.line().lower()


def test_report_deterministic():
    a = check_theorem_3_1(AbelianSpec([2, 6])).to_dict()
    b = check_theorem_3_1(AbelianSpec([2, 6])).to_dict()
    assert a == b
