"""Executable checks of the classification theorems for CD lattices.

Every check computes the hypothesis quantities by brute force (never from
the constructor that produced the group), builds the predicted member set
as concrete subgroups, and compares it with :func:`cd.cd_lattice` by exact
bit-vector set equality.

Report ids are short tags naming the statement and item checked, e.g.
``"Thm2.1-4b"``; a ``sp`` suffix marks the smallest-prime variant of an
item. Negative-direction checks that can only be run against a finite
list of groups carry ``corpus_limited=True``.

Groups satisfying ``C_G(H) = Z(H)`` for every non-abelian ``H`` (CGZ
groups) are detected by :func:`cd.cgz_predicate`; the classification that
uses this property needs orders ``p^n`` with ``n > 2p``, beyond the range
of a full subgroup enumeration, so it has no check here.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterable, Sequence

import numpy as np

from .abelian_types import abelian_types, invariant_factors, is_elementary_2, is_z2m_times_z4, subgroup_type
from .cd import CDLattice, MeasureTable, cd_lattice, classify_shape, max_self_centralizing, self_centralizing_of_max_order
from .constructors import (AbelianSpec, abelian, dicyclic, direct_product, generalized_dicyclic,
                           semidirect_by_automorphism, semidirect_product)
from .group import GroupTable, Subgroup, exact_log, prime_power_decomposition, smallest_prime_divisor
from .subgroups import DEFAULT_MAX_SUBGROUPS, SubgroupSet, all_subgroups

PASS, FAIL, NA = "pass", "fail", "not-applicable"

# subgroup-count cap used by :func:`analyze`
MAX_SUBGROUPS = DEFAULT_MAX_SUBGROUPS


@dataclass
class TheoremReport:
    theorem: str
    group: str
    hypothesis_matched: bool
    prediction: str
    verdict: str
    details: dict[str, Any] = field(default_factory=dict)
    corpus_limited: bool = False

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "group": self.group,
            "hypothesis_matched": self.hypothesis_matched,
            "prediction": self.prediction,
            "verdict": self.verdict,
            "corpus_limited": self.corpus_limited,
            "details": _jsonable(self.details),
        }

    def line(self) -> str:
        flag = " [corpus-limited]" if self.corpus_limited else ""
        return f"{self.verdict.upper():15s} {self.theorem:14s} {self.group:28s} {self.prediction}{flag}"


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def not_applicable(theorem: str, g: GroupTable | str, reason: str) -> TheoremReport:
    name = g if isinstance(g, str) else g.name
    return TheoremReport(theorem, name, False, "-", NA, {"reason": reason})


# ---- cached per-group analysis ------------------------------------------------------

class GroupAnalysis:
    """Subgroups, measures and CD lattice of one group, computed once."""

    def __init__(self, g: GroupTable, workers: int = 1):
        self.group = g
        self.subs: SubgroupSet = all_subgroups(g, workers=workers, max_subgroups=MAX_SUBGROUPS)
        self.lattice: CDLattice = cd_lattice(g, self.subs)
        self.table: MeasureTable = self.lattice.table
        self.center = self.subs.canonical(g.center)
        self.A = max_self_centralizing(g, self.subs, self.table)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def center_index(self) -> int:
        return self.order // self.center.order

    @property
    def members(self) -> frozenset[int]:
        return self.lattice.member_set

    def center_of(self, h: Subgroup) -> Subgroup:
        i = self.subs.index(h)
        return self.subs.canonical(Subgroup(h.bits & self.table.centralizer_bits[i]))

    def centralizer_order(self, h: Subgroup) -> int:
        return int(self.table.centralizer_orders[self.subs.index(h)])

    def is_abelian(self, h: Subgroup) -> bool:
        return self.table.is_abelian(self.subs.index(h))

    def of_index(self, k: int) -> list[Subgroup]:
        return self.subs.of_order(self.order // k) if self.order % k == 0 else []

    def interval(self, lo: Subgroup, hi: Subgroup) -> list[Subgroup]:
        return [h for h in self.subs if lo <= h <= hi]

    def t_candidates(self, p: int) -> list[Subgroup]:
        """Subgroups ``T`` of index ``p`` whose center has index ``p^3`` in ``G``."""
        return [t for t in self.of_index(p) if self.order // self.center_of(t).order == p ** 3]


_cache: "weakref.WeakKeyDictionary[GroupTable, GroupAnalysis]" = weakref.WeakKeyDictionary()


def analyze(g: GroupTable, workers: int = 1) -> GroupAnalysis:
    a = _cache.get(g)
    if a is None:
        a = _cache[g] = GroupAnalysis(g, workers)
    return a


def _compare(report_id: str, an: GroupAnalysis, predicted: Iterable[Subgroup], prediction: str,
             extra_failures: Sequence[str] = (), **details) -> TheoremReport:
    """Exact set comparison of a predicted member list against the computed lattice."""
    pred = {h.bits: h for h in predicted}
    got = an.members
    missing = sorted(an.subs.canonical(pred[b]).order for b in set(pred) - got)
    extra = sorted(an.subs[an.subs.index_of[b]].order for b in got - set(pred))
    details = dict(details)
    details.update(m_star=an.lattice.m_star, members=len(got), shape=str(an.lattice.shape))
    failures = list(extra_failures)
    if missing or extra:
        failures.append("member set differs")
        details.update(missing_orders=missing, extra_orders=extra)
    if failures:
        details["failures"] = failures
    return TheoremReport(report_id, an.group.name, True, prediction, FAIL if failures else PASS, details)


# ---- general classification by |G:Z(G)| and |G:A| -------------------------------------

def theorem_2_1_branch(an: GroupAnalysis) -> tuple[str, int | None]:
    """The item of the index-based classification that applies, and its prime.

    Returns ``("", None)`` if no hypothesis holds.
    """
    g = an.group
    if g.is_abelian:
        return "1", None
    z = an.center_index
    a = an.order // an.A.order
    sp = smallest_prime_divisor(an.order)
    pz = prime_power_decomposition(z)
    if pz and pz[1] == 2:
        return "2", pz[0]
    pa = prime_power_decomposition(a)
    if pa is None:
        return "", None
    p, k = pa
    iz = exact_log(z, p)
    if k == 1:
        if iz is not None and iz > 2:
            return "3", p
        if p == sp and z > p ** 2:
            return "3sp", p
    elif k == 2:
        has_t = bool(an.t_candidates(p))
        if iz == 3:
            return "4a", p
        if p == sp and p ** 2 < z < p ** 4:
            return "4asp", p
        if iz == 4:
            return "4b", p
        if iz is not None and iz > 4:
            return ("4c" if has_t else "4d"), p
        if p == sp and z > p ** 4:
            return ("4csp" if has_t else "4dsp"), p
    return "", None


def check_theorem_2_1(g: GroupTable, workers: int = 1) -> TheoremReport:
    an = analyze(g, workers)
    item, p = theorem_2_1_branch(an)
    rid = f"Thm2.1-{item}" if item else "Thm2.1"
    z_idx, a_idx = an.center_index, an.order // an.A.order
    base = dict(center_index=z_idx, A_index=a_idx, A_order=an.A.order, smallest_prime=smallest_prime_divisor(an.order))
    if not item:
        return TheoremReport(rid, g.name, False, "-", NA, {"reason": "no hypothesis matches", **base})
    Z, G = an.center, an.subs.canonical(g.whole)
    if item == "1":
        return _compare(rid, an, [G], "CD = {G}", **base)
    if item == "2":
        mids = [h for h in an.interval(Z, G) if h != Z and h != G]
        fails = []
        if len(mids) != p + 1:
            fails.append(f"interval has {len(mids)} middle subgroups, expected {p + 1}")
        if not all(an.is_abelian(h) for h in mids):
            fails.append("a middle member is non-abelian")
        if an.lattice.shape != classify_shape([Z] + mids + [G]) or an.lattice.shape.param != p + 1:
            fails.append(f"shape {an.lattice.shape} is not quasi-antichain of width {p + 1}")
        return _compare(rid, an, [Z, *mids, G], f"quasi-antichain width {p + 1} = [Z(G), G]", fails, p=p, **base)
    if item.startswith("3") or item.startswith("4d"):
        return _compare(rid, an, [an.A], "CD = {A}", p=p, **base)
    if item.startswith("4a"):
        return _compare(rid, an, [Z, G], "CD = {Z(G), G}", p=p, **base)
    if item == "4b":
        ts = an.t_candidates(p)
        order2 = an.order // p ** 2
        others = [h for h in an.subs.of_order(order2)
                  if h != an.A and an.order // an.centralizer_order(h) == p ** 2]
        n, m = len(ts), len(others)
        predicted = [Z, *(an.center_of(t) for t in ts), an.A, *others, *ts, G]
        fails = []
        if n >= 1 and m < p:
            fails.append(f"n = {n} >= 1 but m = {m} < p = {p}")
        return _compare(rid, an, predicted, f"CD = {{Z, Z(T_i), A, A_j, T_i, G}} with n={n}, m={m}",
                        fails, p=p, n=n, m=m, **base)
    # 4c: quasi-antichain [Z(T), T] of width p+1 containing A
    ts = an.t_candidates(p)
    t = ts[0]
    zt = an.center_of(t)
    inner = an.interval(zt, t)
    mids = [h for h in inner if h != zt and h != t]
    fails = []
    if len(ts) != 1:
        fails.append(f"{len(ts)} candidate subgroups T, expected a unique one")
    if an.A not in mids:
        fails.append("A is not strictly between Z(T) and T")
    if len(mids) != p + 1 or not all(an.is_abelian(h) for h in mids):
        fails.append("middle of [Z(T), T] is not p+1 abelian subgroups")
    return _compare(rid, an, inner, f"quasi-antichain width {p + 1} = [Z(T), T]", fails, p=p, T_count=len(ts), **base)


def check_corollary_2_2(g: GroupTable, workers: int = 1) -> TheoremReport:
    """Uniqueness of ``A`` (items 3, 4d) or of ``T`` (item 4c) of the index classification."""
    an = analyze(g, workers)
    item, p = theorem_2_1_branch(an)
    if item.startswith("3"):
        rid, what = "Cor2.2-1" + item[1:], "A"
        count = len(self_centralizing_of_max_order(g, an.subs, an.table))
    elif item.startswith("4c"):
        rid, what = "Cor2.2-2" + item[2:], "T"
        count = len(an.t_candidates(p))
    elif item.startswith("4d"):
        rid, what = "Cor2.2-3" + item[2:], "A"
        count = len(self_centralizing_of_max_order(g, an.subs, an.table))
    else:
        return not_applicable("Cor2.2", g, f"index classification item {item or 'none'}")
    return TheoremReport(rid, g.name, True, f"{what} unique", PASS if count == 1 else FAIL,
                         {"count": count, "p": p})


# ---- dicyclic families -----------------------------------------------------------------

def _a_image(an: GroupAnalysis, size: int) -> Subgroup:
    """The subgroup on element indices ``0..size-1`` (the copy of ``A`` in ``A x| ...``)."""
    return an.subs.canonical(an.group.subgroup_from_elements(range(size)))


def check_theorem_3_1(a: AbelianSpec | Sequence[int], t: int | None = None, workers: int = 1) -> TheoremReport:
    a = a if isinstance(a, AbelianSpec) else AbelianSpec(a)
    if t is None:
        t = a.involutions()[0]
    g = generalized_dicyclic(a, t)
    an = analyze(g, workers)
    n2 = a.order
    squares = {int(a.add[x, x]) for x in range(n2)}
    omega = [x for x in range(n2) if a.add[x, x] == 0]
    details: dict[str, Any] = {"A": a.label(), "t": t}
    fails = []
    if a.exponent == 2:
        case, predicted, pred_text = "a", [an.subs.canonical(g.whole)], "chain(0), CD = {G}"
        if not g.is_abelian:
            fails.append("exp(A) = 2 but G is non-abelian")
    else:
        # Z(G) = {a : a^2 = 1}, isomorphic to A/A^2
        zset = set(int(x) for x in an.center.elements(g.order))
        details.update(center_order=an.center.order, A_mod_A2=n2 // len(squares))
        if zset != set(omega):
            fails.append("center is not {a in A : a^2 = 1}")
        if an.center.order != n2 // len(squares):
            fails.append("|Z(G)| != |A/A^2|")
        if is_z2m_times_z4(a.factors):
            case = "b"
            Z, G = an.center, an.subs.canonical(g.whole)
            predicted = an.interval(Z, G)
            pred_text = "quasi-antichain width 3 = [Z(G), G]"
            shape = an.lattice.shape
            if shape.tag != "quasi_antichain" or shape.param != 3:
                fails.append(f"shape {shape} is not quasi-antichain of width 3")
        else:
            case, predicted, pred_text = "a", [_a_image(an, n2)], "chain(0), CD = {A}"
    rep = _compare(f"Thm3.1-{case}", an, predicted, pred_text, fails, **details)
    return rep


def check_corollary_3_2(n: int, workers: int = 1) -> TheoremReport:
    g = dicyclic(n)
    an = analyze(g, workers)
    G = an.subs.canonical(g.whole)
    if n == 2:
        predicted = an.interval(an.center, G)
        fails = [] if (an.lattice.shape.tag, an.lattice.shape.param) == ("quasi_antichain", 3) else ["shape"]
        return _compare("Cor3.2-b", an, predicted, "quasi-antichain width 3 = [Z, G]", fails, n=n)
    if n == 1:
        return _compare("Cor3.2-a", an, [G], "CD = {G}", n=n)
    a = an.subs.canonical(g.cyclic_subgroup(1))
    fails = [] if an.lattice.m_star == (2 * n) ** 2 else [f"m_star {an.lattice.m_star} != {(2 * n) ** 2}"]
    return _compare("Cor3.2-a", an, [a], f"CD = {{<a>}}, m* = {(2 * n) ** 2}", fails, n=n)


# ---- coprime semidirect products ----------------------------------------------------------

def check_theorem_3_3(a: AbelianSpec | Sequence[int], b: AbelianSpec | Sequence[int],
                      actions: Sequence[Sequence[int]], workers: int = 1) -> TheoremReport:
    a = a if isinstance(a, AbelianSpec) else AbelianSpec(a)
    b = b if isinstance(b, AbelianSpec) else AbelianSpec(b)
    if gcd(a.order, b.order) != 1:
        raise ValueError(f"|A| = {a.order} and |B| = {b.order} are not coprime")
    g = semidirect_product(a, b, actions)
    an = analyze(g, workers)
    na = a.order
    A = _a_image(an, na)
    # C_B(A): elements (0, y) commuting with every element of A
    cent = g.centralizer(A)
    cb = [int(x) for x in cent.elements(g.order) if x % na == 0]
    acb = an.subs.canonical(g.generated_subgroup(list(range(na)) + cb))
    expected = na ** 2 * len(cb) ** 2
    fails = [] if an.lattice.m_star == expected else [f"m_star {an.lattice.m_star} != {expected}"]
    return _compare("Thm3.3", an, [acb], f"m* = {expected}, CD = {{A C_B(A)}}", fails,
                    A=a.label(), B=b.label(), C_B_order=len(cb))


# ---- realizing abelian groups as singleton lattices -----------------------------------------

COR_3_4_EXCEPTIONS = ((2,), (4,), (2, 4))


def _order3_automorphism(factors: tuple[int, ...]) -> list[int]:
    """``e1 -> e2, e2 -> e1 + e2`` on the first two ``Z_2`` factors, identity elsewhere."""
    spec = AbelianSpec(factors)
    images = [spec.unit(i) for i in range(len(factors))]
    images[0] = spec.unit(1)
    images[1] = spec.unit(0) + spec.unit(1)
    return images


def cor_3_4_witness(factors: Sequence[int]) -> tuple[str, GroupTable]:
    """The non-abelian group ``G`` with ``CD(G) = {A}`` prescribed for ``A`` of the given type."""
    inv = invariant_factors(factors)
    if inv in COR_3_4_EXCEPTIONS or not inv:
        raise ValueError(f"no witness exists for type {inv}")
    spec = AbelianSpec(inv)
    if spec.order % 2:
        return "inversion", semidirect_by_automorphism(inv, [int(spec.neg[spec.unit(i)]) for i in range(len(inv))], 2)
    if is_elementary_2(inv) or is_z2m_times_z4(inv, min_m=2):
        return "order-3 automorphism", semidirect_by_automorphism(inv, _order3_automorphism(inv), 3)
    return "generalized dicyclic", generalized_dicyclic(spec, spec.involutions()[0])


def check_corollary_3_4(bound: int, corpus: Iterable[GroupTable] = (), workers: int = 1) -> list[TheoremReport]:
    reports = []
    for order in range(2, bound + 1):
        for inv in abelian_types(order):
            if inv in COR_3_4_EXCEPTIONS:
                continue
            kind, g = cor_3_4_witness(inv)
            an = analyze(g, workers)
            fails = [] if not g.is_abelian else ["witness is abelian"]
            A = _a_image(an, order)
            if subgroup_type(g, A) != inv:
                fails.append("embedded A has the wrong type")
            rep = _compare("Cor3.4", an, [A], f"CD = {{{'x'.join(f'Z{f}' for f in inv)}}}", fails,
                           A=list(inv), witness=kind)
            reports.append(rep)
    corpus = list(corpus)
    for inv in COR_3_4_EXCEPTIONS:
        if int(np.prod(inv)) > bound:
            continue
        hits = []
        for g in corpus:
            an = analyze(g, workers)
            lat = an.lattice
            if g.is_abelian or len(lat) != 1:
                continue
            h = lat.members[0]
            if an.is_abelian(h) and subgroup_type(g, h) == inv:
                hits.append(g.name)
        label = "x".join(f"Z{f}" for f in inv)
        reports.append(TheoremReport(
            "Cor3.4-neg", label, True, f"no non-abelian G in corpus with CD = {{{label}}}",
            PASS if not hits else FAIL, {"corpus_size": len(corpus), "counterexamples": hits},
            corpus_limited=True))
    return reports


# ---- central extensions by a direct factor ------------------------------------------------

def check_proposition_3_5(h: GroupTable, zext: AbelianSpec | Sequence[int], workers: int = 1) -> TheoremReport:
    zext = zext if isinstance(zext, AbelianSpec) else AbelianSpec(zext)
    zg = abelian(zext)
    g = direct_product(h, zg)
    an_h, an_g = analyze(h, workers), analyze(g, workers)
    nh = h.order
    lifted = []
    for x in an_h.lattice.members:
        els = x.elements(nh)
        full = (els[None, :] + nh * np.arange(zg.order)[:, None]).ravel()
        lifted.append(an_g.subs.canonical(g.subgroup_from_elements(full.tolist())))
    fails = []
    lm = an_h.lattice.members
    for i in range(len(lm)):
        for j in range(len(lm)):
            if (lm[i] <= lm[j]) != (lifted[i] <= lifted[j]):
                fails.append("lift does not preserve inclusion")
                break
        else:
            continue
        break
    return _compare("Prop3.5", an_g, lifted, f"CD(G) = {{X x Z : X in CD({h.name})}}", fails,
                    H=h.name, Z=zext.label(), members_H=len(lm))


# ---- metabelian p-groups of maximal class ---------------------------------------------------

def _max_class_params(g: GroupTable) -> tuple[int, int] | None:
    pp = g.prime_power
    pr = g.predicates
    if pp is None or not pr.is_maximal_class or not pr.is_metabelian:
        return None
    return pp


def corollary_4_2_condition(an: GroupAnalysis, p: int, n: int) -> bool:
    """Right-hand side of the chain-of-length-0 criterion for maximal-class groups."""
    abelian_max = [m for m in an.of_index(p) if an.is_abelian(m)]
    if abelian_max:
        return an.center_index != p ** 2
    return n > 5 and all(m.order // an.center_of(m).order > p ** 2 for m in an.of_index(p))


def check_corollary_4_2(g: GroupTable, workers: int = 1) -> TheoremReport:
    pn = _max_class_params(g)
    if pn is None:
        return not_applicable("Cor4.2", g, "not a metabelian p-group of maximal class")
    p, n = pn
    an = analyze(g, workers)
    cond = corollary_4_2_condition(an, p, n)
    is_chain0 = len(an.lattice) == 1
    return TheoremReport("Cor4.2", g.name, True, f"chain(0) iff criterion (criterion {cond})",
                         PASS if cond == is_chain0 else FAIL,
                         {"criterion": cond, "chain0": is_chain0}, corpus_limited=True)


def check_theorem_4_1(g: GroupTable, workers: int = 1) -> TheoremReport:
    pn = _max_class_params(g)
    if pn is None:
        return not_applicable("Thm4.1", g, "not a metabelian p-group of maximal class")
    p, n = pn
    an = analyze(g, workers)
    Z, G = an.center, an.subs.canonical(g.whole)
    d = an.subs.canonical(g.derived_subgroup)
    cor = corollary_4_2_condition(an, p, n)
    base: dict[str, Any] = {"p": p, "n": n, "cor4.2_criterion": cor}
    fails = []
    if cor != (len(an.lattice) == 1):
        fails.append("chain(0) criterion disagrees with the computed lattice")
    if n == 3:
        mids = [h for h in an.interval(Z, G) if h != Z and h != G]
        if len(mids) != p + 1 or not all(an.is_abelian(h) for h in mids):
            fails.append("[Z, G] middle is not p+1 abelian subgroups")
        return _compare("Thm4.1-1", an, [Z, *mids, G], f"quasi-antichain width {p + 1}", fails, **base)
    abelian_max = [m for m in an.of_index(p) if an.is_abelian(m)]
    if abelian_max:
        if len(abelian_max) != 1:
            fails.append(f"{len(abelian_max)} abelian subgroups of index p")
        return _compare("Thm4.1-2", an, abelian_max[:1], "CD = {A}", fails, **base)
    if n <= 4:
        fails.append("no abelian subgroup of index p although n <= 4")
        return _compare("Thm4.1-3", an, [], "n > 4", fails, **base)
    if n == 5:
        ts = an.t_candidates(p)
        others = [h for h in an.subs.of_order(p ** 3)
                  if h != d and an.order // an.centralizer_order(h) == p ** 2]
        predicted = [Z, *(an.center_of(t) for t in ts), d, *others, *ts, G]
        fails += _maximal_class_structure(an, ts, d, others, p, n)
        if len(predicted) != p + 5:
            fails.append(f"{len(predicted)} predicted members, expected {p + 5}")
        return _compare("Thm4.1-3a", an, predicted, f"{{Z, Z(T), G', A_1..A_{p}, T, G}}", fails,
                        T_count=len(ts), A_count=len(others), **base)
    ts = [t for t in an.of_index(p) if t.order // an.center_of(t).order == p ** 2]
    if ts:
        t = ts[0]
        zt = an.center_of(t)
        inner = an.interval(zt, t)
        others = [h for h in inner if h not in (zt, t, d)]
        fails += _maximal_class_structure(an, ts, d, others, p, n)
        if zt.order != p ** (n - 3):
            fails.append("|Z(T)| != p^(n-3)")
        return _compare("Thm4.1-3b", an, inner, f"{{Z(T), G', A_1..A_{p}, T}}", fails,
                        T_count=len(ts), **base)
    if d.order != p ** (n - 2):
        fails.append("|G'| != p^(n-2)")
    return _compare("Thm4.1-3c", an, [d], "CD = {G'}", fails, derived_order=d.order, **base)


def _maximal_class_structure(an: GroupAnalysis, ts: list[Subgroup], d: Subgroup,
                             others: list[Subgroup], p: int, n: int) -> list[str]:
    g = an.group
    fails = []
    if len(ts) != 1:
        fails.append(f"{len(ts)} subgroups T, expected 1")
    elif ts[0].order != p ** (n - 1):
        fails.append("|T| != p^(n-1)")
    if len(others) != p:
        fails.append(f"{len(others)} subgroups A_i, expected {p}")
    if d.order != p ** (n - 2) or not an.is_abelian(d):
        fails.append("G' is not abelian of order p^(n-2)")
    for h in others:
        if h.order != p ** (n - 2) or not an.is_abelian(h):
            fails.append("some A_i is not abelian of order p^(n-2)")
            break
    if any(g.is_normal(h) for h in others):
        fails.append("some A_i is normal")
    return fails


# ---- supporting lemmas --------------------------------------------------------------------

def check_lemmas(corpus: Iterable[GroupTable], workers: int = 1) -> list[TheoremReport]:
    out = []
    for g in corpus:
        pp = g.prime_power
        if pp is None:
            continue
        p, n = pp
        if n == 4:
            an = analyze(g, workers)
            ok = any(an.is_abelian(h) for h in an.subs.of_order(p ** 3))
            out.append(TheoremReport("Lem1.1", g.name, True, f"abelian subgroup of order {p}^3",
                                     PASS if ok else FAIL))
        if not g.predicates.is_maximal_class:
            continue
        out.append(check_lemma_1_2(g, workers))
        if n == 5:
            out.append(check_lemma_1_3(g, workers))
    return out


def check_lemma_1_2(g: GroupTable, workers: int = 1) -> TheoremReport:
    pp = g.prime_power
    if pp is None or not g.predicates.is_maximal_class:
        return not_applicable("Lem1.2", g, "not a p-group of maximal class")
    p, n = pp
    fails = []
    if g.center.order != p:
        fails.append("|Z(G)| != p")
    if g.order // g.derived_subgroup.order != p ** 2:
        fails.append("|G:G'| != p^2")
    series = g.lower_central_series
    an = analyze(g, workers)
    unique = {}
    for i in range(2, n + 1):
        gi = series[i - 1] if i - 1 < len(series) else g.trivial
        normal = [h for h in an.subs.of_order(p ** (n - i)) if g.is_normal(h)]
        unique[i] = len(normal)
        if gi.order != p ** (n - i) or normal != [an.subs.canonical(gi)]:
            fails.append(f"G_{i} is not the unique normal subgroup of order p^{n - i}")
    return TheoremReport("Lem1.2", g.name, True, "|Z| = p, |G:G'| = p^2, G_i unique normal",
                         FAIL if fails else PASS, {"normal_counts": unique, "failures": fails} if fails
                         else {"normal_counts": unique})


def check_lemma_1_3(g: GroupTable, workers: int = 1) -> TheoremReport:
    pp = g.prime_power
    if pp is None or pp[1] != 5 or not g.predicates.is_maximal_class:
        return not_applicable("Lem1.3", g, "not of maximal class and order p^5")
    p = pp[0]
    an = analyze(g, workers)
    if an.lattice.m_star != p ** 6:
        return not_applicable("Lem1.3", g, f"m* = {an.lattice.m_star} != p^6")
    members = an.lattice.members
    d = an.subs.canonical(g.derived_subgroup)
    ts = [h for h in members if h.order == p ** 4]
    mids = [h for h in members if h.order == p ** 3]
    fails = []
    expected = {p: 1, p ** 2: 1, p ** 3: p + 1, p ** 4: 1, p ** 5: 1}
    counts = {o: sum(1 for h in members if h.order == o) for o in expected}
    if counts != expected or len(members) != p + 5:
        fails.append(f"member orders {counts} differ from {expected}")
    if d not in mids:
        fails.append("G' is not a member")
    if not all(an.is_abelian(h) for h in mids):
        fails.append("an order p^3 member is non-abelian")
    if any(g.is_normal(h) for h in mids if h != d):
        fails.append("some A_i is normal")
    if ts and an.center_of(ts[0]) not in an.lattice:
        fails.append("Z(T) is not a member")
    return TheoremReport("Lem1.3", g.name, True, "{G, T, G', A_1..A_p, Z(T), Z(G)}",
                         FAIL if fails else PASS, {"order_counts": counts, "failures": fails})


# ---- consistency between the two classifications ------------------------------------------

def check_consistency(g: GroupTable, workers: int = 1) -> TheoremReport:
    """Where both classifications apply, their verdicts must agree (each compares to the same lattice)."""
    r2 = check_theorem_2_1(g, workers)
    r4 = check_theorem_4_1(g, workers)
    if not (r2.hypothesis_matched and r4.hypothesis_matched):
        return not_applicable("Consistency", g, "only one classification applies")
    ok = r2.verdict == r4.verdict == PASS
    return TheoremReport("Consistency", g.name, True, f"{r2.theorem} agrees with {r4.theorem}",
                         PASS if ok else FAIL, {"index": r2.verdict, "maximal_class": r4.verdict})


def summarize(reports: Iterable[TheoremReport]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, NA: 0}
    for r in reports:
        out[r.verdict] += 1
    return out
