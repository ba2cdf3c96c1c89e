"""The standard group corpus and the verification suites run over it.

Every corpus entry is a spec string (see :mod:`groupspec`), so a failing
report can be reproduced with ``cdlattice cd <spec>``.
"""
from __future__ import annotations

import logging
import time
from functools import lru_cache
from typing import Callable

from .abelian_types import abelian_types
from .cd import lattice_violations
from .constructors import AbelianSpec
from .group import GroupTable
from .groupspec import build_group, parse_spec
from .oracle import (FAIL, NA, PASS, TheoremReport, analyze, check_consistency, check_corollary_2_2,
                     check_corollary_3_2, check_corollary_3_4, check_corollary_4_2, check_lemmas,
                     check_proposition_3_5, check_theorem_2_1, check_theorem_3_1, check_theorem_3_3,
                     check_theorem_4_1)
from .subgroups import all_subgroups, verify_complete

log = logging.getLogger(__name__)

MAX_CLASS_SPECS = ("fp:sg_729_99.pres", "fp:maxclass_p5_3125.pres")
LONG_SPECS = ("fp:sg_15625_651.pres",)
SEMIDIRECT_SPECS = ("sdp:5;2;4", "sdp:7;2;3", "sdp:3,3;2,6;2")
PRODUCT_SPECS = tuple(f"prod:{h}*ab:{z}" for h in ("dic:2", "dic:3", "dic:4") for z in (3, 5))


def dicyclic_specs(max_n: int = 12) -> list[str]:
    return [f"dic:{n}" for n in range(1, max_n + 1)]


def generalized_dicyclic_specs(max_order: int = 32) -> list[str]:
    out = []
    for order in range(2, max_order + 1, 2):
        for inv in abelian_types(order):
            for t in AbelianSpec(inv).involutions():
                out.append(f"gdic:{','.join(map(str, inv))},t={t}")
    return out


def two_group_specs(max_order: int = 64) -> list[str]:
    out = []
    k = 8
    while k <= max_order:
        out += [f"dih:{k // 2}", f"quat:{k}"] + ([f"sdih:{k}"] if k >= 16 else [])
        k *= 2
    return out


def standard_corpus(long: bool = False, max_n: int = 12) -> list[str]:
    specs = (dicyclic_specs(max_n) + generalized_dicyclic_specs() + ["xsp:2,5,d", "xsp:2,5,q"]
             + two_group_specs() + ["heis:3", "heis:5"] + list(SEMIDIRECT_SPECS)
             + list(PRODUCT_SPECS) + list(MAX_CLASS_SPECS))
    if long:
        specs += list(LONG_SPECS)
    seen: dict[str, None] = {}
    for s in specs:
        seen.setdefault(parse_spec(s).canonical())
    return list(seen)


@lru_cache(maxsize=None)
def corpus_group(spec: str) -> GroupTable:
    t = time.perf_counter()
    g = build_group(spec)
    log.info("built %s (order %d) in %.2fs", spec, g.order, time.perf_counter() - t)
    return g


def corpus_groups(long: bool = False, max_n: int = 12) -> list[GroupTable]:
    return [corpus_group(s) for s in standard_corpus(long, max_n)]


# ---- suites ----------------------------------------------------------------------------

Suite = Callable[..., list[TheoremReport]]


def suite_theorem_2_1(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    return [check_theorem_2_1(g, workers) for g in corpus_groups(long, max_n)]


def suite_corollary_2_2(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    return [check_corollary_2_2(g, workers) for g in corpus_groups(long, max_n)]


def suite_theorem_3_1(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    out = []
    for spec in generalized_dicyclic_specs():
        factors, t = parse_spec(spec).params
        out.append(check_theorem_3_1(factors, t, workers))
    return out


def suite_corollary_3_2(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    return [check_corollary_3_2(n, workers) for n in range(1, max_n + 1)]


def suite_theorem_3_3(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    out = []
    for spec in SEMIDIRECT_SPECS:
        factors, images, k = parse_spec(spec).params
        out.append(check_theorem_3_3(factors, [k], [images], workers))
    return out


def suite_corollary_3_4(long: bool = False, max_n: int = 12, workers: int = 1, bound: int = 24) -> list[TheoremReport]:
    return check_corollary_3_4(bound, corpus_groups(long, max_n), workers)


def suite_proposition_3_5(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    return [check_proposition_3_5(corpus_group(h), [z], workers)
            for h in ("dic:2", "dic:3", "dic:4") for z in (3, 5)]


def suite_theorem_4_1(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    out = []
    for g in corpus_groups(long, max_n):
        r = check_theorem_4_1(g, workers)
        if r.verdict == NA:
            continue
        out += [r, check_corollary_4_2(g, workers), check_consistency(g, workers)]
    return out


def suite_lemmas(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    return check_lemmas(corpus_groups(long, max_n), workers)


def suite_invariants(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    out = []
    for g in corpus_groups(long, max_n):
        problems = lattice_violations(analyze(g, workers).lattice)
        out.append(TheoremReport("CD-invariants", g.name, True, "all lattice invariants hold",
                                 FAIL if problems else PASS, {"violations": problems} if problems else {}))
    return out


def suite_enumeration(long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    out = []
    for g in corpus_groups(long, max_n):
        if g.order > 128:
            continue
        one = all_subgroups(g, workers=1)
        many = all_subgroups(g, workers=max(2, workers))
        same = one.fingerprint() == many.fingerprint()
        complete = verify_complete(g, one)
        out.append(TheoremReport("Enumeration", g.name, True, "fast = oracle, 1 thread = N threads",
                                 PASS if same and complete else FAIL,
                                 {"subgroups": len(one), "oracle_equal": complete, "thread_invariant": same}))
    return out


SUITES: dict[str, Suite] = {
    "thm2.1": suite_theorem_2_1,
    "cor2.2": suite_corollary_2_2,
    "thm3.1": suite_theorem_3_1,
    "thm3.2": suite_corollary_3_2,
    "thm3.3": suite_theorem_3_3,
    "cor3.4": suite_corollary_3_4,
    "prop3.5": suite_proposition_3_5,
    "thm4.1": suite_theorem_4_1,
    "lemmas": suite_lemmas,
    "invariants": suite_invariants,
    "enumeration": suite_enumeration,
}


def run_suite(name: str, long: bool = False, max_n: int = 12, workers: int = 1) -> list[TheoremReport]:
    if name == "all":
        out = []
        for key, fn in SUITES.items():
            log.info("suite %s", key)
            out += fn(long=long, max_n=max_n, workers=workers)
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name](long=long, max_n=max_n, workers=workers)
