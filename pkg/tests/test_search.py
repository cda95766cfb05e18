from __future__ import annotations

import pytest

import oracles
from incidence_braid import braiding as br
from incidence_braid.families import T56_IDS, flip_solution
from incidence_braid.poset import chain, vee
from incidence_braid.scalars import GF, Q
from incidence_braid.search import (CapacityExceeded, SearchSpec, all_family_instances,
                                    enumerate_restrictions, exhaustive_search, family_coverage,
                                    random_family_sweep)

XY = chain("x", "y")


def flip_restriction(p):
    return br.extract_restriction(flip_solution(p))


@pytest.fixture(scope="module")
def census2():
    return exhaustive_search(SearchSpec(XY, GF(2), flip_restriction(XY)))


@pytest.fixture(scope="module")
def census3():
    return exhaustive_search(SearchSpec(XY, GF(3), flip_restriction(XY)))


def key(t):
    return frozenset(t.entries.items())


def test_gf2_space_and_census(census2):
    assert census2.space_size == 256 == census2.evaluated
    assert len(census2.solutions) == 12


def test_gf3_space_and_census(census3):
    assert census3.space_size == 6561 == census3.evaluated
    assert len(census3.solutions) == 72
    assert census3.unmatched() == []


def test_solutions_reverified_without_pruning(census2, census3):
    for c in (census2, census3):
        for t in c.solutions:
            assert oracles.kron_residual(t) == {}
            assert br.verify_structure(t).passed


def test_unpruned_gf2_agrees(census2):
    raw = exhaustive_search(SearchSpec(XY, GF(2), flip_restriction(XY), pruning=False))
    assert raw.space_size == 2 ** 21
    assert {key(t) for t in raw.solutions} == {key(t) for t in census2.solutions}


def test_every_restriction_on_the_chain():
    # x < y admits only the identity translations
    assert len(enumerate_restrictions(XY)) == 1
    c = exhaustive_search(SearchSpec(XY, GF(2)))
    assert len(c.solutions) == 12


def test_gf2_leaves_two_solutions_outside_the_families(census2):
    # shaped like item 3b but with Gamma1 off its forced value beta1 beta3
    odd = census2.unmatched()
    reads = sorted(tuple(int(v) for v in oracles.t56_read(e.tensor)) for e in odd)
    assert reads == [(1, 1, 1, 1, 0, 0, 1, 1, 1), (1, 1, 1, 1, 1, 1, 0, 0, 1)]
    for e in odd:
        assert oracles.kron_residual(e.tensor) == {}
        assert br.verify_structure(e.tensor).passed


def test_coverage_gf3(census3):
    cov = family_coverage(census3, T56_IDS)
    for fid, (hit, total) in cov.items():
        assert hit == total


def test_coverage_gf2(census2):
    cov = family_coverage(census2, T56_IDS)
    for fid, (hit, total) in cov.items():
        assert hit == total


def test_single_point_identity():
    p = chain("p")
    c = exhaustive_search(SearchSpec(p, GF(3)))
    assert [t.entries for t in c.solutions] == [{("p",) * 8: 1}]


def test_cap_reports_space_size():
    with pytest.raises(CapacityExceeded) as exc:
        exhaustive_search(SearchSpec(vee(), GF(5), pruning=False, limit=10 ** 6))
    assert exc.value.size > 10 ** 6
    assert str(exc.value.size) in str(exc.value)


def test_infinite_field_refused():
    with pytest.raises(ValueError):
        exhaustive_search(SearchSpec(XY, Q))


def test_sweep_item4c_over_q():
    rep = random_family_sweep("T56-4c", 100, Q, seed=0)
    assert rep.drawn == 100 and rep.all_passed


def test_sweep_family4a_over_gf7():
    rep = random_family_sweep("TAB1-4a", 50, GF(7), seed=0)
    assert rep.drawn == 50 and rep.all_passed


def test_sweep_item3b_gf2_is_exact():
    rep = random_family_sweep("T56-3b", 10, GF(2))
    assert rep.exact and rep.all_passed
    pairs = sorted((int(i.params["beta1"]), int(i.params["beta3"]))
                   for i in all_family_instances("T56-3b", GF(2)))
    # (1, 1) sums to zero in characteristic 2
    assert pairs == [(0, 1), (1, 0)]


def test_sweep_reports_missing_parameters():
    rep = random_family_sweep("T56-4a-ii", 5, GF(2))
    assert rep.drawn == 0 and not rep.all_passed and rep.note


def test_sweep_is_reproducible():
    a = random_family_sweep("T56-4a-i", 20, Q, seed=3)
    b = random_family_sweep("T56-4a-i", 20, Q, seed=3)
    assert (a.drawn, a.passed) == (b.drawn, b.passed)
