from __future__ import annotations

from itertools import product

import pytest

from incidence_braid.poset import Poset, PosetError, antichain, chain, vee


def diamond() -> Poset:
    return Poset.from_cover_relations("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


def test_chain_and_vee():
    p = Poset.from_cover_relations(["x", "y"], [("x", "y")])
    assert p.leq("x", "y") and not p.leq("y", "x")
    v = Poset.from_cover_relations(["x", "y", "z"], [("x", "y"), ("z", "y")])
    assert v == vee()
    assert v.covers == [("x", "y"), ("z", "y")]


def test_irreflexive_cover_rejected():
    with pytest.raises(PosetError):
        Poset.from_cover_relations(["x"], [("x", "x")])


def test_cycle_rejected():
    with pytest.raises(PosetError):
        Poset.from_cover_relations(["x", "y"], [("x", "y"), ("y", "x")])


def test_intervals():
    p = chain("x", "y")
    assert set(p.interval("x", "y")) == {"x", "y"}
    assert set(p.interval("y", "y")) == {"y"}
    assert vee().interval("x", "z") == []


def test_heights():
    assert chain("x", "y").height("x", "y") == 1
    assert chain("x", "y").height("x", "x") == 0
    assert chain("x", "y", "z").height("x", "z") == 2


def test_maximal_chains():
    assert chain("x", "y").maximal_chains("x", "y") == [["x", "y"]]
    assert chain("x", "y").maximal_chains("y", "y") == [["y"]]
    assert sorted(diamond().maximal_chains("a", "d")) == [["a", "b", "d"], ["a", "c", "d"]]


def test_automorphisms():
    v = vee()
    assert v.is_order_automorphism({"x": "z", "y": "y", "z": "x"})
    assert v.is_order_automorphism({e: e for e in v.elements})
    assert not chain("x", "y").is_order_automorphism({"x": "y", "y": "x"})


def test_components():
    assert chain("x", "y").connected_components == [frozenset("xy")]
    assert sorted(map(sorted, antichain("p", "q").connected_components)) == [["p"], ["q"]]
    assert vee().connected_components == [frozenset("xyz")]


def all_small_posets():
    yield chain("a")
    yield chain("a", "b")
    yield antichain("a", "b")
    yield vee()
    yield chain("a", "b", "c")
    yield diamond()
    yield Poset.from_cover_relations("abc", [("a", "b"), ("a", "c")])


@pytest.mark.parametrize("p", list(all_small_posets()), ids=repr)
def test_height_matches_maximal_chains(p):
    for a, b in product(p.elements, repeat=2):
        if not p.leq(a, b):
            continue
        chains = p.maximal_chains(a, b)
        assert p.height(a, b) == max(len(c) - 1 for c in chains)
        assert (p.height(a, b) == 0) == (a == b)
        assert (p.height(a, b) == 1) == p.is_cover(a, b)


@pytest.mark.parametrize("p", list(all_small_posets()), ids=repr)
def test_intervals_meet_at_middle(p):
    for a, b, c in product(p.elements, repeat=3):
        if p.leq(a, b) and p.leq(b, c):
            assert b in set(p.interval(a, b)) & set(p.interval(b, c))


@pytest.mark.parametrize("p", [chain("a", "b"), vee(), diamond(), antichain("a", "b", "c")], ids=repr)
def test_automorphisms_closed_under_composition(p):
    els = p.elements
    maps = [dict(zip(els, img)) for img in product(els, repeat=len(els))]
    autos = [f for f in maps if p.is_order_automorphism(f)]
    assert sorted(map(lambda f: tuple(sorted(f.items())), autos)) == sorted(
        tuple(sorted(f.items())) for f in p.automorphisms())
    for f, g in product(autos, repeat=2):
        assert p.is_order_automorphism({x: f[g[x]] for x in els})


def test_isomorphism_classes_up_to_five():
    # unlabelled poset counts 1, 2, 5, 16, 63 are classical
    import oracles
    classes = oracles.posets_up_to_iso(5)
    assert [len(classes[n]) for n in range(1, 6)] == [1, 2, 5, 16, 63]
    labels = "abcde"
    for rel in classes[4]:
        p = Poset(labels[:4], [(labels[a], labels[b]) for a, b in rel])
        assert all(p.leq(labels[a], labels[b]) for a, b in rel)
