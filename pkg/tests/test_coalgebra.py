from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from incidence_braid.coalgebra import (IntervalBasis, LinearMap, compose, delta, delta_map,
                                       epsilon, epsilon_map, flip_map, group_likes, tensor_lift)
from incidence_braid.families import random_instance
from incidence_braid.poset import Poset, chain, vee
from incidence_braid.scalars import GF, Mod


def test_delta_on_cover():
    b = IntervalBasis(chain("x", "y"))
    assert delta(b, ("x", "y")) == [(("x", "x"), ("x", "y")), (("x", "y"), ("y", "y"))]
    assert delta(b, ("x", "x")) == [(("x", "x"), ("x", "x"))]


def test_delta_rejects_non_interval():
    with pytest.raises(ValueError):
        delta(IntervalBasis(vee()), ("x", "z"))


def test_epsilon():
    b = IntervalBasis(chain("x", "y"))
    assert [epsilon(b, p) for p in [("x", "x"), ("x", "y"), ("y", "y")]] == [1, 0, 1]


def test_group_likes():
    assert group_likes(IntervalBasis(chain("x", "y"))) == [("x", "x"), ("y", "y")]
    assert group_likes(IntervalBasis(vee())) == [("x", "x"), ("y", "y"), ("z", "z")]
    assert group_likes(IntervalBasis(chain("x"))) == [("x", "x")]


def diamond():
    return Poset.from_cover_relations("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@pytest.mark.parametrize("p", [chain("x", "y"), vee(), chain("a", "b", "c"), diamond()], ids=repr)
def test_coassociativity_and_counit(p):
    b = IntervalBasis(p)
    for pair in b.pairs:
        left = sorted((u1, u2, v) for u, v in delta(b, pair) for u1, u2 in delta(b, u))
        right = sorted((u, v1, v2) for u, v in delta(b, pair) for v1, v2 in delta(b, v))
        assert left == right
        assert [v for u, v in delta(b, pair) if epsilon(b, u)] == [pair]
        assert [u for u, v in delta(b, pair) if epsilon(b, v)] == [pair]


def test_counit_and_delta_maps_compose_to_identity():
    b = IntervalBasis(diamond())
    n = len(b)
    d = delta_map(b)
    eps_id = epsilon_map(b).kron(LinearMap.identity(n))
    assert eps_id @ d == LinearMap.identity(n)


def test_tensor_lift_identity_and_flip():
    n = 3
    ident = LinearMap.identity(n * n)
    assert tensor_lift(ident, "12", n) == LinearMap.identity(n ** 3)
    lifted = tensor_lift(flip_map(n), "12", n)
    for u, v, w in product(range(n), repeat=3):
        assert lifted.apply({u * 9 + v * 3 + w: 1}) == {v * 9 + u * 3 + w: 1}


def _dense_kron(a, b):
    ra, rb = len(a), len(b)
    return [[a[i // rb][j // rb] * b[i % rb][j % rb] for j in range(ra * rb)] for i in range(ra * rb)]


def test_tensor_lift_matches_dense_kron():
    t = random_instance("T56-4c", GF(7), seed=2).realize()
    m = t.to_map()
    zero = Mod(0, 7)
    dense = m.to_dense(zero=zero)
    eye = [[Mod(int(i == j), 7) for j in range(3)] for i in range(3)]
    assert tensor_lift(m, "12", 3).to_dense(zero=zero) == _dense_kron(dense, eye)
    assert tensor_lift(m, "23", 3).to_dense(zero=zero) == _dense_kron(eye, dense)


def test_flip_involution_and_singular():
    assert compose(flip_map(4), flip_map(4)) == LinearMap.identity(16)
    sing = LinearMap.from_dense([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    assert not sing.is_invertible()


def test_random_invertible_gf3():
    rng = random.Random(4)
    found = 0
    while found < 5:
        rows = [[Mod(rng.randrange(3), 3) for _ in range(9)] for _ in range(9)]
        m = LinearMap.from_dense(rows)
        if not m.is_invertible():
            continue
        found += 1
        one = Mod(1, 3)
        assert m @ m.inverse() == LinearMap.identity(9, one)
        assert m.inverse() @ m == LinearMap.identity(9, one)


def test_kron_apply_matches_materialized_kron():
    rng = random.Random(2)
    a = LinearMap.from_dense([[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(4)])
    b = LinearMap.from_dense([[Fraction(rng.randint(-2, 2)) for _ in range(2)] for _ in range(3)])
    for _ in range(10):
        vec = {j: Fraction(rng.randint(-3, 3)) for j in rng.sample(range(6), 3)}
        vec = {j: v for j, v in vec.items() if v}
        assert a.kron_apply(b, vec) == a.kron(b).apply(vec)
