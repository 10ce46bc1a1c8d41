import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexgames import (DomainError, InputError, SizeError, SetFunction, counterexample_game,
                         maximize_supermodular, minimize, minimize_constrained)
from convexgames import coalitions as co
from convexgames.sfm import BruteForceSFM

from conftest import convex_games


def modular(weights):
    w = [Fraction(a) for a in weights]
    return SetFunction(co.full(len(w)), lambda S: sum((w[i] for i in co.members(S)), Fraction(0)))


def test_cardinality():
    res = minimize(SetFunction(co.full(5), lambda S: Fraction(co.size(S))))
    assert (res.minimizer, res.min_value) == (0, 0)
    assert res.evaluations == 2**5 + 1


def test_negated_counterexample():
    v = counterexample_game()
    res = minimize(SetFunction(v.grand, lambda S: -v(S)))
    assert (res.minimizer, res.min_value) == (0b1111, -10)


def test_modular_negative_weights():
    res = minimize(modular([-1, 2, -3]))
    assert (res.minimizer, res.min_value) == (0b101, -4)


def test_constrained_examples():
    f = SetFunction(co.full(4), lambda S: Fraction(co.size(S)))
    res = minimize_constrained(f, forced_in=0b0010)
    assert (res.minimizer, res.min_value) == (0b0010, 1)
    v = counterexample_game()
    res = minimize_constrained(SetFunction(v.grand, lambda S: -v(S)), forced_in=0b1000)
    assert (res.minimizer, res.min_value) == (0b1111, -10)
    res = minimize_constrained(f, forced_in=f.ground)
    assert (res.minimizer, res.min_value) == (f.ground, 4)
    with pytest.raises(InputError):
        minimize_constrained(f, 0b1, 0b1)
    with pytest.raises(InputError):
        minimize_constrained(f, 0b10000)


def test_maximize_examples():
    v = counterexample_game()
    res = maximize_supermodular(SetFunction(v.grand, v))
    assert (res.minimizer, res.min_value) == (0b1111, 10)
    res = maximize_supermodular(modular([1, 2, 3]))
    assert (res.minimizer, res.min_value) == (0b111, 6)
    res = maximize_supermodular(SetFunction(0, lambda J: Fraction(7)))
    assert (res.minimizer, res.min_value) == (0, 7)


def test_size_bound_and_nonsubmodular_detection():
    with pytest.raises(SizeError):
        BruteForceSFM(max_ground=3).minimize(modular([1, 1, 1, 1]))
    # minimizers {1} and {2} but not their meet: f is not submodular
    bad = SetFunction(0b11, lambda S: Fraction({0: 1, 1: 0, 2: 0, 3: 1}[S]))
    with pytest.raises(DomainError):
        minimize(bad)


def cut_function(k, edges):
    def f(S):
        return Fraction(sum(w for a, b, w in edges if (S >> a & 1) != (S >> b & 1)))
    return SetFunction(co.full(k), f)


graphs = st.integers(2, 8).flatmap(lambda k: st.tuples(
    st.just(k),
    st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1), st.integers(1, 5)),
             max_size=12),
    st.lists(st.integers(-6, 6), min_size=k, max_size=k)))


def all_minimizers(f):
    vals = {S: f(S) for S in co.subsets(f.ground)}
    best = min(vals.values())
    return best, [S for S, v in vals.items() if v == best]


@settings(max_examples=150)
@given(graphs)
def test_cut_plus_modular_matches_enumeration(data):
    k, edges, w = data
    cut = cut_function(k, edges)
    f = SetFunction(co.full(k), lambda S: cut(S) + sum((w[i] for i in co.members(S)), 0))
    res = minimize(f)
    best, mins = all_minimizers(f)
    assert res.min_value == best
    # inclusion-minimal, and the meet of every minimizer
    assert all(res.minimizer & ~S == 0 for S in mins)
    for S in co.subsets(res.minimizer):
        if S != res.minimizer:
            assert f(S) > best
    # lattice property
    for A, B in itertools.islice(itertools.combinations(mins, 2), 50):
        assert f(A & B) == best and f(A | B) == best


@settings(max_examples=100)
@given(convex_games(max_n=6))
def test_negated_convex_game(game):
    f = SetFunction(game.grand, lambda S: -game(S))
    res = minimize(f)
    best, _ = all_minimizers(f)
    assert res.min_value == best
    assert minimize_constrained(f) == res


@given(convex_games(min_n=3, max_n=6), st.data())
def test_constrained_matches_enumeration(game, data):
    i = data.draw(st.integers(0, game.n - 1))
    j = data.draw(st.integers(0, game.n - 1).filter(lambda j: j != i))
    f = SetFunction(game.grand, lambda S: -game(S) + co.size(S))
    res = minimize_constrained(f, 1 << i, 1 << j)
    feasible = [S for S in co.subsets(game.grand) if S >> i & 1 and not S >> j & 1]
    assert res.min_value == min(f(S) for S in feasible)
    assert res.minimizer >> i & 1 and not res.minimizer >> j & 1
