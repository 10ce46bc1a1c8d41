from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from convexgames import TableGame, additive_game, convex_power_game, gen_airport, gen_bankruptcy

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def table(n, pairs):
    """TableGame from ``{tuple_of_1based_players: value}``; unlisted coalitions are 0."""
    vals = [0] * (1 << n)
    for members, val in pairs.items():
        mask = 0
        for i in members:
            mask |= 1 << (i - 1)
        vals[mask] = Fraction(val)
    return TableGame(n, vals)


@st.composite
def convex_games(draw, min_n=2, max_n=5):
    """Sums of power games on random weight vectors plus an arbitrary modular part."""
    n = draw(st.integers(min_n, max_n))
    total = [Fraction(0)] * (1 << n)
    for _ in range(draw(st.integers(1, 3))):
        w = draw(st.lists(st.integers(0, 6), min_size=n, max_size=n))
        k = draw(st.integers(1, 3))
        for S, val in enumerate(convex_power_game(w, k).table):
            total[S] += val
    shift = draw(st.lists(st.integers(-8, 8), min_size=n, max_size=n))
    for S, val in enumerate(additive_game(shift).table):
        total[S] += val
    return TableGame(n, total)


@st.composite
def family_games(draw, min_n=2, max_n=5):
    """Airport, bankruptcy or generic convex games."""
    kind = draw(st.sampled_from(["airport", "bankruptcy", "generic"]))
    if kind == "generic":
        return draw(convex_games(min_n, max_n))
    n = draw(st.integers(min_n, max_n))
    if kind == "airport":
        return gen_airport(draw(st.lists(st.integers(0, 20), min_size=n, max_size=n))).materialize()
    claims = draw(st.lists(st.integers(0, 30), min_size=n, max_size=n))
    estate = draw(st.integers(0, sum(claims)))
    return gen_bankruptcy(estate, claims).materialize()
