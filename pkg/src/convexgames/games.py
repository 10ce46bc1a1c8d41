"""Transferable-utility games, convexity checks, greedy core points and generators."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import coalitions as co
from .errors import InputError, SizeError
from .rationals import as_rational

ZERO = Fraction(0)

EXHAUSTIVE_BOUND = 16
TABLE_BOUND = 24


class Game:
    """A game ``(N, v)`` on players ``0..n-1`` given by a value oracle.

    The oracle is only consulted for nonempty coalitions; ``v(0)`` is always 0.
    ``kind`` records where the values come from (``"table"``, ``"airport"``,
    ``"bankruptcy"``, ``"reduced"``, ``"shifted"``, ...).
    """

    def __init__(self, n: int, oracle: Callable[[int], Fraction], kind: str = "oracle"):
        if n < 1:
            raise InputError(f"a game needs at least one player, got n={n}")
        self.n = n
        self.grand = co.full(n)
        self.kind = kind
        self._oracle = oracle

    def value(self, S: int) -> Fraction:
        if S < 0 or S > self.grand:
            raise InputError(f"coalition {S:#b} outside ground set of {self.n} players")
        if S == 0:
            return ZERO
        return self._oracle(S)

    __call__ = value

    def values(self) -> list[Fraction]:
        """Dense table indexed by bitmask (entry 0 is v(empty) = 0)."""
        if self.n > TABLE_BOUND:
            raise SizeError(f"cannot tabulate a game with {self.n} > {TABLE_BOUND} players")
        return [ZERO] + [self._oracle(S) for S in range(1, self.grand + 1)]

    def materialize(self) -> "TableGame":
        return TableGame(self.n, self.values())

    def x_of(self, x: Sequence[Fraction], S: int) -> Fraction:
        """``x(S)``: sum of the allocation over members of ``S``."""
        return sum((x[i] for i in co.members(S)), ZERO)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, kind={self.kind!r})"


class TableGame(Game):
    """Explicit game storing all ``2**n`` values densely by bitmask."""

    def __init__(self, n: int, values: Sequence):
        if n > TABLE_BOUND:
            raise SizeError(f"explicit tables are limited to {TABLE_BOUND} players")
        if len(values) != 1 << n:
            raise InputError(f"expected {1 << n} values, got {len(values)}")
        table = [as_rational(v) for v in values]
        if table[0] != 0:
            raise InputError("v(empty set) must be 0")
        self.table = table
        super().__init__(n, table.__getitem__, kind="table")

    @classmethod
    def from_dict(cls, n: int, values: dict[int, object], default=0) -> "TableGame":
        dflt = as_rational(default)
        table = [ZERO] + [dflt] * ((1 << n) - 1)
        for S, val in values.items():
            co.check_within(S, co.full(n))
            if S == 0:
                raise InputError("the empty coalition cannot be assigned a value")
            table[S] = as_rational(val)
        return cls(n, table)

    def values(self) -> list[Fraction]:
        return list(self.table)

    def materialize(self) -> "TableGame":
        return self


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive property check; falsy when a witness was found."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _table_for_check(game: Game, bound: int) -> list[Fraction]:
    if game.n > bound:
        raise SizeError(f"exhaustive check limited to n <= {bound}, got n={game.n}")
    return game.values()


def is_supermodular(game: Game, bound: int = EXHAUSTIVE_BOUND) -> CheckResult:
    """Marginal-form supermodularity test.

    Checks ``v(S+i) - v(S) <= v(S+i+j) - v(S+j)`` for all ``i < j`` and
    ``S`` avoiding both. The witness is the first violating ``(i, j, S)`` in
    lexicographic order (0-based players, ``S`` a mask).
    """
    v = _table_for_check(game, bound)
    n = game.n
    grand = game.grand
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            rest = grand & ~(bi | bj)
            for S in co.subsets(rest):
                if v[S | bi] + v[S | bj] > v[S] + v[S | bi | bj]:
                    return CheckResult(False, (i, j, S))
    return CheckResult(True)


def is_crossing_supermodular(game: Game, bound: int = EXHAUSTIVE_BOUND) -> CheckResult:
    """Supermodularity restricted to pairs with ``S & T != 0`` and ``S | T != N``.

    Uses the local form: for every nonempty ``Z`` and ``i, j`` outside it with
    ``Z+i+j != N``, ``v(Z+i) + v(Z+j) <= v(Z) + v(Z+i+j)``. Chains of such
    exchanges between crossing ``S, T`` never leave ``[S & T, S | T]``, so the
    local form is equivalent. The witness is the violating pair ``(S, T)``.
    """
    v = _table_for_check(game, bound)
    n = game.n
    grand = game.grand
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            rest = grand & ~(bi | bj)
            for Z in co.subsets(rest):
                if Z == 0 or Z | bi | bj == grand:
                    continue
                if v[Z | bi] + v[Z | bj] > v[Z] + v[Z | bi | bj]:
                    return CheckResult(False, (Z | bi, Z | bj))
    return CheckResult(True)


def is_intersecting_supermodular(game: Game, bound: int = EXHAUSTIVE_BOUND) -> CheckResult:
    """Supermodularity restricted to pairs with ``S & T != 0`` (local form, ``Z`` nonempty)."""
    v = _table_for_check(game, bound)
    n = game.n
    grand = game.grand
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            for Z in co.subsets(grand & ~(bi | bj)):
                if Z and v[Z | bi] + v[Z | bj] > v[Z] + v[Z | bi | bj]:
                    return CheckResult(False, (Z | bi, Z | bj))
    return CheckResult(True)


def greedy_core_point(game: Game, order: Sequence[int] | None = None) -> list[Fraction]:
    """Marginal vector along ``order`` (0-based); a core vertex when ``game`` is convex."""
    if order is None:
        order = range(game.n)
    order = list(order)
    if sorted(order) != list(range(game.n)):
        raise InputError(f"order {order} is not a permutation of 0..{game.n - 1}")
    x = [ZERO] * game.n
    prefix = 0
    prev = ZERO
    for i in order:
        prefix |= 1 << i
        cur = game.value(prefix)
        x[i] = cur - prev
        prev = cur
    return x


def is_preimputation(game: Game, x: Sequence[Fraction]) -> bool:
    return len(x) == game.n and sum(x, ZERO) == game.value(game.grand)


# -- families --------------------------------------------------------------


def additive_game(weights: Iterable) -> TableGame:
    w = [as_rational(a) for a in weights]
    n = len(w)
    table = [ZERO] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        table[S] = table[S ^ low] + w[low.bit_length() - 1]
    return TableGame(n, table)


def zero_game(n: int) -> TableGame:
    return TableGame(n, [ZERO] * (1 << n))


def counterexample_game() -> TableGame:
    """The 4-player convex game on which the reduced-game shortcut of Kuipers fails."""
    m = co.from_members
    vals = {
        m([0, 1]): 3, m([1, 2]): 3, m([1, 2, 3]): 3,
        m([0, 1, 2]): 6, m([0, 1, 3]): 6,
        m([0, 1, 2, 3]): 10,
    }
    return TableGame.from_dict(4, vals)


def gen_airport(landing_costs: Iterable) -> Game:
    """Savings form of the airport game: ``v(S) = c(S) - max_{i in S} c_i``."""
    c = [as_rational(a) for a in landing_costs]
    if not c:
        raise InputError("airport game needs at least one player")
    if any(a < 0 for a in c):
        raise InputError("landing costs must be nonnegative")

    def oracle(S: int) -> Fraction:
        costs = [c[i] for i in co.members(S)]
        return sum(costs, ZERO) - max(costs)

    return Game(len(c), oracle, kind="airport")


def gen_bankruptcy(estate, claims: Iterable) -> Game:
    """Bankruptcy game ``v(S) = max(0, E - d(N \\ S))``."""
    E = as_rational(estate)
    d = [as_rational(a) for a in claims]
    if not d:
        raise InputError("bankruptcy game needs at least one claimant")
    if E < 0 or any(a < 0 for a in d):
        raise InputError("estate and claims must be nonnegative")
    total = sum(d, ZERO)
    if E > total:
        warnings.warn(f"estate {E} exceeds total claims {total}", stacklevel=2)
    n = len(d)
    grand = co.full(n)

    def oracle(S: int) -> Fraction:
        outside = sum((d[i] for i in co.members(grand & ~S)), ZERO)
        return max(ZERO, E - outside)

    return Game(n, oracle, kind="bankruptcy")


def convex_power_game(weights: Iterable, curvature: int = 2) -> TableGame:
    """``v(S) = w(S) ** curvature`` for nonnegative weights; supermodular for curvature >= 1."""
    if curvature < 1:
        raise InputError("curvature must be >= 1")
    w = [as_rational(a) for a in weights]
    if any(a < 0 for a in w):
        raise InputError("weights must be nonnegative")
    base = additive_game(w).table
    return TableGame(len(w), [a ** curvature for a in base])


def gen_random_convex(n: int, seed: int, weight_range: tuple[int, int] = (0, 10),
                      curvature: int = 2) -> TableGame:
    """Deterministic random convex game: integer weights drawn from ``weight_range``."""
    if n < 1:
        raise InputError("n must be >= 1")
    lo, hi = weight_range
    if lo < 0 or hi < lo:
        raise InputError(f"bad weight range {weight_range}")
    rng = random.Random(seed)
    weights = [rng.randint(lo, hi) for _ in range(n)]
    return convex_power_game(weights, curvature)
