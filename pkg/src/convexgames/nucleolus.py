"""Nucleolus of convex games through chains of reduced games.

Once an essential coalition ``S`` of the current block is known, both ``S``
and its complement inside the block have known nucleolus mass, and the games
reduced onto either side only need the value of every previously removed
set, not the individual payoffs inside it. A reduced value is therefore

    max over J of  v(T | union of T_j for j in J) - sum of mass_j for j in J,

a supermodular maximization over the index set of removed sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import coalitions as co
from .errors import ConvexityError, DomainError, InputError
from .games import Game
from .least_core import least_core, min_excess
from .sfm import Engine, SetFunction, maximize_supermodular

ZERO = Fraction(0)


class ReducedGameView:
    """Game reduced onto ``block`` after removing ``ancestry`` sets with known masses.

    ``ancestry`` is a sequence of ``(removed_set, mass)`` pairs, oldest first.
    Values are computed lazily and memoized per coalition.
    """

    def __init__(self, base: Game, block: int, ancestry: Sequence[tuple[int, Fraction]] = (),
                 engine: Engine | None = None):
        seen = block
        for T, _ in ancestry:
            if T == 0 or T & seen:
                raise InputError("reduced-game blocks must be nonempty and pairwise disjoint")
            seen |= T
        if seen != base.grand or block == 0:
            raise InputError("block and removed sets must partition the player set")
        self.base = base
        self.block = block
        self.ancestry = tuple((T, Fraction(m)) for T, m in ancestry)
        self.positions = co.members(block)
        self.engine = engine
        self.evaluations = 0
        self._memo: dict[int, Fraction] = {}

    @property
    def size(self) -> int:
        return len(self.positions)

    def value(self, T: int) -> Fraction:
        if T < 0 or T & ~self.block:
            raise InputError(f"{co.render(T)} is not inside block {co.render(self.block)}")
        hit = self._memo.get(T)
        if hit is not None:
            return hit
        if not self.ancestry:
            val = self.base.value(T)
        else:
            res = maximize_supermodular(self.recruitment_function(T), self.engine)
            self.evaluations += res.evaluations
            val = res.min_value
        self._memo[T] = val
        return val

    def recruitment_function(self, T: int) -> SetFunction:
        """``J -> v(T | T_J) - mass(J)`` over indices of removed sets."""
        sets = [A for A, _ in self.ancestry]
        masses = [m for _, m in self.ancestry]
        base = self.base

        def f(J: int) -> Fraction:
            S = T
            paid = ZERO
            j = 0
            while J:
                if J & 1:
                    S |= sets[j]
                    paid += masses[j]
                J >>= 1
                j += 1
            return base.value(S) - paid

        return SetFunction(co.full(len(sets)), f)

    def child(self, keep: int, removed_mass: Fraction) -> "ReducedGameView":
        """View on ``keep``; the rest of this block leaves with ``removed_mass``."""
        return ReducedGameView(self.base, keep,
                               self.ancestry + ((self.block & ~keep, removed_mass),), self.engine)

    def as_game(self) -> Game:
        """The view as a game on players ``0..size-1`` (block members in order)."""
        pos = self.positions
        return Game(self.size, lambda L: self.value(co.expand(L, pos)), kind="reduced")

    def __repr__(self) -> str:
        anc = ", ".join(f"{co.render(T)}:{m}" for T, m in self.ancestry)
        return f"ReducedGameView(block={co.render(self.block)}, ancestry=[{anc}])"


def reduced_value(view: ReducedGameView, T: int) -> Fraction:
    return view.value(T)


def two_player_prenucleolus(game: Game) -> list[Fraction]:
    """Split the surplus over individual values equally."""
    if game.n != 2:
        raise DomainError(f"two-player formula needs n = 2, got {game.n}")
    a, b = game.value(1), game.value(2)
    half = (game.value(3) - a - b) / 2
    return [a + half, b + half]


@dataclass(frozen=True)
class SplitRecord:
    block: int
    essential: int
    epsilon: Fraction
    mass: Fraction  # nucleolus mass of ``essential``
    iterations: int
    evaluations: int


@dataclass(frozen=True)
class NucleolusResult:
    allocation: tuple[Fraction, ...]
    trace: tuple[SplitRecord, ...]
    evaluations: int = field(default=0, compare=False)
    views: tuple[ReducedGameView, ...] = field(default=(), compare=False, repr=False)


def _split(view: ReducedGameView, engine: Engine | None) -> tuple[SplitRecord, int, Fraction, Fraction]:
    lc = least_core(view.as_game(), engine=engine)
    S = co.expand(lc.essential[0], view.positions)
    mass_S = view.value(S) + lc.epsilon_star
    mass_rest = view.value(view.block) - mass_S
    rec = SplitRecord(view.block, S, lc.epsilon_star, mass_S, lc.iterations, lc.evaluations)
    return rec, S, mass_S, mass_rest


def _finish(game: Game, nu: list[Fraction], trace, views) -> NucleolusResult:
    if sum(nu, ZERO) != game.value(game.grand):
        raise ConvexityError("nucleolus components are not efficient; game not convex")
    evaluations = sum(r.evaluations for r in trace) + sum(v.evaluations for v in views)
    return NucleolusResult(tuple(nu), tuple(trace), evaluations, tuple(views))


def nucleolus_per_player(game: Game, engine: Engine | None = None) -> NucleolusResult:
    """One descent per player: keep the side of each split containing that player."""
    nu: list[Fraction] = [ZERO] * game.n
    trace: list[SplitRecord] = []
    views: list[ReducedGameView] = []
    for i in range(game.n):
        bit = 1 << i
        view = ReducedGameView(game, game.grand, (), engine)
        views.append(view)
        while view.size > 1:
            rec, S, mass_S, mass_rest = _split(view, engine)
            trace.append(rec)
            if S & bit:
                view = view.child(S, mass_rest)
            else:
                view = view.child(view.block & ~S, mass_S)
            views.append(view)
        nu[i] = view.value(bit)
    return _finish(game, nu, trace, views)


def nucleolus_divide_conquer(game: Game, engine: Engine | None = None,
                             two_player_shortcut: bool = True) -> NucleolusResult:
    """Split every block on an essential coalition and recurse on both sides."""
    nu: list[Fraction] = [ZERO] * game.n
    trace: list[SplitRecord] = []
    root = ReducedGameView(game, game.grand, (), engine)
    views = [root]
    work = deque([root])
    while work:
        view = work.popleft()
        if view.size == 1:
            nu[view.positions[0]] = view.value(view.block)
            continue
        if view.size == 2 and two_player_shortcut:
            pair = two_player_prenucleolus(view.as_game())
            for p, val in zip(view.positions, pair):
                nu[p] = val
            continue
        rec, S, mass_S, mass_rest = _split(view, engine)
        trace.append(rec)
        for child in (view.child(S, mass_rest), view.child(view.block & ~S, mass_S)):
            views.append(child)
            work.append(child)
    return _finish(game, nu, trace, views)


def kuipers_theorem12_check(game: Game, U: int, x: Sequence, S: int,
                            engine: Engine | None = None) -> tuple[Fraction, Fraction]:
    """Both sides of the (false) two-candidate shortcut for reduced values.

    ``lhs = max over Q in N - U of v(S | Q) - x(Q)``;
    ``rhs = max(v(S), v(S | (N - U)) - x(N - U))``.
    """
    grand = game.grand
    if S == 0 or S & ~U or U == grand or U & ~grand:
        raise InputError("need nonempty S inside U, and U a proper subset of N")
    xs = [Fraction(a) for a in x]
    value, _ = min_excess(game, xs, engine)  # also rejects non-preimputations
    if value < 0:
        raise InputError("x is not in the core")
    outside = grand & ~U

    def x_of(Q: int) -> Fraction:
        return sum((xs[i] for i in co.members(Q)), ZERO)

    lhs = maximize_supermodular(
        SetFunction(outside, lambda Q: game.value(S | Q) - x_of(Q)), engine).min_value
    rhs = max(game.value(S), game.value(S | outside) - x_of(outside))
    return lhs, rhs
