"""Brute-force ground truth: every coalition written out as an LP row.

Nothing here uses submodularity; these routines are the independent side of
every cross-check against the combinatorial solvers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import coalitions as co
from .errors import DomainError, InputError, SizeError, VerificationError
from .games import Game
from .lp import LinearProgram, LPResult, lp_solve, rank

ZERO = Fraction(0)
ORACLE_BOUND = 8


def _check_size(game: Game, max_n: int) -> None:
    if game.n > max_n:
        raise SizeError(f"oracle limited to n <= {max_n}, got n={game.n}")


def _indicator(S: int, n: int, extra: Sequence[Fraction] = ()) -> list[Fraction]:
    return [Fraction(S >> i & 1) for i in range(n)] + list(extra)


def _proper(game: Game) -> range:
    return range(1, game.grand)


def least_core_lp(game: Game, fixed: dict[int, Fraction] | None = None,
                  free: Sequence[int] | None = None) -> LinearProgram:
    """``max t`` s.t. ``x(S) - t >= v(S)`` on ``free``, ``x(S) = v(S) + e_S`` on ``fixed``.

    With the defaults this is the least-core LP; variables are ``x_0..x_{n-1}, t``.
    """
    n = game.n
    fixed = fixed or {}
    free = _proper(game) if free is None else free
    lp = LinearProgram(n + 1, [ZERO] * n + [Fraction(1)])
    for S in free:
        lp.add_row(_indicator(S, n, [-1]), ">=", game.value(S))
    for S, e in fixed.items():
        lp.add_row(_indicator(S, n, [0]), "=", game.value(S) + e)
    lp.add_row(_indicator(game.grand, n, [0]), "=", game.value(game.grand))
    return lp


def least_core_dual_lp(game: Game) -> LinearProgram:
    """Dual of the least-core LP in ``y_S = -mu_S >= 0`` and free ``mu_N``.

    Variables: one ``y`` per proper nonempty coalition (mask order), then ``mu_N``.
    Minimizes ``-sum y_S v(S) + mu_N v(N)``.
    """
    n = game.n
    props = list(_proper(game))
    k = len(props)
    obj = [-game.value(S) for S in props] + [game.value(game.grand)]
    lp = LinearProgram(k + 1, obj, maximize=False, nonneg=frozenset(range(k)))
    for i in range(n):
        lp.add_row([Fraction(-(S >> i & 1)) for S in props] + [1], "=", 0)
    lp.add_row([1] * k + [0], "=", 1)
    return lp


def brute_least_core(game: Game, max_n: int = ORACLE_BOUND) -> tuple[Fraction, list[Fraction]]:
    """Least core value and one least-core point from the full LP."""
    _check_size(game, max_n)
    if game.n < 2:
        raise DomainError("least core needs at least two players")
    res = lp_solve(least_core_lp(game))
    if not res.optimal:
        raise VerificationError(f"least-core LP reported {res.status}")
    return res.point[-1], list(res.point[:-1])


def _max_coalition_value(game: Game, S: int, floor: Fraction, fixed: dict[int, Fraction],
                         free: Sequence[int]) -> LPResult:
    """``max x(S)`` over preimputations with ``x(T) >= v(T) + floor`` on ``free``."""
    n = game.n
    lp = LinearProgram(n, _indicator(S, n))
    for T in free:
        lp.add_row(_indicator(T, n), ">=", game.value(T) + floor)
    for T, e in fixed.items():
        lp.add_row(_indicator(T, n), "=", game.value(T) + e)
    lp.add_row(_indicator(game.grand, n), "=", game.value(game.grand))
    return lp_solve(lp)


def brute_essential(game: Game, S: int, max_n: int = ORACLE_BOUND,
                    epsilon: Fraction | None = None) -> bool:
    """Whether ``x(S) = v(S) + eps*`` at every least-core point."""
    _check_size(game, max_n)
    if S <= 0 or S >= game.grand:
        raise InputError("essential coalitions are proper and nonempty")
    if epsilon is None:
        epsilon, _ = brute_least_core(game, max_n)
    res = _max_coalition_value(game, S, epsilon, {}, list(_proper(game)))
    if not res.optimal:
        raise VerificationError(f"tightness LP reported {res.status}")
    return res.value == game.value(S) + epsilon


def brute_essential_all(game: Game, max_n: int = ORACLE_BOUND) -> list[int]:
    eps, _ = brute_least_core(game, max_n)
    return [S for S in _proper(game) if brute_essential(game, S, max_n, eps)]


def brute_nucleolus(game: Game, max_n: int = ORACLE_BOUND) -> list[Fraction]:
    """Sequential LPs: raise the smallest free excess, freeze what is tight in every optimum."""
    _check_size(game, max_n)
    n = game.n
    if n == 1:
        return [game.value(1)]
    fixed: dict[int, Fraction] = {}
    free = list(_proper(game))
    vectors = [_indicator(game.grand, n)]
    while True:
        res = lp_solve(least_core_lp(game, fixed, free))
        if not res.optimal:
            raise VerificationError(f"sequential LP reported {res.status}")
        t = res.point[-1]
        x = res.point[:-1]

        def excess(T: int, x=x) -> Fraction:
            return sum((x[i] for i in co.members(T)), ZERO) - game.value(T)

        candidates = [S for S in free if excess(S) == t]
        loose: set[int] = set()
        tight = []
        for S in candidates:
            if S in loose:
                continue
            probe = _max_coalition_value(game, S, t, fixed, free)
            if probe.value == game.value(S) + t:
                tight.append(S)
            else:
                px = probe.point
                for T in candidates:
                    if sum((px[i] for i in co.members(T)), ZERO) - game.value(T) > t:
                        loose.add(T)
        if not tight:
            raise VerificationError("no coalition became tight; sequential LP stalled")
        for S in tight:
            fixed[S] = t
            vectors.append(_indicator(S, n))
        tight_set = set(tight)
        free = [S for S in free if S not in tight_set]
        if rank(vectors) == n or not free:
            return list(x)


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """Every partition of ``items`` into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def brute_superadditive_cover(v: Callable[[int], Fraction], S: int, max_size: int = 10) -> Fraction:
    """Maximum of ``sum v(block)`` over all partitions of ``S``."""
    elems = co.members(S)
    if len(elems) > max_size:
        raise SizeError(f"partition enumeration limited to {max_size} elements")
    if not elems:
        return ZERO
    best = None
    for part in set_partitions(elems):
        total = sum((v(co.from_members(b)) for b in part), ZERO)
        if best is None or total > best:
            best = total
    return best


def excess_vector(game: Game, x: Sequence, max_n: int = ORACLE_BOUND) -> list[Fraction]:
    """Sorted excesses ``x(S) - v(S)`` over proper nonempty coalitions."""
    _check_size(game, max_n)
    xs = [Fraction(a) for a in x]
    if len(xs) != game.n:
        raise InputError("allocation length does not match the game")
    sums = [ZERO] * (game.grand + 1)
    for S in range(1, game.grand + 1):
        low = S & -S
        sums[S] = sums[S ^ low] + xs[low.bit_length() - 1]
    return sorted(sums[S] - game.value(S) for S in _proper(game))


def lex_compare(a: Sequence[Fraction], b: Sequence[Fraction]) -> int:
    """-1, 0 or 1 as ``a`` is lexicographically below, equal to, or above ``b``."""
    for p, q in zip(a, b):
        if p != q:
            return -1 if p < q else 1
    return (len(a) > len(b)) - (len(a) < len(b))


def system_p_feasible(game: Game, epsilon) -> bool:
    """Is there a preimputation with ``x(S) >= v(S) + eps`` on every proper coalition?"""
    n = game.n
    eps = Fraction(epsilon)
    lp = LinearProgram(n, [ZERO] * n)
    for S in _proper(game):
        lp.add_row(_indicator(S, n), ">=", game.value(S) + eps)
    lp.add_row(_indicator(game.grand, n), "=", game.value(game.grand))
    return lp_solve(lp).optimal


def core_contains(game: Game, x: Sequence) -> bool:
    xs = [Fraction(a) for a in x]
    if sum(xs, ZERO) != game.value(game.grand):
        return False
    return all(sum((xs[i] for i in co.members(S)), ZERO) >= game.value(S) for S in _proper(game))
