"""Least core value and essential coalitions of convex games, without LP solvers.

Feasibility of the epsilon-shifted core is decided by a single submodular
minimization over ``N - {s}`` (sandwich theorem applied to the two
superadditive covers). Each infeasible epsilon yields partitions ``P`` and
``Q`` that form a Farkas certificate, and the bound that certificate proves
becomes the next candidate epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import coalitions as co
from .cover import CoverResult, dual_function, superadditive_cover
from .errors import ConvexityError, DomainError, InputError
from .games import EXHAUSTIVE_BOUND, Game, TableGame
from .sfm import Engine, SetFunction, maximize_supermodular, minimize, minimize_constrained

ZERO = Fraction(0)


def shifted_game(game: Game, epsilon) -> Game:
    """``v_eps``: ``v(S) + eps`` on proper nonempty ``S``, ``v(N)`` on ``N``."""
    eps = Fraction(epsilon)
    grand = game.grand
    top = game.value(grand)

    def oracle(S: int) -> Fraction:
        return top if S == grand else game.value(S) + eps

    return Game(game.n, oracle, kind="shifted")


@dataclass(frozen=True)
class NonEmptinessOutcome:
    """Result of the sandwich test; ``min_value >= 0`` iff the core is nonempty."""

    min_value: Fraction
    witness: int
    partition_v: tuple[int, ...]
    partition_u: tuple[int, ...]
    s: int
    evaluations: int = field(default=0, compare=False)

    @property
    def core_nonempty(self) -> bool:
        return self.min_value >= 0


def core_nonempty_test(w: Game, s: int = 0, engine: Engine | None = None) -> NonEmptinessOutcome:
    """Minimize ``-cover(w)(S) - cover(u)(S)`` over ``S`` avoiding ``s``.

    ``w`` must be crossing supermodular; ``u(S) = w(N - S) - w(N)``. The
    witness is the inclusion-minimal minimizer and the partitions are the
    cover certificates at the witness.
    """
    ground = w.grand & ~(1 << s)
    co.check_within(1 << s, w.grand, "reference player")
    u = dual_function(w, s)
    covers: dict[int, tuple[CoverResult, CoverResult]] = {}

    def gap(S: int) -> Fraction:
        cv = superadditive_cover(w.value, S, ground, engine)
        cu = superadditive_cover(u, S, ground, engine)
        covers[S] = (cv, cu)
        return -cv.value - cu.value

    res = minimize(SetFunction(ground, gap), engine)
    cv, cu = covers[res.minimizer]
    inner = sum(a.evaluations + b.evaluations for a, b in covers.values())
    return NonEmptinessOutcome(res.min_value, res.minimizer, cv.partition, cu.partition, s,
                               res.evaluations + inner)


@dataclass(frozen=True)
class FarkasCertificate:
    """Coalition weights ``lambda_S`` (sparse) for the alternative system."""

    n: int
    weights: dict[int, Fraction]

    def balanced(self) -> bool:
        """Every player is covered with total weight zero."""
        for i in range(self.n):
            bit = 1 << i
            if sum((lam for S, lam in self.weights.items() if S & bit), ZERO) != 0:
                return False
        return True

    def nonnegative(self) -> bool:
        grand = co.full(self.n)
        return all(lam >= 0 for S, lam in self.weights.items() if S != grand)

    def objective(self, game: Game, epsilon) -> Fraction:
        eps = Fraction(epsilon)
        grand = game.grand
        total = ZERO
        for S, lam in self.weights.items():
            total += lam * (game.value(grand) if S == grand else game.value(S) + eps)
        return total

    def proves_infeasible(self, game: Game, epsilon) -> bool:
        """The weights solve the alternative system with strict objective."""
        return self.balanced() and self.nonnegative() and self.objective(game, epsilon) > 0


def _check_proper_partition(blocks: Sequence[int]) -> int:
    union = 0
    for B in blocks:
        if B == 0:
            raise InputError("partition contains an empty block")
        if union & B:
            raise InputError("partition blocks overlap")
        union |= B
    return union


def farkas_certificate(P: Sequence[int], Q: Sequence[int], n: int) -> FarkasCertificate:
    """``lambda = 1`` on blocks of ``P`` and complements of blocks of ``Q``; ``-|Q|`` on ``N``."""
    grand = co.full(n)
    union_p = _check_proper_partition(P)
    union_q = _check_proper_partition(Q)
    if union_p != union_q:
        raise InputError("P and Q partition different sets")
    if union_p == 0:
        raise InputError("partitions of the empty set carry no certificate")
    if union_p == grand:
        raise InputError("partitioned set must avoid a reference player")
    co.check_within(union_p, grand)
    weights: dict[int, Fraction] = {}
    for B in P:
        weights[B] = weights.get(B, ZERO) + 1
    for B in Q:
        C = grand & ~B
        weights[C] = weights.get(C, ZERO) + 1
    weights[grand] = Fraction(-len(Q))
    return FarkasCertificate(n, weights)


def _double_greedy(w, n: int) -> Fraction:
    """Deterministic two-sided greedy for unconstrained submodular maximization."""
    X, Y = 0, co.full(n)
    for i in range(n):
        bit = 1 << i
        gain_add = w(X | bit) - w(X)
        gain_drop = w(Y & ~bit) - w(Y)
        if gain_add >= gain_drop:
            X |= bit
        else:
            Y &= ~bit
    return w(X)


def bound_M(game: Game, mode: str | None = None, engine: Engine | None = None) -> Fraction:
    """A value strictly above ``max |v(T)|``.

    ``"exact"`` enumerates the table. ``"oracle"`` takes ``A = max v`` by
    supermodular maximization and ``C`` from the two-sided greedy on the
    nonnegative submodular ``A - v`` (a 1/3-approximation), giving
    ``max(A, 3C - A) + 1``.
    """
    if mode is None:
        mode = "exact" if isinstance(game, TableGame) else "oracle"
    if mode == "exact":
        if not isinstance(game, TableGame) and game.n > EXHAUSTIVE_BOUND:
            raise InputError(f"exact bound needs a table or n <= {EXHAUSTIVE_BOUND}")
        return max(abs(a) for a in game.values()) + 1
    if mode != "oracle":
        raise InputError(f"unknown bound mode {mode!r}")
    A = maximize_supermodular(SetFunction(game.grand, game.value), engine).min_value
    C = _double_greedy(lambda T: A - game.value(T), game.n)
    return max(A, 3 * C - A) + 1


@dataclass(frozen=True)
class IterationRecord:
    epsilon: Fraction
    witness: int
    blocks: int  # |P| + |Q|
    min_value: Fraction
    terminating: bool
    evaluations: int = 0


@dataclass(frozen=True)
class LeastCoreResult:
    epsilon_star: Fraction
    essential: tuple[int, ...]
    dual: dict[int, Fraction]
    trace: tuple[IterationRecord, ...]
    partition_v: tuple[int, ...]
    partition_u: tuple[int, ...]
    s: int
    bound: Fraction
    evaluations: int

    @property
    def iterations(self) -> int:
        return len(self.trace)


def _next_epsilon(game: Game, P, Q) -> Fraction:
    grand = game.grand
    num = len(Q) * game.value(grand)
    num -= sum((game.value(B) for B in P), ZERO)
    num -= sum((game.value(grand & ~B) for B in Q), ZERO)
    return num / (len(P) + len(Q))


def least_core(game: Game, s: int = 0, engine: Engine | None = None,
               bound: str | None = None) -> LeastCoreResult:
    """Least core value of a convex game by the Farkas-driven descent.

    Starts at ``2M`` and moves to the bound proved by each certificate until
    the shifted core becomes nonempty. At termination the previous witness is
    reused (it is tight at the final epsilon) to read off ``P``, ``Q``, the
    essential coalitions ``P + {N - B : B in Q}`` and optimal dual weights.
    """
    n = game.n
    if n < 2:
        raise DomainError("least core needs at least two players")
    co.check_within(1 << s, game.grand, "reference player")
    grand = game.grand
    M = bound_M(game, bound, engine)
    eps = 2 * M
    trace: list[IterationRecord] = []
    prev: NonEmptinessOutcome | None = None
    evaluations = 0
    try:
        while True:
            w = shifted_game(game, eps)
            out = core_nonempty_test(w, s, engine)
            evaluations += out.evaluations
            if out.core_nonempty:
                if prev is None:
                    raise DomainError(f"initial epsilon {eps} is already feasible")
                witness = prev.witness
                ground = grand & ~(1 << s)
                cv = superadditive_cover(w.value, witness, ground, engine)
                cu = superadditive_cover(dual_function(w, s), witness, ground, engine)
                evaluations += cv.evaluations + cu.evaluations
                if cv.value + cu.value != 0:
                    raise ConvexityError("carried-forward witness is not tight at the final epsilon")
                P, Q = cv.partition, cu.partition
                trace.append(IterationRecord(eps, witness, len(P) + len(Q), out.min_value, True,
                                             out.evaluations))
                break
            P, Q = out.partition_v, out.partition_u
            trace.append(IterationRecord(eps, out.witness, len(P) + len(Q), out.min_value, False,
                                         out.evaluations))
            if len(trace) > 2 * n - 3:
                raise ConvexityError(f"no termination within {2 * n - 2} iterations; game not convex")
            prev = out
            eps = _next_epsilon(game, P, Q)
    except ConvexityError:
        raise
    except DomainError as exc:
        raise ConvexityError(str(exc)) from exc

    if _next_epsilon(game, P, Q) != eps:
        raise ConvexityError("terminal certificate does not reproduce epsilon")
    k = len(P) + len(Q)
    essential = tuple(sorted(set(P) | {grand & ~B for B in Q}))
    dual = {S: Fraction(-1, k) for S in essential}
    dual[grand] = Fraction(len(Q), k)
    return LeastCoreResult(eps, essential, dual, tuple(trace), P, Q, s, M, evaluations)


def min_excess(game: Game, x: Sequence, engine: Engine | None = None) -> tuple[Fraction, int]:
    """Smallest ``x(S) - v(S)`` over proper nonempty ``S``, by ``n(n-1)`` constrained SFMs.

    Returns the value and the coalition attaining it first in ``(i, j)``
    order, where ``i`` is forced in and ``j`` forced out.
    """
    n = game.n
    if n < 2:
        raise DomainError("excesses need at least two players")
    xs = [Fraction(a) for a in x]
    if len(xs) != n or sum(xs, ZERO) != game.value(game.grand):
        raise InputError("x is not a preimputation")

    def excess(S: int) -> Fraction:
        return sum((xs[i] for i in co.members(S)), ZERO) - game.value(S)

    f = SetFunction(game.grand, excess)
    best: tuple[Fraction, int] | None = None
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            res = minimize_constrained(f, 1 << i, 1 << j, engine)
            if best is None or res.min_value < best[0]:
                best = (res.min_value, res.minimizer)
    return best
