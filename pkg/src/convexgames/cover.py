"""Superadditive covers of intersecting supermodular set functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import coalitions as co
from .errors import DomainError
from .games import Game
from .sfm import Engine, SetFunction, maximize_supermodular

ZERO = Fraction(0)


@dataclass(frozen=True)
class CoverResult:
    """``value`` is the cover at ``S``; ``partition`` is a proper partition attaining it."""

    value: Fraction
    partition: tuple[int, ...]
    evaluations: int = field(default=0, compare=False)

    @property
    def blocks(self) -> int:
        return len(self.partition)


def superadditive_cover(v: Callable[[int], Fraction], S: int, ground: int | None = None,
                        engine: Engine | None = None) -> CoverResult:
    """Max of ``sum v(P)`` over proper partitions of ``S``, by greedy-then-merge.

    ``v`` must be intersecting supermodular on ``S``. Each member ``i`` of ``S``
    (in increasing order) gets the largest ``v(U) - x(U - i)`` over ``U``
    containing ``i`` inside the prefix up to ``i``; the argmax sets are then
    merged while any two of them overlap. The merged family is a partition
    whose value equals ``x(S)``, which upper-bounds every partition.
    """
    if ground is None:
        ground = getattr(v, "ground", None)
        if ground is None and isinstance(v, Game):
            ground = v.grand
    if ground is not None:
        co.check_within(S, ground)
    if S == 0:
        return CoverResult(ZERO, ())

    x: dict[int, Fraction] = {}
    tight: list[int] = []
    evaluations = 0
    prefix = 0
    for i in co.members(S):
        bit = 1 << i

        def gain(U: int, bit=bit) -> Fraction:
            return v(U | bit) - sum((x[j] for j in co.members(U)), ZERO)

        res = maximize_supermodular(SetFunction(prefix, gain), engine)
        evaluations += res.evaluations
        x[i] = res.min_value
        tight.append(res.minimizer | bit)
        prefix |= bit

    family = _merge_overlapping(tight)
    value = sum((v(T) for T in family), ZERO)
    if value != sum(x.values(), ZERO):
        raise DomainError(f"cover of {co.render(S)} inconsistent; v is not intersecting supermodular on S")
    return CoverResult(value, tuple(sorted(family)), evaluations)


def _merge_overlapping(family: list[int]) -> list[int]:
    family = list(family)
    merged = True
    while merged:
        merged = False
        for a in range(len(family)):
            for b in range(a + 1, len(family)):
                if family[a] & family[b]:
                    family[a] |= family.pop(b)
                    merged = True
                    break
            if merged:
                break
    return family


def dual_function(w: Game, s: int = 0) -> SetFunction:
    """``u(S) = w(N - S) - w(N)`` on subsets of ``N - {s}``."""
    grand = w.grand
    co.check_within(1 << s, grand, "reference player")
    top = w.value(grand)
    return SetFunction(grand & ~(1 << s), lambda S: w.value(grand & ~S) - top)


def refine_family(family, v: Callable[[int], Fraction] | None = None) -> list[int]:
    """Uncross a multiset of sets until it is laminar.

    Any two members ``X, Y`` that intersect without being nested are replaced
    by ``X | Y`` and ``X & Y``; element multiplicities are preserved and
    ``sum |U| |N - U|`` strictly drops, so this terminates. With ``v`` given,
    the running total ``sum v(U)`` is checked never to decrease, which holds
    whenever ``v`` is intersecting supermodular.
    """
    fam = list(family)
    total = sum((v(U) for U in fam), ZERO) if v is not None else None
    while True:
        pair = _first_crossing(fam)
        if pair is None:
            return fam
        a, b = pair
        X, Y = fam[a], fam[b]
        fam[a], fam[b] = X | Y, X & Y
        if v is not None:
            new_total = sum((v(U) for U in fam), ZERO)
            if new_total < total:
                raise DomainError(f"uncrossing {co.render(X)}, {co.render(Y)} decreased the total")
            total = new_total


def _first_crossing(fam: list[int]) -> tuple[int, int] | None:
    for a in range(len(fam)):
        X = fam[a]
        for b in range(a + 1, len(fam)):
            Y = fam[b]
            if X & Y and X & ~Y and Y & ~X:
                return a, b
    return None


def crossing_potential(fam, ground: int) -> int:
    """``sum |U| |ground - U|``: the quantity uncrossing strictly decreases."""
    return sum(co.size(U) * co.size(ground & ~U) for U in fam)
