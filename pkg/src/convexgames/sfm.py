"""Submodular function minimization behind a pluggable engine.

The default engine enumerates every subset of the ground set. It is exact and
engine-independent in its answer: among all minimizers it returns the
inclusion-wise minimal one, which is unique for submodular functions since
minimizers are closed under intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Protocol

from . import coalitions as co
from .errors import DomainError, InputError, SizeError


@dataclass(frozen=True)
class SetFunction:
    """A set function on the submasks of ``ground``."""

    ground: int
    fn: Callable[[int], Fraction]

    def __call__(self, S: int) -> Fraction:
        return self.fn(S)


@dataclass(frozen=True)
class SfmResult:
    minimizer: int
    min_value: Fraction
    evaluations: int


class Engine(Protocol):
    def minimize(self, f: SetFunction) -> SfmResult: ...


class BruteForceSFM:
    """Exhaustive minimization over all ``2**k`` subsets, ``k <= max_ground``."""

    def __init__(self, max_ground: int = 22):
        self.max_ground = max_ground

    def minimize(self, f: SetFunction) -> SfmResult:
        ground = f.ground
        k = co.size(ground)
        if k > self.max_ground:
            raise SizeError(f"brute-force SFM limited to {self.max_ground} elements, got {k}")
        fn = f.fn
        best = fn(0)
        meet = 0
        count = 1
        sub = 0
        while sub != ground:
            sub = (sub - ground) & ground
            val = fn(sub)
            count += 1
            if val < best:
                best = val
                meet = sub
            elif val == best:
                meet &= sub
        # minimizers of a submodular function form a lattice; the meet is one
        check = fn(meet)
        count += 1
        if check != best:
            raise DomainError("set function is not submodular: minimizers not closed under intersection")
        return SfmResult(meet, best, count)


DEFAULT_ENGINE = BruteForceSFM()


def minimize(f: SetFunction, engine: Engine | None = None) -> SfmResult:
    """Minimize a submodular ``f``; returns the inclusion-minimal minimizer."""
    return (engine or DEFAULT_ENGINE).minimize(f)


def minimize_constrained(f: SetFunction, forced_in: int = 0, forced_out: int = 0,
                         engine: Engine | None = None) -> SfmResult:
    """Minimize over sets containing ``forced_in`` and avoiding ``forced_out``."""
    if forced_in & forced_out:
        raise InputError("forced_in and forced_out overlap")
    co.check_within(forced_in, f.ground, "forced_in")
    co.check_within(forced_out, f.ground, "forced_out")
    free = f.ground & ~(forced_in | forced_out)
    fn = f.fn
    res = minimize(SetFunction(free, lambda T: fn(T | forced_in)), engine)
    return SfmResult(res.minimizer | forced_in, res.min_value, res.evaluations)


def maximize_supermodular(g: SetFunction, engine: Engine | None = None) -> SfmResult:
    """Maximize a supermodular ``g`` by minimizing ``-g``.

    ``minimizer`` holds the (inclusion-minimal) maximizer and ``min_value`` the
    maximum value.
    """
    fn = g.fn
    res = minimize(SetFunction(g.ground, lambda S: -fn(S)), engine)
    return SfmResult(res.minimizer, -res.min_value, res.evaluations)
