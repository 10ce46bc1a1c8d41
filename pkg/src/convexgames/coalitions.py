"""Coalitions as integer bitmasks.

Player ``i`` (0-based internally, ``i + 1`` when rendered) is bit ``1 << i``.
Every algorithm in the package passes plain ``int`` masks around; this module
holds the handful of helpers needed to build, walk and print them.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InputError


def full(n: int) -> int:
    """Mask of the grand coalition on ``n`` players."""
    return (1 << n) - 1


def from_members(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        if i < 0:
            raise InputError(f"negative player index {i}")
        mask |= 1 << i
    return mask


def members(mask: int) -> list[int]:
    """0-based player indices in ``mask``, increasing."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def size(mask: int) -> int:
    return bin(mask).count("1")


def subsets(ground: int) -> Iterator[int]:
    """All submasks of ``ground`` in increasing numeric order, starting at 0."""
    sub = 0
    while True:
        yield sub
        if sub == ground:
            return
        sub = (sub - ground) & ground


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def check_within(mask: int, ground: int, what: str = "coalition") -> None:
    if mask < 0 or mask & ~ground:
        raise InputError(f"{what} {render(mask)} is not within ground set {render(ground)}")


def render(mask: int) -> str:
    """Human form with 1-based players, e.g. ``{1,3}``."""
    return "{" + ",".join(str(i + 1) for i in members(mask)) + "}"


def key(mask: int) -> str:
    """Game-file key: comma-separated sorted 1-based indices (``"1,2,3"``)."""
    return ",".join(str(i + 1) for i in members(mask))


def parse_key(text: str, n: int) -> int:
    """Inverse of :func:`key`; order is canonicalized, duplicates are rejected."""
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise InputError(f"empty coalition key {text!r}")
    mask = 0
    for p in parts:
        if not p.isdigit():
            raise InputError(f"bad player index {p!r} in key {text!r}")
        i = int(p)
        if not 1 <= i <= n:
            raise InputError(f"player {i} out of range 1..{n} in key {text!r}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise InputError(f"duplicate player {i} in key {text!r}")
        mask |= bit
    return mask


def expand(local: int, positions: list[int]) -> int:
    """Map a mask over ``0..k-1`` onto the players listed in ``positions``.

    ``positions`` must be increasing, so the map preserves numeric order.
    """
    out = 0
    j = 0
    while local:
        if local & 1:
            out |= 1 << positions[j]
        local >>= 1
        j += 1
    return out


def compress(mask: int, positions: list[int]) -> int:
    """Inverse of :func:`expand` on masks contained in ``positions``."""
    out = 0
    for j, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << j
    return out
