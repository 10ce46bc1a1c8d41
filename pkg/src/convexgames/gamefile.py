"""JSON game files.

Layout::

    {"players": 3, "default": "0", "values": {"1,2": "1", "1,2,3": "5/2"}}

Keys are comma-separated 1-based player lists (order is canonicalized),
values are rational strings. Unlisted nonempty coalitions take ``default``;
the grand coalition must be listed and the empty set never is.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import coalitions as co
from . import rationals
from .errors import InputError, SizeError
from .games import TABLE_BOUND, Game, TableGame

_ALLOWED = {"players", "default", "values", "meta"}


def parse_game(doc: dict) -> TableGame:
    if not isinstance(doc, dict):
        raise InputError("game file must be a JSON object")
    unknown = set(doc) - _ALLOWED
    if unknown:
        raise InputError(f"unknown game-file fields: {sorted(unknown)}")
    n = doc.get("players")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"'players' must be a positive integer, got {n!r}")
    if n > TABLE_BOUND:
        raise SizeError(f"game files are limited to {TABLE_BOUND} players")
    default = doc.get("default", "0")
    if not isinstance(default, str):
        raise InputError("'default' must be a rational string")
    values = doc.get("values")
    if not isinstance(values, dict):
        raise InputError("'values' must be an object")
    table: dict[int, object] = {}
    for k, val in values.items():
        S = co.parse_key(k, n)
        if S in table:
            raise InputError(f"coalition {co.render(S)} listed twice")
        if not isinstance(val, str):
            raise InputError(f"value of {k!r} must be a rational string, got {val!r}")
        table[S] = rationals.parse(val)
    if co.full(n) not in table:
        raise InputError("grand coalition value is missing")
    return TableGame.from_dict(n, table, rationals.parse(default))


def load_game(path: str | Path) -> TableGame:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    return parse_game(doc)


def emit_game(game: Game, default="0", meta: dict | None = None) -> dict:
    """Game-file dict listing every coalition whose value differs from ``default``."""
    dflt = rationals.parse(default) if isinstance(default, str) else default
    vals = game.values()
    order = sorted(range(1, game.grand + 1), key=lambda S: (co.size(S), co.members(S)))
    values = {}
    for S in order:
        if vals[S] != dflt or S == game.grand:
            values[co.key(S)] = rationals.render(vals[S])
    doc = {"players": game.n, "default": rationals.render(dflt), "values": values}
    if meta:
        doc["meta"] = meta
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def digest(game: Game) -> str:
    """Content hash of the canonical form of ``game`` (formatting-independent)."""
    canon = json.dumps(emit_game(game), separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()
