"""Deterministic finite-state games and the action of words on their states.

A game has ``n`` states ``0..n-1``, an alphabet ``0..b-1`` of buttons and a
total transition table ``delta`` of shape ``(n, b)``.  One state is
designated the win state; a well-formed game has it as a sink.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from syncwin.errors import LetterOutOfRange, MalformedTable, TooLarge

#: Default cap on the number of states a :class:`Game` may have.
MAX_STATES = 1 << 20

Word = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Game:
    n: int
    b: int
    delta: np.ndarray
    win: int
    max_states: int = field(default=MAX_STATES, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.b < 1:
            raise MalformedTable(f"need n >= 1 and b >= 1, got n={self.n} b={self.b}")
        if self.n > self.max_states:
            raise TooLarge(f"n={self.n} exceeds the state cap {self.max_states}")
        try:
            raw = np.asarray(self.delta)
            table = raw.astype(np.int64)
        except (ValueError, TypeError) as exc:
            raise MalformedTable(f"ragged or non-integer table: {exc}") from None
        if raw.dtype.kind not in "iu" and not np.array_equal(raw, table):
            raise MalformedTable("table entries must be integers")
        if table.shape != (self.n, self.b):
            raise MalformedTable(f"table has shape {table.shape}, expected {(self.n, self.b)}")
        if table.size and (table.min() < 0 or table.max() >= self.n):
            bad = np.argwhere((table < 0) | (table >= self.n))[0]
            raise MalformedTable(
                f"entry delta({bad[0]}, {bad[1]}) = {table[tuple(bad)]} outside [0, {self.n})"
            )
        if not 0 <= self.win < self.n:
            raise MalformedTable(f"win state {self.win} outside [0, {self.n})")
        table = np.ascontiguousarray(table, dtype=np.int32)
        table.setflags(write=False)
        object.__setattr__(self, "delta", table)

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (self.n, self.b, self.win) == (other.n, other.b, other.win) and np.array_equal(
            self.delta, other.delta
        )

    def __hash__(self):
        return hash((self.n, self.b, self.win, self.delta.tobytes()))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], win: int = 0) -> Game:
        rows = [list(r) for r in rows]
        b = len(rows[0]) if rows else 0
        if any(len(r) != b for r in rows):
            raise MalformedTable("rows have different lengths")
        return cls(len(rows), b, rows, win)


class StateSet:
    """A subset of ``[0, n)`` stored as little-endian 64-bit blocks."""

    __slots__ = ("n", "blocks")

    def __init__(self, n: int, blocks: np.ndarray | None = None):
        self.n = n
        nblocks = (n + 63) // 64
        if blocks is None:
            blocks = np.zeros(nblocks, dtype=np.uint64)
        self.blocks = blocks

    @classmethod
    def from_states(cls, n: int, states: Iterable[int]) -> StateSet:
        idx = np.fromiter(states, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise ValueError(f"state outside [0, {n})")
        mask = np.zeros(((n + 63) // 64) * 64, dtype=bool)
        mask[idx] = True
        return cls(n, np.packbits(mask, bitorder="little").view(np.uint64).copy())

    @classmethod
    def full(cls, n: int) -> StateSet:
        return cls.from_states(n, range(n))

    def members(self) -> np.ndarray:
        bits = np.unpackbits(self.blocks.view(np.uint8), bitorder="little")
        return np.flatnonzero(bits[: self.n])

    def to_mask(self) -> int:
        """Membership as a Python integer, bit ``i`` set for state ``i``."""
        return int.from_bytes(self.blocks.tobytes(), "little")

    def __iter__(self):
        return iter(self.members().tolist())

    def __len__(self):
        return int(np.bitwise_count(self.blocks).sum())

    def __contains__(self, v):
        if not 0 <= v < self.n:
            return False
        return bool((int(self.blocks[v >> 6]) >> (v & 63)) & 1)

    def __eq__(self, other):
        if not isinstance(other, StateSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.blocks, other.blocks)

    def __repr__(self):
        return f"StateSet({self.n}, {{{', '.join(map(str, self))}}})"


@dataclass(frozen=True)
class ValidationReport:
    total: bool
    win_is_sink: bool
    sinks: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.total and self.win_is_sink


def sink_states(game: Game) -> tuple[int, ...]:
    fixed = (game.delta == np.arange(game.n, dtype=np.int32)[:, None]).all(axis=1)
    return tuple(np.flatnonzero(fixed).tolist())


def validate(game: Game) -> ValidationReport:
    """Report totality, whether the win state is a sink, and every sink.

    Range and shape errors surface earlier, as :class:`MalformedTable`
    from the :class:`Game` constructor, so ``total`` is always true for a
    constructed game.  Several sinks mean hard-locks exist.
    """
    sinks = sink_states(game)
    return ValidationReport(total=True, win_is_sink=game.win in sinks, sinks=sinks)


def _check_letters(game: Game, word) -> np.ndarray:
    letters = np.asarray(word, dtype=np.int64).reshape(-1)
    if letters.size and (letters.min() < 0 or letters.max() >= game.b):
        bad = letters[(letters < 0) | (letters >= game.b)][0]
        raise LetterOutOfRange(f"letter {bad} outside [0, {game.b})")
    return letters


def apply_letter(game: Game, v: int, letter: int) -> int:
    return int(game.delta[v, letter])


def apply_word(game: Game, v: int, word: Sequence[int]) -> int:
    letters = _check_letters(game, word)
    rows = game.delta
    for letter in letters.tolist():
        v = rows[v, letter]
    return int(v)


def image_set(game: Game, states: StateSet, word: Sequence[int]) -> StateSet:
    """The set ``{apply_word(v, word) : v in states}``."""
    letters = _check_letters(game, word)
    current = states.members()
    for letter in letters.tolist():
        current = np.unique(game.delta[current, letter])
    return StateSet.from_states(game.n, current.tolist())


def parse_word(text: str) -> Word:
    """Parse ``"0110"`` or ``"0,1,12"`` into a tuple of letters."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(ch) for ch in text)


def format_word(word: Sequence[int], b: int) -> str:
    if b <= 10:
        return "".join(str(x) for x in word)
    return ",".join(str(x) for x in word)


# -- text format ------------------------------------------------------------

_COMMENT = re.compile(r"#.*")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).strip()
        if line:
            yield lineno, line.split()


def _ints(tokens, lineno):
    try:
        return [int(t, 10) for t in tokens]
    except ValueError:
        raise MalformedTable(f"line {lineno}: non-integer token in {' '.join(tokens)!r}") from None


def parse_game(text: str, max_states: int = MAX_STATES) -> Game:
    """Parse the line-oriented ``game <n> <b> <win>`` format strictly."""
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedTable("empty game file")
    lineno, header = lines[0]
    if len(header) != 4 or header[0] != "game":
        raise MalformedTable(f"line {lineno}: expected 'game <n> <b> <win>'")
    n, b, win = _ints(header[1:], lineno)
    if n < 1 or b < 1:
        raise MalformedTable(f"line {lineno}: need n >= 1 and b >= 1")
    body = lines[1:]
    if len(body) != n:
        raise MalformedTable(f"expected {n} table rows, found {len(body)}")
    rows = []
    for lineno, tokens in body:
        if len(tokens) != b:
            raise MalformedTable(f"line {lineno}: expected {b} entries, found {len(tokens)}")
        rows.append(_ints(tokens, lineno))
    return Game(n, b, rows, win, max_states=max_states)


def load_game(path, max_states: int = MAX_STATES) -> Game:
    return parse_game(Path(path).read_text(encoding="ascii"), max_states=max_states)


def format_game(game: Game, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"game {game.n} {game.b} {game.win}")
    out.extend(" ".join(map(str, row)) for row in game.delta.tolist())
    return "\n".join(out) + "\n"
