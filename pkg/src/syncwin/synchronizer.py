"""Winning (sink-synchronizing) words.

Three routes to a word that sends every state to the win state:

* :func:`synthesize_greedy` appends per-state shortest winning words until
  the image of the whole state set collapses onto the win state;
* :func:`shortest_sync_word_exact` runs breadth-first search on the subset
  automaton and is exact but exponential, so it is capped at 24 states;
* :func:`universal_sequence` concatenates every word of a given length,
  which wins blindly once the length reaches the greedy word's.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from typing import Iterator

import numpy as np

from syncwin._backend import kernels
from syncwin.errors import MalformedTable, NotWinReducible, TooLarge
from syncwin.game import Game, StateSet, Word, image_set, validate
from syncwin.reachability import WinningWordTable, analyze, is_win_reducible, winning_word

#: Largest state count the subset-automaton search accepts.
EXACT_MAX_STATES = 24


class Order(str, enum.Enum):
    GREEDY = "greedy"
    PAPER = "paper"


class Target(str, enum.Enum):
    SINK_ONLY = "sink"
    ANY_SINGLETON = "any"


@dataclass(frozen=True)
class Round:
    picked: int
    appended: int
    image_size: int


@dataclass(frozen=True)
class SyncResult:
    word: Word
    rounds: int
    per_round: tuple[Round, ...] = field(default=())

    def __len__(self):
        return len(self.word)


def synthesize_greedy(
    game: Game, table: WinningWordTable | None = None, order: Order | str = Order.GREEDY
) -> SyncResult:
    """Build a winning word by repeatedly sending one surviving state home.

    With ``order="greedy"`` each round picks, among the states still in the
    image, the one farthest from the win state (smallest index on ties).
    With ``order="paper"`` the original states are visited in index order
    and each one's current image is sent home, as in the textbook proof.
    Every round removes at least one state from the image, so the word has
    length at most ``(n - 1)**2``.
    """
    order = Order(order)
    if not validate(game).win_is_sink:
        raise MalformedTable(f"win state {game.win} is not a sink")
    if table is None:
        table = analyze(game)
    if not is_win_reducible(table):
        raise NotWinReducible("some state cannot reach the win state")

    delta = game.delta
    word: list[int] = []
    rounds: list[Round] = []
    mark = np.zeros(game.n, dtype=bool)

    def send_home(v, tracked):
        w = winning_word(table, game, v)
        for letter in w:
            tracked = delta[tracked, letter]
        mark[:] = False
        mark[tracked] = True
        image = np.flatnonzero(mark)
        word.extend(w)
        rounds.append(Round(v, len(w), image.size))
        return tracked, image

    if order is Order.GREEDY:
        # only the image matters, so track it alone
        image = np.arange(game.n)
        while image.size > 1 or image[0] != game.win:
            live = image[image != game.win]
            pick = int(live[np.argmax(table.dist[live])])
            _, image = send_home(pick, image)
    else:
        pos = np.arange(game.n)
        for v in range(game.n):
            if pos[v] != game.win:
                pos, _ = send_home(int(pos[v]), pos)
    return SyncResult(tuple(word), len(rounds), tuple(rounds))


def shortest_sync_word_exact(game: Game, target: Target | str = Target.SINK_ONLY) -> Word | None:
    """Minimum-length word collapsing all states, or ``None`` if none exists.

    ``Target.SINK_ONLY`` accepts only the image ``{win}``;
    ``Target.ANY_SINGLETON`` accepts any one-state image, so it also works
    for automata without a sink.  Among minimum-length witnesses the
    lexicographically smallest is returned.
    """
    target = Target(target)
    if game.n > EXACT_MAX_STATES:
        raise TooLarge(f"exact search is capped at {EXACT_MAX_STATES} states, got {game.n}")
    full = (1 << game.n) - 1
    result = kernels.powerset_bfs(
        game.delta, full, 1 << game.win, target is Target.ANY_SINGLETON
    )
    return None if result is None else tuple(int(x) for x in result)


def synchronizes(game: Game, word, target: Target | str = Target.SINK_ONLY) -> bool:
    image = image_set(game, StateSet.full(game.n), word)
    if Target(target) is Target.ANY_SINGLETON:
        return len(image) == 1
    return image == StateSet.from_states(game.n, [game.win])


def universal_sequence(b: int, length: int) -> Iterator[int]:
    """Every word of the given length over ``[0, b)``, concatenated lazily.

    Words come in lexicographic order; the total is ``length * b**length``
    letters.
    """
    if b < 1 or length < 0:
        raise ValueError("need b >= 1 and length >= 0")
    for w in itertools.product(range(b), repeat=length):
        yield from w


@dataclass(frozen=True)
class BoundReport:
    n: int
    b: int
    log2_bound: Decimal
    log10_bound: Decimal
    decimal_digits: int


_EXACT_DIGITS_BELOW = 10**6


def concatenation_bound(n: int, b: int) -> BoundReport:
    """Magnitude of ``n**2 * b**(n**2)``, the concatenate-everything bound.

    Logarithms are evaluated in 60-digit decimal arithmetic.  The digit
    count is exact (big-integer check) while the number has fewer than a
    million digits, and comes from the logarithm above that.
    """
    if n < 1 or b < 1:
        raise ValueError("need n >= 1 and b >= 1")
    sq = n * n
    with localcontext() as ctx:
        ctx.prec = 60
        ln2 = Decimal(2).ln()
        ln10 = Decimal(10).ln()
        ln_bound = 2 * Decimal(n).ln() + sq * Decimal(b).ln()
        log2_bound = ln_bound / ln2
        log10_bound = ln_bound / ln10
        digits = int(log10_bound.to_integral_value(rounding="ROUND_FLOOR")) + 1
    if log10_bound < _EXACT_DIGITS_BELOW:
        value = sq * b**sq
        while 10**digits <= value:
            digits += 1
        while digits > 1 and 10 ** (digits - 1) > value:
            digits -= 1
    return BoundReport(n, b, log2_bound, log10_bound, digits)


def paper_bound(n: int) -> int:
    """Length cap ``n**2`` on the greedy word."""
    return n * n


def cerny_bound(n: int) -> int:
    return (n - 1) ** 2 if n >= 1 else 0


__all__ = [
    "BoundReport",
    "EXACT_MAX_STATES",
    "Order",
    "Round",
    "SyncResult",
    "Target",
    "cerny_bound",
    "concatenation_bound",
    "paper_bound",
    "shortest_sync_word_exact",
    "synchronizes",
    "synthesize_greedy",
    "universal_sequence",
]
