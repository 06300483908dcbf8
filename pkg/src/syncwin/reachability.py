"""Distances to the win state and the per-state shortest winning words.

Breadth-first search runs over reversed edges from the win state.  When
several letters realize a shortest step, the smallest letter wins, which
makes every table bit-reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from syncwin._backend import kernels
from syncwin.errors import Unreachable
from syncwin.game import Game, Word

#: Distance sentinel for states that cannot reach the win state.
INF = np.iinfo(np.int64).max


@dataclass(frozen=True, eq=False)
class WinningWordTable:
    win: int
    dist: np.ndarray
    step_letter: np.ndarray
    step_succ: np.ndarray

    def is_reachable(self, v: int) -> bool:
        return bool(self.dist[v] != INF)

    def dist_strings(self) -> list[str]:
        return ["inf" if d == INF else str(d) for d in self.dist.tolist()]


def analyze(game: Game) -> WinningWordTable:
    raw_dist, raw_step = kernels.reverse_bfs(game.delta, game.win)
    raw_dist = np.asarray(raw_dist, dtype=np.int64)
    step_letter = np.asarray(raw_step, dtype=np.int64)
    dist = np.where(raw_dist < 0, INF, raw_dist)
    has_step = step_letter >= 0
    step_succ = np.full(game.n, -1, dtype=np.int64)
    step_succ[has_step] = game.delta[has_step, step_letter[has_step]]
    for arr in (dist, step_letter, step_succ):
        arr.setflags(write=False)
    return WinningWordTable(game.win, dist, step_letter, step_succ)


def is_win_reducible(table: WinningWordTable) -> bool:
    return bool((table.dist != INF).all())


def winning_word(table: WinningWordTable, game: Game, v: int) -> Word:
    """Shortest word taking ``v`` to the win state.

    Raises :class:`Unreachable` when no such word exists.
    """
    if table.dist[v] == INF:
        raise Unreachable(f"state {v} cannot reach win state {game.win}")
    word = []
    while v != table.win:
        word.append(int(table.step_letter[v]))
        v = int(table.step_succ[v])
    return tuple(word)
