"""Random games and LCGs for experiments, tests and benchmarks."""
from __future__ import annotations

import numpy as np

from syncwin.game import Game
from syncwin.rng_game import Lcg, RngGame, hull_dobell


def random_game(rng: np.random.Generator, n: int, b: int, win: int = 0, reducible: bool = True) -> Game:
    """Uniform random transitions with ``win`` made a sink.

    With ``reducible=True`` a random in-tree towards ``win`` is planted
    first: each other state, in random order, gets one letter pointing to
    a state already connected to the win state.
    """
    delta = rng.integers(0, n, size=(n, b))
    delta[win] = win
    if reducible:
        connected = [win]
        for v in rng.permutation([u for u in range(n) if u != win]).tolist():
            delta[v, rng.integers(b)] = connected[rng.integers(len(connected))]
            connected.append(v)
    return Game(n, b, delta, win)


def cerny(n: int) -> Game:
    """The Černý automaton: letter 0 rotates, letter 1 moves 0 to 1.

    It has no sink, so the win state is nominal.
    """
    rows = [[(i + 1) % n, 1 % n if i == 0 else i] for i in range(n)]
    return Game(n, 2, rows, 0)


def random_rng_game(rng: np.random.Generator, n: int, b: int, r: int, win: int = 0) -> RngGame:
    delta = rng.integers(0, n, size=(n, b, r))
    delta[win] = win
    return RngGame(n, b, r, delta, win)


def full_period_lcg(rng: np.random.Generator, m: int, out: str = "low") -> Lcg:
    """A random LCG satisfying the Hull-Dobell conditions."""
    choices = [(a, c) for a in range(m) for c in range(m) if hull_dobell(m, a, c)]
    a, c = choices[rng.integers(len(choices))]
    return Lcg(m, a, c, int(rng.integers(m)), out)
