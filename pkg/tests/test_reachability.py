import itertools

import numpy as np
import pytest

from conftest import brute_shortest_sync, brute_shortest_winning
from syncwin.errors import Unreachable
from syncwin.game import Game, apply_word
from syncwin.generate import random_game
from syncwin.reachability import INF, analyze, is_win_reducible, winning_word


def test_dist_examples(g2, g3, g4):
    # values frozen from brute_shortest_winning over words of length <= n
    assert analyze(g2).dist.tolist() == [0, 1]
    assert analyze(g3).dist.tolist() == [0, 1, 2]
    assert analyze(g4).dist.tolist() == [0, 1, INF]


def test_brute_force_agrees_on_examples(g2, g3, g4):
    for game in (g2, g3, g4):
        table = analyze(game)
        for v in range(game.n):
            w = brute_shortest_winning(game, v, game.n)
            expected = INF if w is None else len(w)
            assert table.dist[v] == expected


def test_win_reducible_examples(g1, g3, g4):
    assert is_win_reducible(analyze(g3))
    assert not is_win_reducible(analyze(g4))
    assert is_win_reducible(analyze(g1))


def test_winning_word_examples(g3, g4):
    t = analyze(g3)
    assert winning_word(t, g3, 2) == (0, 0)
    assert winning_word(t, g3, 0) == ()
    with pytest.raises(Unreachable):
        winning_word(analyze(g4), g4, 2)


def test_dist_strings(g4):
    assert analyze(g4).dist_strings() == ["0", "1", "inf"]


def test_tie_break_prefers_smallest_letter():
    # both letters reach win from state 1
    g = Game.from_rows([[0, 0, 0], [2, 0, 0], [2, 2, 2]])
    assert winning_word(analyze(g), g, 1) == (1,)


@pytest.mark.parametrize("seed", range(40))
def test_shortest_against_enumeration(seed):
    rng = np.random.default_rng(seed)
    n, b = int(rng.integers(1, 9)), int(rng.integers(1, 4))
    game = random_game(rng, n, b, win=int(rng.integers(n)), reducible=bool(seed % 2))
    table = analyze(game)
    for v in range(n):
        w = brute_shortest_winning(game, v, n)
        if w is None:
            assert table.dist[v] == INF
            continue
        got = winning_word(table, game, v)
        assert apply_word(game, v, got) == game.win
        assert len(got) == len(w) == table.dist[v]
        assert len(got) <= n - 1
        if v != game.win:
            succ = table.step_succ[v]
            assert table.dist[v] == 1 + table.dist[succ]


def test_reducible_iff_some_word_collapses_onto_win():
    # exhaustive over n <= 3, b <= 2 with win = 0
    for n, b in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)]:
        cells = (n - 1) * b
        for flat in itertools.product(range(n), repeat=cells):
            rows = [[0] * b] + [list(flat[i * b:(i + 1) * b]) for i in range(n - 1)]
            g = Game.from_rows(rows)
            sync = brute_shortest_sync(g, n * n)
            assert is_win_reducible(analyze(g)) == (sync is not None)
