import itertools

import numpy as np
import pytest

from syncwin import _pure
from syncwin.game import Game, StateSet, apply_word


@pytest.fixture
def g1():
    return Game.from_rows([[0]])


@pytest.fixture
def g2():
    return Game.from_rows([[0, 0], [0, 1]])


@pytest.fixture
def g3():
    # letter 0 walks 2 -> 1 -> 0, letter 1 is the identity
    return Game.from_rows([[0, 0], [0, 1], [1, 2]])


@pytest.fixture
def g4():
    return Game.from_rows([[0], [0], [2]])


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def _backends():
    out = [pytest.param(_pure, id="pure")]
    try:
        from syncwin import _kernels
    except ImportError:
        out.append(pytest.param(None, id="compiled", marks=pytest.mark.skip("not built")))
    else:
        out.append(pytest.param(_kernels, id="compiled"))
    return out


@pytest.fixture(scope="module", params=_backends())
def backend(request):
    return request.param


# -- independent oracles: plain enumeration over words ------------------------

def words_upto(b, length):
    for k in range(length + 1):
        yield from itertools.product(range(b), repeat=k)


def brute_shortest_winning(game, v, max_len):
    for w in words_upto(game.b, max_len):
        if apply_word(game, v, w) == game.win:
            return w
    return None


def brute_image(game, states, word):
    out = set()
    for v in states:
        for x in word:
            v = int(game.delta[v][x])
        out.add(v)
    return out


def brute_shortest_sync(game, max_len, any_singleton=False):
    for w in words_upto(game.b, max_len):
        img = brute_image(game, range(game.n), w)
        if (len(img) == 1) if any_singleton else (img == {game.win}):
            return w
    return None


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
