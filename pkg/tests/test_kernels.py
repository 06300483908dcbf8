"""Both kernel backends against plain-loop references and each other."""
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import brute_shortest_sync, brute_shortest_winning
from syncwin import _pure
from syncwin.generate import cerny, random_game, random_rng_game


def test_backend_choice_is_importable():
    from syncwin import _backend

    assert _backend.kernels.__name__ in ("syncwin._kernels", "syncwin._pure")


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7), st.integers(1, 3), st.integers(0, 2**32 - 1), st.booleans())
def test_reverse_bfs(backend, n, b, seed, planted):
    g = random_game(np.random.default_rng(seed), n, b, win=seed % n, reducible=planted)
    dist, step = backend.reverse_bfs(g.delta, g.win)
    for v in range(n):
        w = brute_shortest_winning(g, v, n)
        assert dist[v] == (-1 if w is None else len(w))
        # enumeration is lexicographic, so its first letter is the smallest usable one
        assert step[v] == (w[0] if w else -1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 2**32 - 1), st.booleans())
def test_powerset_bfs(backend, n, b, seed, anys):
    # keep the exhaustive reference affordable when no word exists
    assume(b ** ((n - 1) ** 2 + 1) <= 2 * 10**5)
    g = random_game(np.random.default_rng(seed), n, b, win=seed % n, reducible=seed % 3 > 0)
    got = backend.powerset_bfs(g.delta, (1 << n) - 1, 1 << g.win, anys)
    want = brute_shortest_sync(g, (n - 1) ** 2 + 1, any_singleton=anys)
    assert (None if got is None else tuple(got)) == want


def test_powerset_bfs_wide_masks(backend):
    g = cerny(12)
    w = backend.powerset_bfs(g.delta, (1 << 12) - 1, 0, True)
    assert len(w) == 121


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(1, 3), st.integers(0, 2**32 - 1), st.data())
def test_walk(backend, n, b, seed, data):
    g = random_game(np.random.default_rng(seed), n, b, win=seed % n)
    letters = data.draw(st.lists(st.integers(0, b - 1), max_size=40))
    start = data.draw(st.integers(0, n - 1))
    off, state = backend.walk(g.delta, g.win, start, np.array(letters, dtype=np.int32))
    v, want = start, -1
    for i, x in enumerate(letters):
        v = int(g.delta[v, x])
        if v == g.win:
            want = i + 1
            break
    assert (off, state) == (want, v)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=80), st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_kmp_scan(backend, letters, pattern):
    from syncwin.streams import _failure

    pat = np.array(pattern, dtype=np.int32)
    end, _ = backend.kmp_scan(np.array(letters, dtype=np.int32), pat, _failure(pat), 0)
    m = len(pattern)
    want = next((i + m for i in range(len(letters) - m + 1) if letters[i:i + m] == pattern), -1)
    assert end == want


def test_kmp_scan_resumes_across_chunks(backend):
    from syncwin.streams import _failure

    pat = np.array([0, 1, 0, 1, 1], dtype=np.int32)
    fail = _failure(pat)
    end, matched = backend.kmp_scan(np.array([1, 0, 1, 0], dtype=np.int32), pat, fail, 0)
    assert end == -1 and matched == 3
    end, _ = backend.kmp_scan(np.array([1, 1], dtype=np.int32), pat, fail, matched)
    assert end == 2


@pytest.mark.parametrize("seed", range(10))
def test_rng_walk_matches_reference(backend, seed):
    rng = np.random.default_rng(seed)
    rg = random_rng_game(rng, 5, 2, int(rng.integers(1, 6)))
    letters = rng.integers(0, 2, size=64).astype(np.int32)
    off, state, rs = backend.rng_walk(rg.delta, rg.win, 3, seed * 7919, letters)
    v, s, want = 3, seed * 7919, -1
    for i, x in enumerate(letters.tolist()):
        out, s = _pure.draw_uniform(s, rg.r)
        v = int(rg.delta[v, x, out])
        if v == rg.win:
            want = i + 1
            break
    assert (off, state, rs) == (want, v, s)


def test_rng_primitives_agree(backend):
    for z in (0, 1, 2**63, 2**64 - 1, 123456789):
        assert backend.mix64(z) == _pure.mix64(z)
        assert backend.splitmix_next(z) == _pure.splitmix_next(z)
        for r in (1, 3, 7, 2**31 + 1):
            assert backend.draw_uniform(z, r) == _pure.draw_uniform(z, r)


def test_draw_uniform_is_unbiased(backend):
    counts = np.zeros(3, dtype=int)
    s = 99
    for _ in range(30_000):
        x, s = backend.draw_uniform(s, 3)
        counts[x] += 1
    assert np.all(np.abs(counts - 10_000) < 5 * np.sqrt(30_000 * (1 / 3) * (2 / 3)))


def test_pure_fallback_can_be_forced():
    import os
    import subprocess
    import sys

    env = dict(os.environ, SYNCWIN_PURE="1")
    code = "import syncwin._backend as b; print(b.COMPILED, b.kernels.__name__)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["False", "syncwin._pure"]
