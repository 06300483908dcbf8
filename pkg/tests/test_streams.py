import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncwin.errors import BaseMismatch, LetterOutOfRange
from syncwin.game import Game
from syncwin.generate import random_game
from syncwin.streams import (
    Champernowne,
    FileDigits,
    LetterStream,
    Mapped,
    Periodic,
    UniversalStream,
    champernowne,
    coverage_audit,
    find_factor,
    parse_mapping,
    parse_stream_spec,
    simulate_on_stream,
)
from syncwin.synchronizer import synthesize_greedy


def numerals(base, upto):
    digits = "0123456789abcdefghijklmnopqrstuvwxyz"
    out = []
    for x in range(1, upto):
        s = ""
        while x:
            x, d = divmod(x, base)
            s = digits[d] + s
        out.append(s)
    return "".join(out)


def naive_find(letters, word, limit):
    m = len(word)
    for i in range(0, limit - m + 1):
        if tuple(letters[i:i + m]) == tuple(word):
            return i
    return None


def test_champernowne_prefixes():
    assert champernowne(10).prefix(13) == "1234567891011"
    assert champernowne(2).prefix(10) == "1101110010"


@pytest.mark.parametrize("base", [2, 3, 7, 10])
def test_champernowne_matches_reference(base):
    ref = numerals(base, 5000)
    assert Champernowne(base).prefix(len(ref)) == ref


def test_champernowne_first_zero():
    letters = champernowne(10).take(100).tolist()
    assert letters.index(0) == 10


def test_champernowne_rejects_base_one():
    with pytest.raises(ValueError):
        champernowne(1)


def test_find_factor_examples():
    # prefix 1101110010: "00" first starts at index 6 (brute scan below)
    assert naive_find(champernowne(2).take(50).tolist(), (0, 0), 50) == 6
    assert find_factor(champernowne(2), (0, 0), 50) == 6
    assert find_factor(Periodic("01"), (1, 1), 10**4) is None
    assert find_factor(champernowne(3), (), 10) == 0


def test_find_factor_respects_limit():
    # "00" occupies indices 6-7, so it needs a prefix of 8 letters
    assert find_factor(champernowne(2), (0, 0), 7) is None
    assert find_factor(champernowne(2), (0, 0), 8) == 6


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(0, 2), max_size=300),
    st.lists(st.integers(0, 2), min_size=1, max_size=5),
    st.integers(0, 320),
)
def test_find_factor_agrees_with_naive(letters, word, limit):
    got = find_factor(LetterStream(letters, 3), word, limit)
    assert got == naive_find(letters, word, min(limit, len(letters)))


def test_find_factor_across_chunks():
    rng = np.random.default_rng(5)
    letters = rng.integers(0, 2, size=200_000)
    word = tuple(letters[150_000:150_020].tolist())
    want = naive_find(letters.tolist(), word, len(letters))
    assert find_factor(LetterStream(letters, 2), word, len(letters)) == want


def test_simulation_examples(g2, g3):
    rep = simulate_on_stream(g2, 0, champernowne(2), 10)
    assert rep.hit and rep.hitting_index == 0

    i = find_factor(champernowne(2), (0, 0), 100)
    rep = simulate_on_stream(g3, 2, champernowne(2), 100)
    assert rep.hit and rep.hitting_index <= i + 2
    # hand trace: 1,1,0 -> state 1 at index 3; then 1,1,1 -> stay; 0 at index 6 -> win
    assert rep.hitting_index == 7

    rep = simulate_on_stream(g3, 2, Periodic("1", base=2), 10**4)
    assert not rep.hit and rep.hitting_index is None


def test_simulation_base_mismatch(g3):
    with pytest.raises(BaseMismatch):
        simulate_on_stream(g3, 2, champernowne(10), 100)


def test_simulation_with_digit_map(g3):
    # decimal digits: 0 -> letter 0, 1 -> letter 1, everything else dropped
    mapping = [0, 1] + [None] * 8
    rep = simulate_on_stream(g3, 2, champernowne(10), 10**4, mapping=mapping)
    mapped = Mapped(champernowne(10), mapping).take(50).tolist()
    assert mapped[:6] == [1, 1, 0, 1, 1, 1]
    assert rep.hit and rep.hitting_index == mapped.index(0, mapped.index(0) + 1) + 1


def test_horizon_is_respected(g3):
    rep = simulate_on_stream(g3, 2, champernowne(2), 6)
    assert not rep.hit


def test_coverage_examples():
    rep = coverage_audit(champernowne(2), 3, 10**4)
    assert rep.full == (True, True, True)
    rep = coverage_audit(Periodic("01"), 2, 10**4)
    assert rep.counts[1] == 2 and not rep.full[1]
    rep = coverage_audit(champernowne(2), 1, 0)
    assert rep.counts == (0,)


@pytest.mark.parametrize("base,k", [(2, 1), (2, 4), (3, 3), (3, 4), (2, 6)])
def test_coverage_against_sliding_window(base, k):
    limit = 5000
    letters = champernowne(base).take(limit).tolist()
    rep = coverage_audit(champernowne(base), k, limit)
    for j in range(1, k + 1):
        seen, first_full = set(), None
        for i in range(limit - j + 1):
            seen.add(tuple(letters[i:i + j]))
            if first_full is None and len(seen) == base**j:
                first_full = i + j
        assert rep.counts[j - 1] == len(seen)
        assert rep.first_full[j - 1] == first_full


@pytest.mark.parametrize("base", [2, 3])
def test_champernowne_reaches_full_coverage(base):
    for k in range(1, 5):
        rep = coverage_audit(champernowne(base), k, 10**5)
        assert rep.full[k - 1]


def test_streams_are_deterministic():
    for proto in (champernowne(3), Periodic("0120"), UniversalStream(2, 4)):
        a = proto.fresh().take(3000)
        b = proto.fresh().take(3000)
        assert np.array_equal(a, b)


def test_position_and_iteration():
    s = Periodic("012")
    assert [next(s) for _ in range(4)] == [0, 1, 2, 0]
    assert s.position == 4


def test_universal_stream_is_finite():
    s = UniversalStream(2, 3)
    assert s.prefix(100) == "000001010011100101110111"


def test_file_digits(tmp_path):
    p = tmp_path / "pi.txt"
    p.write_text("3.14159\n26535 89793\n")
    assert FileDigits(p, 10).prefix(100) == "3141592653589793"
    p.write_text("0129")
    with pytest.raises(LetterOutOfRange):
        FileDigits(p, 3).take(10)


def test_parse_mapping():
    assert parse_mapping("0 1 # x\nskip 2\n") == [0, 1, None, 2]


def test_parse_stream_spec(tmp_path):
    assert isinstance(parse_stream_spec("champernowne:3"), Champernowne)
    s = parse_stream_spec("periodic:01:3")
    assert s.base == 3 and s.pattern == (0, 1)
    p = tmp_path / "d.txt"
    p.write_text("0101")
    assert parse_stream_spec(f"file:{p}:2").prefix(10) == "0101"
    with pytest.raises(ValueError):
        parse_stream_spec("pi:10")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(1, 3), st.integers(0, 2**32 - 1), st.integers(0, 40), st.data())
def test_embedded_winning_word_wins(n, b, seed, offset, data):
    # adversarial stream: arbitrary junk, then the greedy word once, then junk
    game = random_game(np.random.default_rng(seed), n, b)
    w = list(synthesize_greedy(game).word)
    junk = data.draw(st.lists(st.integers(0, b - 1), min_size=offset, max_size=offset))
    tail = data.draw(st.lists(st.integers(0, b - 1), max_size=5))
    letters = junk + w + tail
    for v in range(n):
        rep = simulate_on_stream(game, v, LetterStream(letters, b), len(letters))
        assert rep.hit and rep.hitting_index <= offset + len(w)
