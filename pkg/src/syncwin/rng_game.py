"""Games whose transitions also read a random number generator output.

Two treatments are offered:

* determinization: take the product with a linear congruential generator
  whose state then becomes part of the game state (:func:`product`);
* true randomness: draw i.i.d. uniform outputs from a seeded SplitMix64
  generator each step and estimate the win probability (:func:`monte_carlo`).

SplitMix64, bit-exact::

    state  <- (state + 0x9E3779B97F4A7C15) mod 2**64
    z      <- state
    z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output <- z ^ (z >> 31)

A uniform draw from ``[0, r)`` takes ``hi = output >> 32`` and accepts it
when ``hi < 2**32 - (2**32 mod r)``, returning ``hi mod r``; otherwise it
draws again.  Trial ``i`` of a Monte Carlo run is seeded with
``mix(base_seed ^ (0x9E3779B97F4A7C15 * (i + 1) mod 2**64))`` where ``mix``
is the last three lines above applied to its argument.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from syncwin._backend import kernels
from syncwin.errors import MalformedTable, RangeMismatch
from syncwin.game import Game, _content_lines, _ints
from syncwin.streams import DigitStream, Mapped, SimulationReport, check_base

GOLDEN = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class RngGame:
    n: int
    b: int
    r: int
    delta: np.ndarray
    win: int

    def __post_init__(self):
        if min(self.n, self.b, self.r) < 1:
            raise MalformedTable("need n, b, r >= 1")
        try:
            raw = np.asarray(self.delta)
            table = raw.astype(np.int64)
        except (ValueError, TypeError) as exc:
            raise MalformedTable(f"ragged or non-integer table: {exc}") from None
        if raw.dtype.kind not in "iu" and not np.array_equal(raw, table):
            raise MalformedTable("table entries must be integers")
        if table.shape != (self.n, self.b, self.r):
            raise MalformedTable(f"table has shape {table.shape}, expected {(self.n, self.b, self.r)}")
        if table.min() < 0 or table.max() >= self.n:
            raise MalformedTable(f"successor outside [0, {self.n})")
        if not 0 <= self.win < self.n:
            raise MalformedTable(f"win state {self.win} outside [0, {self.n})")
        if (table[self.win] != self.win).any():
            raise MalformedTable(f"win state {self.win} is not absorbing")
        table = np.ascontiguousarray(table, dtype=np.int32)
        table.setflags(write=False)
        object.__setattr__(self, "delta", table)

    def fix_output(self, output: int) -> Game:
        """The deterministic game obtained by pinning the RNG output."""
        return Game(self.n, self.b, self.delta[:, :, output], self.win)


def parse_rng_game(text: str) -> RngGame:
    """Parse ``rnggame <n> <b> <r> <win>`` followed by ``n*b`` rows of ``r`` successors."""
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedTable("empty rnggame file")
    lineno, header = lines[0]
    if len(header) != 5 or header[0] != "rnggame":
        raise MalformedTable(f"line {lineno}: expected 'rnggame <n> <b> <r> <win>'")
    n, b, r, win = _ints(header[1:], lineno)
    if min(n, b, r) < 1:
        raise MalformedTable(f"line {lineno}: need n, b, r >= 1")
    body = lines[1:]
    if len(body) != n * b:
        raise MalformedTable(f"expected {n * b} rows, found {len(body)}")
    rows = []
    for lineno, tokens in body:
        if len(tokens) != r:
            raise MalformedTable(f"line {lineno}: expected {r} entries, found {len(tokens)}")
        rows.append(_ints(tokens, lineno))
    return RngGame(n, b, r, np.array(rows).reshape(n, b, r), win)


def load_rng_game(path) -> RngGame:
    return parse_rng_game(Path(path).read_text(encoding="ascii"))


def format_rng_game(rg: RngGame) -> str:
    out = [f"rnggame {rg.n} {rg.b} {rg.r} {rg.win}"]
    out.extend(" ".join(map(str, row)) for row in rg.delta.reshape(rg.n * rg.b, rg.r).tolist())
    return "\n".join(out) + "\n"


# -- LCG --------------------------------------------------------------------

@dataclass(frozen=True)
class Lcg:
    """``s -> (a*s + c) mod m`` started at ``s0``.

    Output modes: ``low`` emits ``s mod r``; ``raw`` emits ``s`` itself and
    requires ``m <= r``.
    """

    m: int
    a: int
    c: int
    s0: int = 0
    out: str = "low"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("LCG modulus must be >= 1")
        for name in ("a", "c", "s0"):
            if not 0 <= getattr(self, name) < self.m:
                raise ValueError(f"LCG {name} must lie in [0, {self.m})")
        if self.out not in ("low", "raw"):
            raise ValueError(f"unknown output mode {self.out!r}")

    def step(self, s: int) -> int:
        return (self.a * s + self.c) % self.m

    def output(self, s: int, r: int) -> int:
        return s % r if self.out == "low" else s

    def outputs(self, r: int) -> np.ndarray:
        """Output for every LCG state; raises :class:`RangeMismatch` if any reaches ``r``."""
        states = np.arange(self.m, dtype=np.int64)
        if self.out == "low":
            return states % r
        if self.m > r:
            raise RangeMismatch(f"raw output of an LCG with m={self.m} exceeds r={r}")
        return states

    def states(self) -> Iterator[int]:
        s = self.s0
        while True:
            yield s
            s = self.step(s)

    def period(self) -> int:
        """Cycle length reached from ``s0`` (iterates at most ``m`` steps)."""
        seen = {}
        for i, s in enumerate(self.states()):
            if s in seen:
                return i - seen[s]
            seen[s] = i
        raise AssertionError("unreachable")

    def is_full_period(self) -> bool:
        return self.period() == self.m

    @staticmethod
    def parse(spec: str, out: str = "low") -> Lcg:
        m, a, c, s0 = (int(t) for t in spec.split(","))
        return Lcg(m, a, c, s0, out)


def _prime_factors(m: int) -> set[int]:
    out, p = set(), 2
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 1
    if m > 1:
        out.add(m)
    return out


def hull_dobell(m: int, a: int, c: int) -> bool:
    """Hull-Dobell conditions for full period ``m`` (``c != 0`` case)."""
    if m == 1:
        return True
    if math.gcd(c, m) != 1:
        return False
    if any((a - 1) % p for p in _prime_factors(m)):
        return False
    return m % 4 != 0 or (a - 1) % 4 == 0


# -- product ----------------------------------------------------------------

def product_state(rg: RngGame, lcg: Lcg, v: int, s: int) -> int:
    """Index of the pair ``(v, s)`` in :func:`product`'s game.

    Pairs are numbered ``v*m + s`` and the ``m`` win pairs are then merged
    into the slot of ``(win, 0)``, shifting later indices down.
    """
    m, w = lcg.m, rg.win
    if v < w:
        return v * m + s
    if v == w:
        return w * m
    return v * m + s - (m - 1)


def product_components(rg: RngGame, lcg: Lcg, idx: int) -> tuple[int, int | None]:
    """Inverse of :func:`product_state`; the merged win gives ``(win, None)``."""
    m, w = lcg.m, rg.win
    if idx < w * m:
        return divmod(idx, m)
    if idx == w * m:
        return w, None
    return divmod(idx + m - 1, m)


def product(rg: RngGame, lcg: Lcg) -> Game:
    """Deterministic game on pairs (game state, LCG state) with one merged win state."""
    m, w = lcg.m, rg.win
    out = lcg.outputs(rg.r)
    if out.size and out.max() >= rg.r:
        raise RangeMismatch(f"LCG output exceeds r={rg.r}")
    v = np.arange(rg.n, dtype=np.int64)[:, None]
    s = np.arange(m, dtype=np.int64)[None, :]
    s_next = (lcg.a * s + lcg.c) % m  # (1, m)
    # successors[v, s, letter]
    v_next = rg.delta[:, :, out].transpose(0, 2, 1).astype(np.int64)  # (n, m, b)
    s_next = np.broadcast_to(s_next[:, :, None], v_next.shape)
    idx = np.where(
        v_next < w, v_next * m + s_next, np.where(v_next == w, w * m, v_next * m + s_next - (m - 1))
    )
    keep = ~((v == w) & (s > 0))
    rows = idx[keep]  # row order follows v*m + s
    rows[w * m] = w * m
    return Game(rows.shape[0], rg.b, rows, w * m)


# -- true RNG simulation ------------------------------------------------------

def mix64(z: int) -> int:
    return int(kernels.mix64(z & MASK64))


def trial_seed(base_seed: int, i: int) -> int:
    return mix64((base_seed ^ (GOLDEN * (i + 1))) & MASK64)


def simulate_true_rng(
    rg: RngGame,
    start: int,
    stream: DigitStream,
    horizon: int,
    seed: int,
    mapping=None,
) -> SimulationReport:
    """Run the game on stream letters with one uniform RNG draw per letter."""
    if mapping is not None:
        stream = Mapped(stream, mapping)
    check_base(rg.b, stream)
    if start == rg.win:
        return SimulationReport(start, True, 0, horizon)
    state, rng_state, used = start, seed & MASK64, 0
    size = 64
    while used < horizon:
        chunk = stream.take(min(size, horizon - used))
        if chunk.size == 0:
            break
        off, state, rng_state = kernels.rng_walk(rg.delta, rg.win, state, rng_state, chunk)
        if off >= 0:
            return SimulationReport(start, True, used + off, horizon)
        used += chunk.size
        size = min(size * 4, 1 << 16)
    return SimulationReport(start, False, None, horizon)


@dataclass(frozen=True)
class MonteCarloReport:
    trials: int
    horizon: int
    wins: int
    win_fraction: float
    mean_hitting_index: float
    base_seed: int


def default_workers() -> int:
    """Worker cap from ``SYNCWIN_THREADS``; 0 or unset means one per CPU."""
    try:
        n = int(os.environ.get("SYNCWIN_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def monte_carlo(
    rg: RngGame,
    start: int,
    streams: DigitStream | Callable[[], DigitStream],
    horizon: int,
    trials: int,
    base_seed: int,
    workers: int | None = None,
) -> MonteCarloReport:
    """Independent true-RNG runs; the report does not depend on ``workers``.

    ``streams`` is either a stream (each trial replays it from the start)
    or a zero-argument factory returning a fresh stream per trial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    factory = streams.fresh if isinstance(streams, DigitStream) else streams
    workers = workers or default_workers()

    def run(lo, hi):
        wins = total = 0
        for i in range(lo, hi):
            rep = simulate_true_rng(rg, start, factory(), horizon, trial_seed(base_seed, i))
            if rep.hit:
                wins += 1
                total += rep.hitting_index
        return wins, total

    bounds = np.linspace(0, trials, min(workers, trials) + 1).astype(int).tolist()
    if len(bounds) == 2:
        parts = [run(0, trials)]
    else:
        with ThreadPoolExecutor(max_workers=len(bounds) - 1) as pool:
            parts = list(pool.map(run, bounds[:-1], bounds[1:]))
    wins = sum(p[0] for p in parts)
    total = sum(p[1] for p in parts)
    mean = total / wins if wins else math.nan
    return MonteCarloReport(trials, horizon, wins, wins / trials, mean, base_seed)
