"""Letter streams and game simulation driven by them.

A stream is a stateful, single-consumer source of letters in ``[0, base)``.
Champernowne streams contain every finite word, so running any
win-reducible game on one eventually wins.  Periodic streams do not.

All indices are 0-based.  A hitting index counts the letters consumed
before the win state is first entered; starting on the win state gives 0.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from syncwin._backend import kernels
from syncwin.errors import BaseMismatch, LetterOutOfRange
from syncwin.game import Game

_EMPTY = np.empty(0, dtype=np.int32)


class DigitStream:
    """Base class: subclasses implement ``_generate`` yielding int32 chunks."""

    base: int

    def __init__(self):
        self.position = 0
        self._buf = _EMPTY
        self._chunks = self._generate()

    def _generate(self) -> Iterator[np.ndarray]:
        raise NotImplementedError

    def fresh(self) -> DigitStream:
        """A new stream with the same parameters, at position 0."""
        raise NotImplementedError

    def take(self, k: int) -> np.ndarray:
        """Consume up to ``k`` letters; fewer only if the stream ends."""
        parts = []
        need = k
        while need > 0:
            if self._buf.size == 0:
                chunk = next(self._chunks, None)
                if chunk is None:
                    break
                self._buf = np.ascontiguousarray(chunk, dtype=np.int32)
                continue
            part = self._buf[:need]
            self._buf = self._buf[need:]
            parts.append(part)
            need -= part.size
        if not parts:
            out = _EMPTY
        elif len(parts) == 1:
            out = np.ascontiguousarray(parts[0])
        else:
            out = np.concatenate(parts)
        self.position += out.size
        return out

    def prefix(self, k: int) -> str:
        return "".join(str(x) for x in self.take(k).tolist())

    def __iter__(self):
        return self

    def __next__(self) -> int:
        got = self.take(1)
        if got.size == 0:
            raise StopIteration
        return int(got[0])


class Champernowne(DigitStream):
    """Numerals of 1, 2, 3, ... written in ``base`` and concatenated."""

    def __init__(self, base: int):
        if base < 2:
            raise ValueError("Champernowne streams need base >= 2")
        self.base = base
        super().__init__()

    def fresh(self):
        return Champernowne(self.base)

    def __repr__(self):
        return f"Champernowne({self.base})"

    def _generate(self):
        base = self.base
        for ndigits in itertools.count(1):
            lo, hi = base ** (ndigits - 1), base**ndigits
            if hi >= 1 << 62:
                yield from self._generate_slow(lo)
                return
            powers = base ** np.arange(ndigits - 1, -1, -1, dtype=np.int64)
            step = max(1, (1 << 16) // ndigits)
            for start in range(lo, hi, step):
                nums = np.arange(start, min(start + step, hi), dtype=np.int64)
                yield ((nums[:, None] // powers[None, :]) % base).ravel()

    def _generate_slow(self, start):
        base = self.base
        for x in itertools.count(start):
            digits = []
            while x:
                x, d = divmod(x, base)
                digits.append(d)
            yield np.array(digits[::-1], dtype=np.int32)


def champernowne(base: int) -> Champernowne:
    return Champernowne(base)


class Periodic(DigitStream):
    """``pattern`` repeated forever; eventually periodic, never disjunctive."""

    def __init__(self, pattern: Sequence[int] | str, base: int | None = None):
        if isinstance(pattern, str):
            pattern = [int(ch, 36) for ch in pattern]
        self.pattern = tuple(pattern)
        if not self.pattern:
            raise ValueError("periodic pattern must be nonempty")
        self.base = base if base is not None else max(self.pattern) + 1
        if max(self.pattern) >= self.base or min(self.pattern) < 0:
            raise LetterOutOfRange(f"pattern letter outside [0, {self.base})")
        super().__init__()

    def fresh(self):
        return Periodic(self.pattern, self.base)

    def __repr__(self):
        return f"Periodic({''.join(map(str, self.pattern))!r}, base={self.base})"

    def _generate(self):
        reps = max(1, 4096 // len(self.pattern))
        block = np.tile(np.array(self.pattern, dtype=np.int32), reps)
        while True:
            yield block


class LetterStream(DigitStream):
    """A finite, re-playable stream over an explicit letter sequence."""

    def __init__(self, letters: Sequence[int], base: int):
        self.letters = np.asarray(letters, dtype=np.int32).reshape(-1)
        self.base = base
        if self.letters.size and (self.letters.min() < 0 or self.letters.max() >= base):
            raise LetterOutOfRange(f"letter outside [0, {base})")
        super().__init__()

    def fresh(self):
        return LetterStream(self.letters, self.base)

    def _generate(self):
        if self.letters.size:
            yield self.letters


class UniversalStream(DigitStream):
    """Finite stream of all ``base**length`` words of ``length``, in order."""

    def __init__(self, base: int, length: int):
        from syncwin.synchronizer import universal_sequence

        self.base = base
        self.length = length
        self._source = universal_sequence
        super().__init__()

    def fresh(self):
        return UniversalStream(self.base, self.length)

    def _generate(self):
        it = self._source(self.base, self.length)
        while True:
            chunk = np.fromiter(itertools.islice(it, 1 << 15), dtype=np.int32)
            if chunk.size == 0:
                return
            yield chunk


class FileDigits(DigitStream):
    """Digits read from a text file; whitespace and ``.`` are ignored.

    Digits above 9 may be written ``a``-``z``.  The stream ends at EOF.
    """

    _SKIP = re.compile(rb"[\s.]+")

    def __init__(self, path, base: int = 10):
        self.path = Path(path)
        self.base = base
        super().__init__()

    def fresh(self):
        return FileDigits(self.path, self.base)

    def __repr__(self):
        return f"FileDigits({str(self.path)!r}, base={self.base})"

    def _generate(self):
        lut = np.full(256, -1, dtype=np.int32)
        for d in range(min(self.base, 36)):
            ch = "0123456789abcdefghijklmnopqrstuvwxyz"[d]
            lut[ord(ch)] = d
            lut[ord(ch.upper())] = d
        with open(self.path, "rb") as fh:
            while True:
                raw = fh.read(1 << 16)
                if not raw:
                    return
                raw = self._SKIP.sub(b"", raw)
                letters = lut[np.frombuffer(raw, dtype=np.uint8)]
                if (letters < 0).any():
                    bad = raw[int(np.flatnonzero(letters < 0)[0])]
                    raise LetterOutOfRange(f"{chr(bad)!r} is not a base-{self.base} digit")
                yield letters


class Mapped(DigitStream):
    """Relabel another stream's digits; ``None`` entries drop the digit.

    Dropped digits are not counted: positions and indices refer to the
    mapped letters only.
    """

    def __init__(self, inner: DigitStream, mapping: Sequence[int | None], base: int | None = None):
        if len(mapping) != inner.base:
            raise ValueError(f"mapping has {len(mapping)} entries, stream base is {inner.base}")
        self.inner = inner
        self.mapping = tuple(mapping)
        used = [m for m in self.mapping if m is not None]
        self.base = base if base is not None else (max(used) + 1 if used else 1)
        if any(m < 0 or m >= self.base for m in used):
            raise LetterOutOfRange(f"mapped letter outside [0, {self.base})")
        super().__init__()

    def fresh(self):
        return Mapped(self.inner.fresh(), self.mapping, self.base)

    def _generate(self):
        lut = np.array([-1 if m is None else m for m in self.mapping], dtype=np.int32)
        while True:
            chunk = self.inner.take(1 << 14)
            if chunk.size == 0:
                return
            mapped = lut[chunk]
            yield mapped[mapped >= 0]


def parse_mapping(text: str) -> list[int | None]:
    """Parse a digit map: one token per source digit, an int or ``skip``."""
    out: list[int | None] = []
    for line in text.splitlines():
        for tok in line.split("#", 1)[0].split():
            out.append(None if tok == "skip" else int(tok))
    return out


def load_mapping(path) -> list[int | None]:
    return parse_mapping(Path(path).read_text(encoding="ascii"))


def parse_stream_spec(spec: str) -> DigitStream:
    """``champernowne:<base>``, ``file:<path>:<base>`` or ``periodic:<pattern>[:<base>]``."""
    kind, _, rest = spec.partition(":")
    if kind == "champernowne":
        return Champernowne(int(rest))
    if kind == "file":
        path, sep, base = rest.rpartition(":")
        if not sep:
            raise ValueError("file streams are written file:<path>:<base>")
        return FileDigits(path, int(base))
    if kind == "periodic":
        pattern, _, base = rest.partition(":")
        return Periodic(pattern, int(base) if base else None)
    raise ValueError(f"unknown stream kind {kind!r}")


# -- factor search ----------------------------------------------------------

def _failure(pattern: np.ndarray) -> np.ndarray:
    m = pattern.size
    fail = np.zeros(m, dtype=np.int64)
    k = 0
    pat = pattern.tolist()
    for i in range(1, m):
        while k and pat[i] != pat[k]:
            k = fail[k - 1]
        if pat[i] == pat[k]:
            k += 1
        fail[i] = k
    return fail


def find_factor(stream: DigitStream, word: Sequence[int], limit: int) -> int | None:
    """Index of the first occurrence of ``word`` lying entirely before ``limit``.

    Indices are absolute stream positions.  The stream is consumed up to
    the end of the match (or to ``limit``).  Returns ``None`` when the word
    does not occur in time.
    """
    pattern = np.ascontiguousarray(word, dtype=np.int32).reshape(-1)
    m = pattern.size
    if m == 0:
        return stream.position
    fail = _failure(pattern)
    matched = 0
    while stream.position < limit:
        start = stream.position
        chunk = stream.take(min(1 << 16, limit - start))
        if chunk.size == 0:
            return None
        end, matched = kernels.kmp_scan(chunk, pattern, fail, matched)
        if end >= 0:
            return start + end - m
    return None


# -- simulation -------------------------------------------------------------

@dataclass(frozen=True)
class SimulationReport:
    start: int
    hit: bool
    hitting_index: int | None
    horizon: int


def check_base(game_b: int, stream: DigitStream) -> None:
    if stream.base > game_b:
        raise BaseMismatch(
            f"stream base {stream.base} exceeds the game's {game_b} letters; supply a digit map"
        )


def _chunk_sizes():
    size = 64
    while True:
        yield size
        size = min(size * 4, 1 << 16)


def simulate_on_stream(
    game: Game,
    start: int,
    stream: DigitStream,
    horizon: int,
    mapping: Sequence[int | None] | None = None,
) -> SimulationReport:
    """Feed stream letters to the game from ``start`` until it wins or ``horizon`` letters pass."""
    if mapping is not None:
        stream = Mapped(stream, mapping)
    check_base(game.b, stream)
    if start == game.win:
        return SimulationReport(start, True, 0, horizon)
    state = start
    used = 0
    sizes = _chunk_sizes()
    while used < horizon:
        chunk = stream.take(min(next(sizes), horizon - used))
        if chunk.size == 0:
            break
        off, state = kernels.walk(game.delta, game.win, state, chunk)
        if off >= 0:
            return SimulationReport(start, True, used + off, horizon)
        used += chunk.size
    return SimulationReport(start, False, None, horizon)


# -- coverage ---------------------------------------------------------------

@dataclass(frozen=True)
class CoverageReport:
    """Distinct factors seen per length; entry ``j - 1`` describes length ``j``."""

    base: int
    limit: int
    counts: tuple[int, ...]
    full: tuple[bool, ...]
    first_full: tuple[int | None, ...]


def coverage_audit(stream: DigitStream, k: int, limit: int) -> CoverageReport:
    """Count distinct factors of lengths ``1..k`` among the first ``limit`` letters.

    ``first_full[j-1]`` is the shortest prefix length containing all
    ``base**j`` words of length ``j``, or ``None`` if not reached.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    base = stream.base
    if base ** k >= 1 << 62:
        raise ValueError(f"base**k too large for factor codes (base={base}, k={k})")
    letters = stream.take(limit).astype(np.int64)
    counts, full, first = [], [], []
    codes = None
    for j in range(1, k + 1):
        nwin = letters.size - j + 1
        if nwin <= 0:
            counts.append(0)
            full.append(False)
            first.append(None)
            continue
        # extend length-(j-1) codes by one letter
        if codes is None:
            codes = letters[:nwin].copy()
        else:
            codes = codes[:nwin] * base + letters[j - 1 : j - 1 + nwin]
        uniq, idx = np.unique(codes, return_index=True)
        total = base**j
        counts.append(int(uniq.size))
        full.append(uniq.size == total)
        first.append(int(idx.max()) + j if uniq.size == total else None)
    return CoverageReport(base, limit, tuple(counts), tuple(full), tuple(first))
