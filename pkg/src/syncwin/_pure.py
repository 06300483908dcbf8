"""Pure-Python kernels, the fallback when the compiled extension is absent.

Every function here has a twin with the same signature and results in
``_kernels.pyx``.  Arrays arrive as numpy arrays; they are converted to
lists up front because element access on lists is much cheaper.
"""
from array import array
from collections import deque

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z):
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix_next(state):
    """Advance a SplitMix64 state; returns ``(output, new_state)``."""
    state = (state + GOLDEN) & MASK64
    return mix64(state), state


def draw_uniform(state, r):
    """Draw from ``[0, r)`` using the high 32 bits with rejection."""
    limit = (1 << 32) - ((1 << 32) % r)
    while True:
        x, state = splitmix_next(state)
        hi = x >> 32
        if hi < limit:
            return hi % r, state


def reverse_bfs(delta, win):
    """Distances to ``win`` (-1 if unreachable) and the smallest shortest-step letter."""
    n, b = delta.shape
    rows = delta.tolist()
    # CSR reverse adjacency
    counts = [0] * (n + 1)
    for row in rows:
        for t in row:
            counts[t + 1] += 1
    for i in range(n):
        counts[i + 1] += counts[i]
    fill = counts[:-1]
    fill = list(fill)
    preds = [0] * (n * b)
    for v, row in enumerate(rows):
        for t in row:
            preds[fill[t]] = v
            fill[t] += 1
    dist = [-1] * n
    dist[win] = 0
    queue = deque([win])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for k in range(counts[u], counts[u + 1]):
            v = preds[k]
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    step = [-1] * n
    for v, row in enumerate(rows):
        dv = dist[v]
        if dv > 0:
            for k, t in enumerate(row):
                if dist[t] == dv - 1:
                    step[v] = k
                    break
    return dist, step


def _image_tables(rows, n, b):
    nchunks = (n + 7) // 8
    tables = []
    for letter in range(b):
        per_letter = []
        for c in range(nchunks):
            width = min(8, n - 8 * c)
            t = [0] * (1 << width)
            for x in range(1, 1 << width):
                low = x & -x
                v = 8 * c + low.bit_length() - 1
                t[x] = t[x ^ low] | (1 << rows[v][letter])
            per_letter.append(t)
        tables.append(per_letter)
    return tables


def powerset_bfs(delta, start_mask, target_mask, any_singleton):
    """Shortest word taking ``start_mask`` to the target, lexicographically least.

    ``target_mask`` is ignored when ``any_singleton`` is true.  Returns a
    list of letters or ``None``.
    """
    n, b = delta.shape
    rows = delta.tolist()

    def is_target(s):
        if any_singleton:
            return s != 0 and (s & (s - 1)) == 0
        return s == target_mask

    if is_target(start_mask):
        return []
    tables = _image_tables(rows, n, b)
    nchunks = (n + 7) // 8
    size = 1 << n
    parent = array("i", [-1]) * size
    via = bytearray(size)
    parent[start_mask] = start_mask
    queue = deque([start_mask])
    found = -1
    while queue and found < 0:
        s = queue.popleft()
        for letter in range(b):
            tl = tables[letter]
            img = 0
            for c in range(nchunks):
                img |= tl[c][(s >> (8 * c)) & 255]
            if parent[img] >= 0:
                continue
            parent[img] = s
            via[img] = letter
            if is_target(img):
                found = img
                break
            queue.append(img)
    if found < 0:
        return None
    word = []
    s = found
    while s != start_mask:
        word.append(via[s])
        s = parent[s]
    word.reverse()
    return word


def walk(delta, win, state, letters):
    """Run ``letters`` from ``state``; returns ``(hit_offset, state)``.

    ``hit_offset`` counts letters consumed when the win state is first
    entered, or is -1 when the chunk ends first.
    """
    rows = delta.tolist()
    for i, letter in enumerate(letters.tolist()):
        state = rows[state][letter]
        if state == win:
            return i + 1, state
    return -1, state


def kmp_scan(letters, pattern, failure, matched):
    """Streaming KMP; returns ``(end_offset, matched)`` with end_offset -1 if no match."""
    pat = pattern.tolist()
    fail = failure.tolist()
    m = len(pat)
    for i, x in enumerate(letters.tolist()):
        while matched > 0 and pat[matched] != x:
            matched = fail[matched - 1]
        if pat[matched] == x:
            matched += 1
        if matched == m:
            return i + 1, fail[m - 1]
    return -1, matched


def rng_walk(delta3, win, state, rng_state, letters):
    """Like :func:`walk` but each step also draws an RNG output.

    Returns ``(hit_offset, state, rng_state)``.
    """
    r = delta3.shape[2]
    rows = delta3.tolist()
    limit = (1 << 32) - ((1 << 32) % r)
    for i, letter in enumerate(letters.tolist()):
        while True:
            rng_state = (rng_state + GOLDEN) & MASK64
            hi = mix64(rng_state) >> 32
            if hi < limit:
                break
        state = rows[state][letter][hi % r]
        if state == win:
            return i + 1, state, rng_state
    return -1, state, rng_state
