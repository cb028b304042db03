"""Word-rewriting kernels for the chord algebras.

A chord t^{ij} (i < j) is encoded as the letter code ``(j-1)(j-2)/2 + (i-1)``,
so letters sort by their second strand index and the code does not depend on
the ambient strand count.  Words are rows of an int64 array padded with -1.
Reduced words are returned packed into one int64 each: letter r occupies bits
``5r .. 5r+4`` and stores ``code + 1`` (zero means "no letter").

The rewriting rule is right multiplication of a normal word by one letter y:
y slides left past the trailing letters whose second index exceeds its own,
and every crossing of a letter ``x = t^{ab}`` that shares a strand with
``y`` leaves behind ``t^{cb} t^{ab} - t^{ab} t^{cb}`` in place of x (c the
other strand of y).  Folding this over a word gives its normal form with
integer coefficients.

Two interchangeable implementations exist: a numba ``@njit`` kernel and a
vectorized numpy path.  ``ASSOCFORGE_BACKEND`` selects between them.
"""

import numpy as np

from . import _config

MAX_STRANDS = 8
MAX_LETTERS = 12
BITS = 5
MASK = (1 << BITS) - 1


def chord_code(i, j):
    if i > j:
        i, j = j, i
    return (j - 1) * (j - 2) // 2 + (i - 1)


def _build_tables():
    ncodes = MAX_STRANDS * (MAX_STRANDS - 1) // 2
    first = np.empty(ncodes, np.int64)
    second = np.empty(ncodes, np.int64)
    for j in range(2, MAX_STRANDS + 1):
        for i in range(1, j):
            c = chord_code(i, j)
            first[c] = i
            second[c] = j
    comm = np.full((ncodes, ncodes), -1, np.int64)
    for x in range(ncodes):
        a0, b = first[x], second[x]
        for y in range(ncodes):
            u, v = first[y], second[y]
            if v >= b:
                continue
            if u == a0:
                c = v
            elif v == a0:
                c = u
            else:
                continue
            comm[x, y] = chord_code(c, b)
    return first, second, comm


FIRST, SECOND, COMM = _build_tables()
NCODES = len(FIRST)


def pack_word(word):
    key = 0
    for r, c in enumerate(word):
        key |= (c + 1) << (BITS * r)
    return key


def unpack_key(key):
    out = []
    while key:
        out.append((key & MASK) - 1)
        key >>= BITS
    return tuple(out)


def words_to_array(words):
    """Pad a sequence of letter tuples into (array, lengths)."""
    lengths = np.fromiter((len(w) for w in words), np.int64, len(words))
    width = int(lengths.max()) if len(words) else 0
    if width > MAX_LETTERS:
        raise ValueError(f"words longer than {MAX_LETTERS} letters are not supported")
    arr = np.full((len(words), max(width, 1)), -1, np.int64)
    for r, w in enumerate(words):
        arr[r, : len(w)] = w
    return arr, lengths


# --------------------------------------------------------------------------
# numpy path


def _pack_rows(w):
    shifts = BITS * np.arange(w.shape[1], dtype=np.int64)
    return ((w + 1) << shifts).sum(axis=1)


def _merge(g, w, c):
    key = _pack_rows(w)
    order = np.lexsort((key, g))
    g, w, c, key = g[order], w[order], c[order], key[order]
    if len(g) == 0:
        return g, w, c
    start = np.ones(len(g), bool)
    start[1:] = (g[1:] != g[:-1]) | (key[1:] != key[:-1])
    idx = np.flatnonzero(start)
    csum = np.add.reduceat(c, idx)
    keep = csum != 0
    idx = idx[keep]
    return g[idx], w[idx], csum[keep]


def _expand_numpy(words, lengths):
    nrows, width = words.shape
    g = np.arange(nrows, dtype=np.int64)
    w = np.full((nrows, width), -1, np.int64)
    c = np.ones(nrows, np.int64)
    for q in range(width):
        active = lengths[g] > q
        if not active.any():
            break
        pg, pw, pc = g[~active], w[~active], c[~active]
        ag, aw, ac = g[active], w[active], c[active]
        y = words[ag, q]
        sy = SECOND[y]
        if q:
            p = (SECOND[aw[:, :q]] <= sy[:, None]).sum(axis=1)
        else:
            p = np.zeros(len(ag), np.int64)
        cols = np.arange(q + 1)
        rows = np.arange(len(ag))[:, None]
        src = cols[None, :] - (cols[None, :] > p[:, None])
        ins = np.full_like(aw, -1)
        ins[:, : q + 1] = aw[rows, src]
        ins[np.arange(len(ag)), p] = y
        out_g, out_w, out_c = [pg, ag], [pw, ins], [pc, ac]
        for s in range(q):
            x = aw[:, s]
            z = COMM[x, y]
            m = (s >= p) & (z >= 0)
            if not m.any():
                continue
            base = aw[m]
            zz, xx = z[m], x[m]
            w1 = np.full_like(base, -1)
            w1[:, :s] = base[:, :s]
            w1[:, s + 2 : q + 1] = base[:, s + 1 : q]
            w2 = w1.copy()
            w1[:, s], w1[:, s + 1] = zz, xx
            w2[:, s], w2[:, s + 1] = xx, zz
            out_g += [ag[m], ag[m]]
            out_w += [w1, w2]
            out_c += [ac[m], -ac[m]]
        g, w, c = _merge(
            np.concatenate(out_g), np.concatenate(out_w), np.concatenate(out_c)
        )
    g, w, c = _merge(g, w, c)
    return g, _pack_rows(w), c


# --------------------------------------------------------------------------
# numba path

try:
    from numba import njit, types
    from numba.typed import Dict

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @njit(cache=True)
    def _add(d, key, c):
        d[key] = d.get(key, 0) + c

    @njit(cache=True)
    def _rmul_into(buf, k, y, c, out, second, comm):
        sy = second[y]
        p = k
        while p > 0 and second[buf[p - 1]] > sy:
            p -= 1
        key = 0
        r = 0
        for s in range(p):
            key |= (buf[s] + 1) << (BITS * r)
            r += 1
        key |= (y + 1) << (BITS * r)
        r += 1
        for s in range(p, k):
            key |= (buf[s] + 1) << (BITS * r)
            r += 1
        _add(out, key, c)
        for q in range(p, k):
            x = buf[q]
            z = comm[x, y]
            if z < 0:
                continue
            k1 = 0
            k2 = 0
            r = 0
            for s in range(q):
                k1 |= (buf[s] + 1) << (BITS * r)
                r += 1
            k2 = k1
            k1 |= (z + 1) << (BITS * r)
            k2 |= (x + 1) << (BITS * r)
            r += 1
            k1 |= (x + 1) << (BITS * r)
            k2 |= (z + 1) << (BITS * r)
            r += 1
            for s in range(q + 1, k):
                k1 |= (buf[s] + 1) << (BITS * r)
                k2 |= (buf[s] + 1) << (BITS * r)
                r += 1
            _add(out, k1, c)
            _add(out, k2, -c)

    @njit(cache=True)
    def _numba_expand(words, lengths, second, comm):
        nrows = words.shape[0]
        cap = max(16, 4 * nrows)
        rows = np.empty(cap, np.int64)
        keys = np.empty(cap, np.int64)
        coeffs = np.empty(cap, np.int64)
        n = 0
        buf = np.empty(MAX_LETTERS + 1, np.int64)
        for r in range(nrows):
            length = lengths[r]
            p = 1 if length > 0 else 0
            while p < length and second[words[r, p]] >= second[words[r, p - 1]]:
                p += 1
            cur = Dict.empty(key_type=types.int64, value_type=types.int64)
            key = 0
            for s in range(p):
                key |= (words[r, s] + 1) << (BITS * s)
            cur[key] = 1
            for q in range(p, length):
                y = words[r, q]
                nxt = Dict.empty(key_type=types.int64, value_type=types.int64)
                for kk, c in cur.items():
                    if c == 0:
                        continue
                    for s in range(q):
                        buf[s] = ((kk >> (BITS * s)) & MASK) - 1
                    _rmul_into(buf, q, y, c, nxt, second, comm)
                cur = nxt
            for kk, c in cur.items():
                if c == 0:
                    continue
                if n == cap:
                    cap *= 2
                    rows2 = np.empty(cap, np.int64)
                    keys2 = np.empty(cap, np.int64)
                    coeffs2 = np.empty(cap, np.int64)
                    rows2[:n] = rows[:n]
                    keys2[:n] = keys[:n]
                    coeffs2[:n] = coeffs[:n]
                    rows, keys, coeffs = rows2, keys2, coeffs2
                rows[n] = r
                keys[n] = kk
                coeffs[n] = c
                n += 1
        return rows[:n], keys[:n], coeffs[:n]



def expand_words(words, lengths, backend=None):
    """Normal forms of a batch of words.

    Returns ``(row, key, coeff)`` arrays: word ``row`` contributes ``coeff``
    times the packed normal word ``key``.  Zero coefficients never appear.
    """
    words = np.ascontiguousarray(words, dtype=np.int64)
    lengths = np.ascontiguousarray(lengths, dtype=np.int64)
    if len(lengths) == 0:
        empty = np.empty(0, np.int64)
        return empty, empty.copy(), empty.copy()
    backend = backend or _config.backend()
    if backend == "numba":
        return _numba_expand(words, lengths, SECOND, COMM)
    return _expand_numpy(words, lengths)
