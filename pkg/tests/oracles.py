"""Independent reference implementations used only by the tests."""

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np


def pair(i, j):
    return (min(i, j), max(i, j))


@lru_cache(maxsize=None)
def naive_normal_form(word):
    """Leftmost-descent rewriting on words of (i, j) pairs.

    A descent ``x y`` with second(x) > second(y) becomes ``y x`` plus the
    commutator forced by the relations: zero for disjoint chords, and
    ``[t^{cb}, t^{ab}]`` when x = t^{ab} and y joins a to c.
    """
    for p in range(len(word) - 1):
        x, y = word[p], word[p + 1]
        if x[1] > y[1]:
            break
    else:
        return {word: 1}
    out = {}

    def add(w, c):
        for k, v in naive_normal_form(w).items():
            out[k] = out.get(k, 0) + c * v
            if not out[k]:
                del out[k]

    head, tail = word[:p], word[p + 2 :]
    add(head + (y, x) + tail, 1)
    a, b = x
    if a in y:
        c = y[0] if y[1] == a else y[1]
        z = pair(c, b)
        add(head + (z, x) + tail, 1)
        add(head + (x, z) + tail, -1)
    return out


def hilbert_coefficients(n, m_max):
    """Coefficients of prod_{k=1}^{n-1} 1/(1 - kx) by sympy series expansion."""
    import sympy

    x = sympy.symbols("x")
    f = sympy.Integer(1)
    for k in range(1, n):
        f = f / (1 - k * x)
    poly = sympy.series(f, x, 0, m_max + 1).removeO()
    return [int(poly.coeff(x, m)) for m in range(m_max + 1)]


def count_normal_words_bruteforce(n, m):
    letters = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    return sum(
        1
        for w in itertools.product(letters, repeat=m)
        if all(w[r][1] <= w[r + 1][1] for r in range(m - 1))
    )


def _sym2_gl2():
    """gl_2 acting on Sym^2 C^2 (basis x^2, xy, y^2), integer matrices."""
    # E_ab acts as the derivation x_a d/dx_b
    def op(a, b):
        mat = np.zeros((3, 3), dtype=object)
        monos = [(2, 0), (1, 1), (0, 2)]
        for col, (p, q) in enumerate(monos):
            exps = [p, q]
            k = exps[b]
            if k == 0:
                continue
            new = list(exps)
            new[b] -= 1
            new[a] += 1
            mat[monos.index(tuple(new)), col] += k
        return mat

    return {(a, b): op(a, b) for a in range(2) for b in range(2)}


def casimir_rep(n):
    """t^{ij} -> Omega_{ij} on (Sym^2 C^2)^{(x) n}; satisfies the 4T relations."""
    gens = _sym2_gl2()
    eye = np.array([[Fraction(int(r == c)) for c in range(3)] for r in range(3)], dtype=object)

    def place(mats):
        out = np.array([[Fraction(1)]], dtype=object)
        for m in mats:
            out = np.kron(out, m)
        return out

    reps = {}
    for j in range(2, n + 1):
        for i in range(1, j):
            total = None
            for a in range(2):
                for b in range(2):
                    mats = [eye] * n
                    mats[i - 1] = gens[(a, b)]
                    mats[j - 1] = gens[(b, a)]
                    term = place(mats)
                    total = term if total is None else total + term
            reps[(i, j)] = total
    return reps


def represent(terms, reps, dim):
    """Image of {word of pairs: coeff} under a letter representation."""
    out = np.zeros((dim, dim), dtype=object)
    out[:] = Fraction(0)
    for w, c in terms.items():
        m = np.identity(dim, dtype=object)
        for letter in w:
            m = m.dot(reps[letter])
        out = out + m * c
    return out
