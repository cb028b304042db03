"""Truncated Drinfeld-Kohno algebras of chord diagrams on n strands.

Elements are stored sparsely over the normal-form basis: words in the chords
t^{ij} whose second strand indices are nondecreasing.  Coefficients are
``fractions.Fraction``; every series carries its truncation degree and all
operations drop terms above it.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm, factorial
import itertools
import re

import numpy as np

from . import _config
from .kernels import (
    FIRST,
    SECOND,
    MAX_STRANDS,
    chord_code,
    expand_words,
    unpack_key,
    words_to_array,
)


class DimensionMismatch(ValueError):
    """Operands live on different strand counts or truncation degrees."""


@dataclass(frozen=True, order=True)
class ChordGenerator:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j or min(self.i, self.j) < 1:
            raise ValueError(f"invalid chord t{self.i}{self.j}")
        if self.i > self.j:
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    @property
    def code(self):
        return chord_code(self.i, self.j)

    @classmethod
    def from_code(cls, code):
        return cls(int(FIRST[code]), int(SECOND[code]))

    def __str__(self):
        return f"{self.i}{self.j}"


def word_pairs(word):
    """Flat (i1, j1, i2, j2, ...) key of a word of letter codes."""
    out = []
    for c in word:
        out.append(int(FIRST[c]))
        out.append(int(SECOND[c]))
    return tuple(out)


def word_strands(word):
    return max((int(SECOND[c]) for c in word), default=0)


def is_normal_word(word):
    return all(SECOND[a] <= SECOND[b] for a, b in zip(word, word[1:]))


def format_word(word):
    if not word:
        return "-"
    return ".".join(f"{FIRST[c]}{SECOND[c]}" for c in word)


def parse_word(text):
    """Inverse of :func:`format_word`; ``"-"`` is the empty word."""
    text = text.strip()
    if text in ("-", ""):
        return ()
    word = []
    for part in text.split("."):
        if len(part) != 2 or not part.isdigit():
            raise ValueError(f"bad chord {part!r} in monomial {text!r}")
        word.append(ChordGenerator(int(part[0]), int(part[1])).code)
    return tuple(word)


@dataclass(frozen=True)
class ChordMonomial:
    strands: int
    letters: tuple

    def __post_init__(self):
        letters = tuple(
            g if isinstance(g, ChordGenerator) else ChordGenerator(*g)
            for g in self.letters
        )
        object.__setattr__(self, "letters", letters)
        for g in letters:
            if g.j > self.strands:
                raise ValueError(f"chord {g} does not fit on {self.strands} strands")

    @classmethod
    def from_word(cls, strands, word):
        return cls(strands, tuple(ChordGenerator.from_code(c) for c in word))

    @property
    def word(self):
        return tuple(g.code for g in self.letters)

    @property
    def degree(self):
        return len(self.letters)

    def is_normal(self):
        return is_normal_word(self.word)

    @property
    def key(self):
        return word_pairs(self.word)

    def __str__(self):
        return format_word(self.word)


@dataclass(frozen=True)
class Permutation:
    """A bijection of 1..n; position p goes to ``images[p-1]``."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text):
        """``"132"`` style one-line notation (n <= 9)."""
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self):
        return len(self.images)

    def __call__(self, p):
        return self.images[p - 1]

    def inverse(self):
        inv = [0] * self.n
        for p, v in enumerate(self.images, 1):
            inv[v - 1] = p
        return Permutation(tuple(inv))

    def __mul__(self, other):
        """Function composition: ``(self * other)(p) == self(other(p))``."""
        if self.n != other.n:
            raise DimensionMismatch("permutation sizes differ")
        return Permutation(tuple(self(other(p)) for p in range(1, self.n + 1)))

    def __str__(self):
        return "".join(str(v) for v in self.images)


_key_cache = {}


def _decode(key):
    word = _key_cache.get(key)
    if word is None:
        word = _key_cache[key] = unpack_key(key)
    return word


def _common_denominator(coeffs):
    return lcm(*(c.denominator for c in coeffs)) if coeffs else 1


def reduce_words(words, weights):
    """Normal form of ``sum(weight * word)`` for integer weights.

    Returns a dict from normal words to nonzero Python ints.
    """
    if not words:
        return {}
    arr, lengths = words_to_array(words)
    rows, keys, coeffs = expand_words(arr, lengths)
    if len(rows) == 0:
        return {}
    w = np.empty(len(weights), dtype=object)
    w[:] = weights
    contrib = w[rows] * coeffs.astype(object)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    contrib = contrib[order]
    start = np.ones(len(keys), bool)
    start[1:] = keys[1:] != keys[:-1]
    idx = np.flatnonzero(start)
    sums = np.add.reduceat(contrib, idx)
    out = {}
    for k, s in zip(keys[idx].tolist(), sums.tolist()):
        if s:
            out[_decode(k)] = s
    return out


class ChordSeries:
    """Element of A^pb_n truncated above ``max_degree``.

    Treat instances as immutable; ``terms`` maps normal words (tuples of
    letter codes) to nonzero Fractions.
    """

    __slots__ = ("strands", "max_degree", "terms")

    def __init__(self, strands, max_degree, terms=None):
        if strands < 0 or strands > MAX_STRANDS:
            raise ValueError(f"strand count must lie in 0..{MAX_STRANDS}")
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        self.strands = strands
        self.max_degree = max_degree
        clean = {}
        if terms:
            for w, c in terms.items():
                if len(w) <= max_degree and c:
                    clean[w] = Fraction(c)
        self.terms = clean

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, strands, max_degree):
        return cls(strands, max_degree)

    @classmethod
    def one(cls, strands, max_degree):
        return cls(strands, max_degree, {(): Fraction(1)})

    @classmethod
    def scalar(cls, strands, max_degree, value):
        return cls(strands, max_degree, {(): Fraction(value)})

    @classmethod
    def generator(cls, i, j, strands, max_degree):
        g = ChordGenerator(i, j)
        if g.j > strands:
            raise ValueError(f"t{g} does not fit on {strands} strands")
        return cls(strands, max_degree, {(g.code,): Fraction(1)})

    @classmethod
    def from_words(cls, strands, max_degree, combo):
        """Reduce an arbitrary ``{word: coeff}`` combination to normal form."""
        words, coeffs = [], []
        for w, c in combo.items():
            if len(w) <= max_degree and c:
                if word_strands(w) > strands:
                    raise ValueError(f"word {format_word(w)} needs more than {strands} strands")
                words.append(tuple(w))
                coeffs.append(Fraction(c))
        return _reduce_weighted(strands, max_degree, words, coeffs)

    @classmethod
    def parse(cls, strands, max_degree, text):
        """Parse sums like ``"1 - 1/24*13.23 + 2*12"``.

        A bare token made of chords (``"23.12"``, ``"13"``) is a monomial with
        coefficient 1; any other bare token is a constant.  Write ``"12*-"``
        for the constant 12.
        """
        combo = {}
        pieces = _SIGN.split(text.replace(" ", ""))
        if pieces[0]:
            pieces = ["+"] + pieces
        else:
            pieces = pieces[1:]
        if len(pieces) % 2:
            raise ValueError(f"cannot parse {text!r}")
        for sign, body in zip(pieces[::2], pieces[1::2]):
            if not body:
                raise ValueError(f"cannot parse {text!r}")
            if "*" in body:
                coeff, mono = body.split("*", 1)
            elif _looks_like_monomial(body):
                coeff, mono = "1", body
            else:
                coeff, mono = body, "-"
            c = Fraction(coeff) * (-1 if sign == "-" else 1)
            w = parse_word(mono)
            combo[w] = combo.get(w, 0) + c
        return cls.from_words(strands, max_degree, combo)

    # basic structure ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, ChordSeries):
            raise TypeError(f"expected ChordSeries, got {type(other).__name__}")
        if self.strands != other.strands or self.max_degree != other.max_degree:
            raise DimensionMismatch(
                f"series on ({self.strands} strands, degree {self.max_degree}) and "
                f"({other.strands} strands, degree {other.max_degree})"
            )

    def _new(self, terms):
        out = ChordSeries.__new__(ChordSeries)
        out.strands = self.strands
        out.max_degree = self.max_degree
        out.terms = terms
        return out

    def __add__(self, other):
        if not isinstance(other, ChordSeries):
            return self + ChordSeries.scalar(self.strands, self.max_degree, other)
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return self._new({})
        return self._new({w: c * factor for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ChordSeries):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(1 / Fraction(other))

    def __eq__(self, other):
        if isinstance(other, ChordSeries):
            return (
                self.strands == other.strands
                and self.max_degree == other.max_degree
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def degree_part(self, m):
        return self._new({w: c for w, c in self.terms.items() if len(w) == m})

    def up_to(self, m):
        return self._new({w: c for w, c in self.terms.items() if len(w) <= m})

    def lowest_degree(self):
        return min((len(w) for w in self.terms), default=None)

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def with_max_degree(self, max_degree):
        return ChordSeries(self.strands, max_degree, self.terms)

    def with_strands(self, strands):
        if any(word_strands(w) > strands for w in self.terms):
            raise ValueError(f"series does not fit on {strands} strands")
        return ChordSeries(strands, self.max_degree, self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), word_pairs(t[0])))

    def coefficient(self, word):
        return self.terms.get(tuple(word), Fraction(0))

    def __repr__(self):
        return f"ChordSeries(n={self.strands}, M={self.max_degree}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if not w:
                parts.append(str(c))
            elif c == 1:
                parts.append(format_word(w))
            elif c == -1:
                parts.append("-" + format_word(w))
            else:
                parts.append(f"{c}*{format_word(w)}")
        return " + ".join(parts).replace("+ -", "- ")


_SIGN = re.compile(r"(?<!\*)([+-])")


def _looks_like_monomial(s):
    return all(len(p) == 2 and p.isdigit() and p[0] != p[1] for p in s.split("."))


def _reduce_weighted(strands, max_degree, words, coeffs):
    den = _common_denominator(coeffs)
    ints = [int(c * den) for c in coeffs]
    reduced = reduce_words(words, ints)
    out = ChordSeries.__new__(ChordSeries)
    out.strands = strands
    out.max_degree = max_degree
    out.terms = {w: Fraction(v, den) for w, v in reduced.items()}
    return out


def normal_form(m):
    """Expand a ChordMonomial in the normal-form basis."""
    if not isinstance(m, ChordMonomial):
        raise TypeError("normal_form expects a ChordMonomial")
    return ChordSeries.from_words(m.strands, max(m.degree, 0), {m.word: 1})


def multiply(a, b):
    a._check(b)
    M = a.max_degree
    if not a.terms or not b.terms:
        return a._new({})
    if set(b.terms) == {()}:
        return a.scale(b.terms[()])
    if set(a.terms) == {()}:
        return b.scale(a.terms[()])
    da = _common_denominator(list(a.terms.values()))
    db = _common_denominator(list(b.terms.values()))
    by_deg_b = {}
    for v, c in b.terms.items():
        by_deg_b.setdefault(len(v), []).append((v, int(c * db)))
    words, weights = [], []
    for u, cu in a.terms.items():
        nu = int(cu * da)
        room = M - len(u)
        for dv, items in by_deg_b.items():
            if dv <= room:
                for v, nv in items:
                    words.append(u + v)
                    weights.append(nu * nv)
    reduced = reduce_words(words, weights)
    den = da * db
    return a._new({w: Fraction(v, den) for w, v in reduced.items()})


def power(x, k):
    out = ChordSeries.one(x.strands, x.max_degree)
    for _ in range(k):
        out = out * x
    return out


def exp(x):
    if x.constant_term():
        raise ValueError("exp needs a series with zero constant term")
    out = ChordSeries.one(x.strands, x.max_degree)
    term = out
    low = x.lowest_degree()
    if low is None:
        return out
    for k in range(1, x.max_degree // low + 1):
        term = term * x
        if not term:
            break
        out = out + term.scale(Fraction(1, factorial(k)))
    return out


def log(y):
    if y.constant_term() != 1:
        raise ValueError("log needs a series with constant term 1")
    u = y - 1
    out = y._new({})
    low = u.lowest_degree()
    if low is None:
        return out
    term = ChordSeries.one(y.strands, y.max_degree)
    for k in range(1, y.max_degree // low + 1):
        term = term * u
        if not term:
            break
        out = out + term.scale(Fraction((-1) ** (k + 1), k))
    return out


def inverse(y):
    c0 = y.constant_term()
    if not c0:
        raise ValueError("inverse needs an invertible constant term")
    u = y.scale(1 / c0) - 1
    out = ChordSeries.one(y.strands, y.max_degree)
    low = u.lowest_degree()
    if low is None:
        return out.scale(1 / c0)
    term = out
    neg = -u
    for _ in range(y.max_degree // low):
        term = term * neg
        if not term:
            break
        out = out + term
    return out.scale(1 / c0)


def commutator(a, b):
    return a * b - b * a


def substitute_letters(x, images, strands):
    """Apply the algebra map sending each letter code to a sum of letters.

    ``images[code]`` is a list of (letter code, integer coefficient) pairs;
    the result lives on ``strands`` strands.
    """
    words, coeffs = [], []
    for w, c in x.terms.items():
        alts = [images[code] for code in w]
        if any(not a for a in alts):
            continue
        for combo in itertools.product(*alts):
            mult = 1
            for _, k in combo:
                mult *= k
            words.append(tuple(code for code, _ in combo))
            coeffs.append(c * mult)
    return _reduce_weighted(strands, x.max_degree, words, coeffs)


def _relabel_table(mapping, n_from):
    table = {}
    for j in range(2, n_from + 1):
        for i in range(1, j):
            table[chord_code(i, j)] = [(chord_code(mapping(i), mapping(j)), 1)]
    return table


def permute(x, tau):
    """Strand relabelling t^{ij} -> t^{tau(i) tau(j)}.

    Under ``ASSOCFORGE_PERM_CONVENTION=preimage`` the inverse permutation is
    used instead.
    """
    if tau.n != x.strands:
        raise DimensionMismatch(f"permutation of size {tau.n} on {x.strands} strands")
    if _config.perm_convention() == "preimage":
        tau = tau.inverse()
    if tau.images == tuple(range(1, tau.n + 1)):
        return x
    return substitute_letters(x, _relabel_table(tau, x.strands), x.strands)


def parity(x):
    return x._new({w: (-c if len(w) % 2 else c) for w, c in x.terms.items()})


class TensorSeries:
    """Element of A^pb_n (x) A^pb_n truncated at total degree ``max_degree``."""

    __slots__ = ("strands", "max_degree", "terms")

    def __init__(self, strands, max_degree, terms=None):
        self.strands = strands
        self.max_degree = max_degree
        self.terms = {}
        if terms:
            for (u, v), c in terms.items():
                if c and len(u) + len(v) <= max_degree:
                    self.terms[(u, v)] = Fraction(c)

    def _check(self, other):
        if self.strands != other.strands or self.max_degree != other.max_degree:
            raise DimensionMismatch("tensor series shapes differ")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        out = TensorSeries(self.strands, self.max_degree)
        out.terms = terms
        return out

    def __neg__(self):
        out = TensorSeries(self.strands, self.max_degree)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return (
            self.strands == other.strands
            and self.max_degree == other.max_degree
            and self.terms == other.terms
        )

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def degree_part(self, m):
        out = TensorSeries(self.strands, self.max_degree)
        out.terms = {k: c for k, c in self.terms.items() if len(k[0]) + len(k[1]) == m}
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(),
            key=lambda t: (len(t[0][0]) + len(t[0][1]), word_pairs(t[0][0]), word_pairs(t[0][1])),
        )
        return " + ".join(f"{c}*({format_word(u)} x {format_word(v)})" for (u, v), c in items)

    __repr__ = __str__


def tensor(x, y):
    """x (x) y truncated at total degree."""
    x._check(y)
    M = x.max_degree
    out = TensorSeries(x.strands, M)
    out.terms = {
        (u, v): cu * cv
        for u, cu in x.terms.items()
        for v, cv in y.terms.items()
        if len(u) + len(v) <= M
    }
    return out


@lru_cache(maxsize=None)
def _split_word(word):
    """Coproduct of a normal word: all (subword, complement) splittings."""
    k = len(word)
    out = {}
    for mask in range(1 << k):
        left = tuple(word[r] for r in range(k) if mask >> r & 1)
        right = tuple(word[r] for r in range(k) if not mask >> r & 1)
        out[(left, right)] = out.get((left, right), 0) + 1
    return out


def coproduct(x):
    """Multiplicative extension of t -> t(x)1 + 1(x)t.

    Subwords of a normal word are normal, so no re-reduction is needed.
    """
    terms = {}
    for w, c in x.terms.items():
        for key, k in _split_word(w).items():
            s = terms.get(key, 0) + c * k
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    out = TensorSeries(x.strands, x.max_degree)
    out.terms = terms
    return out


def is_group_like(x):
    return coproduct(x) == tensor(x, x)


def is_primitive(x):
    one = ChordSeries.one(x.strands, x.max_degree)
    return coproduct(x) == tensor(x, one) + tensor(one, x)


def counit(x):
    return x.constant_term()


@lru_cache(maxsize=None)
def normal_basis(n, m):
    """Normal-form words of degree m on n strands, sorted by flat key."""
    letters_by_block = [
        [chord_code(i, j) for i in range(1, j)] for j in range(2, n + 1)
    ]
    out = []

    def rec(block, remaining, prefix):
        if remaining == 0:
            out.append(prefix)
            return
        if block == len(letters_by_block):
            return
        # choose how many letters come from this block
        for k in range(remaining, -1, -1):
            for tail in itertools.product(letters_by_block[block], repeat=k):
                rec(block + 1, remaining - k, prefix + tail)

    if m == 0:
        return ((),)
    rec(0, m, ())
    return tuple(sorted(out, key=word_pairs))


def graded_dimension(n, m):
    """Number of normal-form monomials of degree m on n strands."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    # dp[k] = number of normal words of degree k using the blocks seen so far
    dp = [1] + [0] * m
    for block_size in range(1, n):
        for k in range(1, m + 1):
            dp[k] += block_size * dp[k - 1]
    return dp[m]


def series_from_vector(strands, max_degree, basis, vector):
    return ChordSeries(strands, max_degree, {w: c for w, c in zip(basis, vector) if c})


def vector_from_series(x, basis_index, m):
    vec = [Fraction(0)] * len(basis_index)
    for w, c in x.terms.items():
        if len(w) == m:
            vec[basis_index[w]] = c
    return vec
