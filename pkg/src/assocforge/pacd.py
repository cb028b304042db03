"""Parenthesized braids and chord diagrams, and the functor Z between them.

A PaCD morphism is a formal product ``D . P`` of a chord series D (indexed
by the domain points) and a parenthesized permutation P.  Composition is
diagrammatic, ``f`` first::

    (D1 . P1) o (D2 . P2) = (D1 . D2^{P1^-1}) . (P2 after P1)

where ``D2^{P1^-1}`` relabels the range points of P1 back to its domain.

Braid words are compiled on the right-normed parenthesization
``(x(x(...(xx))))`` into tokens ``a``, ``a^-1``, ``s``, ``s^-1`` wrapped in
strand operations, and Z sends ``a`` to ``Phi . a`` and ``s`` to
``exp(t12/2) . X``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chords import ChordSeries, Permutation, exp, is_group_like, permute
from .chords import inverse as series_inverse
from .cosimplicial import apply_d, apply_s
from .equations import is_associator

LEAF = 1


def _size(shape):
    if shape is None:
        return 0
    if shape == LEAF:
        return 1
    return _size(shape[0]) + _size(shape[1])


def _double(shape, i):
    """Replace leaf i (1-based) by an innermost pair."""
    if shape == LEAF:
        return (LEAF, LEAF)
    left = _size(shape[0])
    if i <= left:
        return (_double(shape[0], i), shape[1])
    return (shape[0], _double(shape[1], i - left))


def _remove(shape, i):
    if shape == LEAF:
        return None
    left = _size(shape[0])
    if i <= left:
        sub = _remove(shape[0], i)
        return shape[1] if sub is None else (sub, shape[1])
    sub = _remove(shape[1], i - left)
    return shape[0] if sub is None else (shape[0], sub)


@dataclass(frozen=True)
class Parenthesization:
    """Full binary tree with ordered leaves; ``shape`` is nested pairs of 1."""

    shape: object

    def __post_init__(self):
        def ok(s):
            return s == LEAF or (
                isinstance(s, tuple) and len(s) == 2 and ok(s[0]) and ok(s[1])
            )

        if self.shape is not None and not ok(self.shape):
            raise ValueError(f"not a full binary tree: {self.shape!r}")

    @property
    def n(self):
        return _size(self.shape)

    @classmethod
    def right_normed(cls, n):
        if n < 1:
            raise ValueError("need at least one leaf")
        shape = LEAF
        for _ in range(n - 1):
            shape = (LEAF, shape)
        return cls(shape)

    @classmethod
    def left_normed(cls, n):
        if n < 1:
            raise ValueError("need at least one leaf")
        shape = LEAF
        for _ in range(n - 1):
            shape = (shape, LEAF)
        return cls(shape)

    @classmethod
    def parse(cls, text):
        """Parse ``"(x(xx))"``; a lone ``"x"`` is the one-leaf tree."""
        text = text.replace(" ", "")
        pos = 0

        def node():
            nonlocal pos
            if pos >= len(text):
                raise ValueError(f"unexpected end of {text!r}")
            if text[pos] == "x":
                pos += 1
                return LEAF
            if text[pos] != "(":
                raise ValueError(f"unexpected {text[pos]!r} in {text!r}")
            pos += 1
            left = node()
            right = node()
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"expected ')' in {text!r}")
            pos += 1
            return (left, right)

        shape = node()
        if pos != len(text):
            raise ValueError(f"trailing characters in {text!r}")
        return cls(shape)

    def __str__(self):
        def fmt(s):
            return "x" if s == LEAF else f"({fmt(s[0])}{fmt(s[1])})"

        return "" if self.shape is None else fmt(self.shape)

    def extend_left(self):
        return Parenthesization((LEAF, self.shape))

    def extend_right(self):
        return Parenthesization((self.shape, LEAF))

    def double(self, i):
        if not 1 <= i <= self.n:
            raise ValueError(f"no leaf {i} in {self}")
        return Parenthesization(_double(self.shape, i))

    def remove(self, i):
        if not 1 <= i <= self.n:
            raise ValueError(f"no leaf {i} in {self}")
        return Parenthesization(_remove(self.shape, i))


@dataclass(frozen=True)
class PaPMorphism:
    """Parenthesized permutation: domain point p ends at range point perm(p)."""

    domain: Parenthesization
    range: Parenthesization
    perm: Permutation

    def __post_init__(self):
        if not (self.domain.n == self.range.n == self.perm.n):
            raise ValueError("domain, range and permutation sizes differ")

    @property
    def n(self):
        return self.perm.n

    @classmethod
    def identity(cls, tree):
        return cls(tree, tree, Permutation.identity(tree.n))

    def then(self, other):
        if self.range != other.domain:
            raise ValueError(f"cannot compose: range {self.range} != domain {other.domain}")
        return PaPMorphism(self.domain, other.range, other.perm * self.perm)

    def apply_d(self, i):
        n, p = self.n, self.perm.images
        if i == 0:
            return PaPMorphism(
                self.domain.extend_left(),
                self.range.extend_left(),
                Permutation((1,) + tuple(v + 1 for v in p)),
            )
        if i == n + 1:
            return PaPMorphism(
                self.domain.extend_right(),
                self.range.extend_right(),
                Permutation(p + (n + 1,)),
            )
        if not 1 <= i <= n:
            raise ValueError(f"d_{i} is undefined on {n} strands")
        target = p[i - 1]
        images = []
        for q, v in enumerate(p, 1):
            v2 = v + 1 if v > target else v
            images.append(v2)
            if q == i:
                images.append(v2 + 1)
        return PaPMorphism(self.domain.double(i), self.range.double(target), Permutation(images))

    def apply_s(self, i):
        n, p = self.n, self.perm.images
        if not 1 <= i <= n:
            raise ValueError(f"s_{i} is undefined on {n} strands")
        target = p[i - 1]
        images = [v - 1 if v > target else v for q, v in enumerate(p, 1) if q != i]
        return PaPMorphism(self.domain.remove(i), self.range.remove(target), Permutation(images))

    def __str__(self):
        return f"{self.domain} -[{self.perm}]-> {self.range}"


@dataclass(frozen=True, eq=False)
class PaCDMorphism:
    skeleton: PaPMorphism
    series: ChordSeries

    def __post_init__(self):
        if self.series.strands != self.skeleton.n:
            raise ValueError("series strand count differs from skeleton size")

    @property
    def max_degree(self):
        return self.series.max_degree

    @classmethod
    def identity(cls, tree, M):
        return cls(PaPMorphism.identity(tree), ChordSeries.one(tree.n, M))

    def __eq__(self, other):
        if not isinstance(other, PaCDMorphism):
            return NotImplemented
        return self.skeleton == other.skeleton and self.series == other.series

    __hash__ = None

    def __repr__(self):
        return f"PaCDMorphism({self.series} . {self.skeleton})"


def compose(f, g):
    """f first, then g."""
    skel = f.skeleton.then(g.skeleton)
    moved = permute(g.series, f.skeleton.perm.inverse())
    return PaCDMorphism(skel, f.series * moved)


def apply_d_morphism(i, f):
    return PaCDMorphism(f.skeleton.apply_d(i), apply_d(i, f.series))


def apply_s_morphism(i, f):
    return PaCDMorphism(f.skeleton.apply_s(i), apply_s(i, f.series))


A_DOMAIN = Parenthesization(((LEAF, LEAF), LEAF))
A_RANGE = Parenthesization((LEAF, (LEAF, LEAF)))
PAIR = Parenthesization((LEAF, LEAF))
SWAP = Permutation((2, 1))


def skeleton_of(name):
    if name == "a":
        return PaPMorphism(A_DOMAIN, A_RANGE, Permutation.identity(3))
    if name == "a^-1":
        return PaPMorphism(A_RANGE, A_DOMAIN, Permutation.identity(3))
    if name in ("s", "s^-1", "X"):
        return PaPMorphism(PAIR, PAIR, SWAP)
    if name == "H":
        return PaPMorphism.identity(PAIR)
    raise ValueError(f"unknown generator {name!r}")


def generator(name, M, phi=None):
    """The PaCD generators a, a^-1, X, H, R (= exp(H/2) X) and R^-1."""
    t12 = ChordSeries.generator(1, 2, 2, M)
    if name in ("a", "a^-1"):
        series = ChordSeries.one(3, M) if phi is None else phi.with_max_degree(M)
        if name == "a^-1" and phi is not None:
            series = series_inverse(series)
        return PaCDMorphism(skeleton_of(name), series)
    if name == "X":
        return PaCDMorphism(skeleton_of("X"), ChordSeries.one(2, M))
    if name == "H":
        return PaCDMorphism(skeleton_of("H"), t12)
    if name == "R":
        return PaCDMorphism(skeleton_of("X"), exp(t12.scale(Fraction(1, 2))))
    if name == "R^-1":
        return PaCDMorphism(skeleton_of("X"), exp(t12.scale(Fraction(-1, 2))))
    raise ValueError(f"unknown generator {name!r}")


@dataclass(frozen=True)
class Token:
    """A PaB generator with strand operations applied innermost-last.

    ``prefixes`` lists face indices outermost first, so ``Token("s", (0, 3))``
    is d_0 d_3 s: first d_3, then d_0.
    """

    name: str
    prefixes: tuple = ()

    def __post_init__(self):
        if self.name not in ("a", "a^-1", "s", "s^-1"):
            raise ValueError(f"unknown braid token {self.name!r}")

    @property
    def skeleton(self):
        skel = skeleton_of(self.name)
        for i in reversed(self.prefixes):
            skel = skel.apply_d(i)
        return skel

    def __str__(self):
        return "".join(f"d{i} " for i in self.prefixes) + self.name


@dataclass(frozen=True)
class PaBWord:
    tokens: tuple

    def __post_init__(self):
        skels = [t.skeleton for t in self.tokens]
        for a, b in zip(skels, skels[1:]):
            if a.range != b.domain:
                raise ValueError(f"tokens not composable: {a} then {b}")

    def skeleton(self, base=None):
        if not self.tokens:
            if base is None:
                raise ValueError("empty word needs a base parenthesization")
            return PaPMorphism.identity(base)
        skel = self.tokens[0].skeleton
        for t in self.tokens[1:]:
            skel = skel.then(t.skeleton)
        return skel

    def __add__(self, other):
        return PaBWord(self.tokens + other.tokens)

    def __str__(self):
        return " o ".join(str(t) for t in self.tokens) or "id"


@lru_cache(maxsize=None)
def compile_braid_generator(i, n, inverse=False):
    """sigma_i (or its inverse) on n strands as a word from O_r to O_r.

    Leaves i, i+1 sit in a subtree (x_i (x_{i+1} Z)) of the right-normed
    tree; a cabled a^-1 regroups it to ((x_i x_{i+1}) Z), the swap acts on
    the pair, and a cabled a restores the shape.
    """
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"sigma_{i} is undefined on {n} strands")
    swap = "s^-1" if inverse else "s"
    if i == n - 1:
        return PaBWord((Token(swap, (0,) * (n - 2)),))
    k = n - i - 1
    # doubling the last leaf k-1 times keeps the cabled block right-normed
    cable = tuple(range(k + 1, 2, -1))
    outer = (0,) * (i - 1)
    return PaBWord(
        (
            Token("a^-1", outer + cable),
            Token(swap, outer + cable + (3,)),
            Token("a", outer + cable),
        )
    )


def parse_braid_word(text, n):
    """``"s1 s2^-1 s1"`` on n strands; the empty string is the identity."""
    word = PaBWord(())
    for tok in text.split():
        body, inv = (tok[:-3], True) if tok.endswith("^-1") else (tok, False)
        if not body.startswith("s") or not body[1:].isdigit():
            raise ValueError(f"bad braid token {tok!r}")
        word = word + compile_braid_generator(int(body[1:]), n, inv)
    return word


def pure_braid_word(i, j, n):
    """sigma_{j-1} ... sigma_{i+1} sigma_i^2 sigma_{i+1}^-1 ... sigma_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise ValueError(f"no pure braid generator ({i}, {j}) on {n} strands")
    word = PaBWord(())
    for k in range(j - 1, i, -1):
        word = word + compile_braid_generator(k, n)
    word = word + compile_braid_generator(i, n) + compile_braid_generator(i, n)
    for k in range(i + 1, j):
        word = word + compile_braid_generator(k, n, True)
    return word


def inverse_word(word):
    flip = {"a": "a^-1", "a^-1": "a", "s": "s^-1", "s^-1": "s"}
    return PaBWord(tuple(Token(flip[t.name], t.prefixes) for t in reversed(word.tokens)))


def evaluate_Z(word, phi, n=None, strict=True):
    """Image of a PaB word under the functor determined by ``phi``."""
    if strict and not is_associator(phi):
        raise ValueError("phi is not an associator at its truncation degree")
    M = phi.max_degree
    if not word.tokens:
        if n is None:
            raise ValueError("empty word needs a strand count")
        return PaCDMorphism.identity(Parenthesization.right_normed(n), M)
    images = {
        "a": generator("a", M, phi),
        "a^-1": generator("a^-1", M, phi),
        "s": generator("R", M),
        "s^-1": generator("R^-1", M),
    }
    out = None
    for tok in word.tokens:
        f = images[tok.name]
        for i in reversed(tok.prefixes):
            f = apply_d_morphism(i, f)
        out = f if out is None else compose(out, f)
    return out


@dataclass
class RelationCheck:
    relation: str
    ok: bool
    first_failing_degree: object = None


def check_braid_relations(n, phi, M=None):
    """Braid relations for Z on n strands, each compared to truncation M."""
    M = phi.max_degree if M is None else M
    phi = phi.with_max_degree(M)

    def z(text):
        return evaluate_Z(parse_braid_word(text, n), phi, n, strict=False)

    checks = []

    def record(name, lhs, rhs):
        diff = lhs.series - rhs.series
        same = lhs.skeleton == rhs.skeleton and diff.is_zero()
        checks.append(RelationCheck(name, same, None if same else diff.lowest_degree()))

    for i in range(1, n - 1):
        a, b = f"s{i}", f"s{i + 1}"
        record(f"{a} {b} {a} = {b} {a} {b}", z(f"{a} {b} {a}"), z(f"{b} {a} {b}"))
    for i in range(1, n):
        for j in range(i + 2, n):
            record(f"s{i} s{j} = s{j} s{i}", z(f"s{i} s{j}"), z(f"s{j} s{i}"))
    return checks


def is_group_like_morphism(f):
    return is_group_like(f.series)
