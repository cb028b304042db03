"""Strand insertion, doubling and removal maps between the algebras A^pb_n."""

from dataclasses import dataclass
from functools import lru_cache

from .chords import ChordSeries, Permutation, permute, substitute_letters
from .kernels import chord_code


@dataclass(frozen=True)
class StrandOp:
    """One face (``d``) or degeneracy (``s``) map out of A^pb_n.

    kind is one of ``extend-left``, ``extend-right``, ``double``, ``remove``.
    """

    kind: str
    index: int
    source_strands: int

    def __post_init__(self):
        n, i = self.source_strands, self.index
        legal = {
            "extend-left": i == 0,
            "extend-right": i == n + 1,
            "double": 1 <= i <= n,
            "remove": 1 <= i <= n,
        }
        if self.kind not in legal:
            raise ValueError(f"unknown strand operation {self.kind!r}")
        if not legal[self.kind]:
            raise ValueError(f"index {i} is not legal for {self.kind} on {n} strands")

    @classmethod
    def face(cls, i, n):
        if i == 0:
            return cls("extend-left", i, n)
        if i == n + 1:
            return cls("extend-right", i, n)
        return cls("double", i, n)

    @property
    def target_strands(self):
        return self.source_strands - 1 if self.kind == "remove" else self.source_strands + 1

    def __call__(self, x):
        if self.kind == "remove":
            return apply_s(self.index, x)
        return apply_d(self.index, x)


def _d_image(i, j, k):
    if i < j:
        return [(j + 1, k + 1)]
    if i == j:
        return [(j, k + 1), (j + 1, k + 1)]
    if i < k:
        return [(j, k + 1)]
    if i == k:
        return [(j, k), (j, k + 1)]
    return [(j, k)]


def _s_image(i, j, k):
    if i < j:
        return [(j - 1, k - 1)]
    if i == j or i == k:
        return []
    if i < k:
        return [(j, k - 1)]
    return [(j, k)]


@lru_cache(maxsize=None)
def _table(kind, i, n):
    rule = _d_image if kind == "d" else _s_image
    table = {}
    for k in range(2, n + 1):
        for j in range(1, k):
            table[chord_code(j, k)] = [(chord_code(a, b), 1) for a, b in rule(i, j, k)]
    return table


def apply_d(i, x):
    n = x.strands
    if not 0 <= i <= n + 1:
        raise ValueError(f"d_{i} is undefined on {n} strands")
    return substitute_letters(x, _table("d", i, n), n + 1)


def apply_s(i, x):
    n = x.strands
    if not 1 <= i <= n:
        raise ValueError(f"s_{i} is undefined on {n} strands")
    return substitute_letters(x, _table("s", i, n), n - 1)


def apply_d_tilde(i, x):
    """Shifted face map on A^pb_{n+1}; the last one inserts an empty strand
    between strands n and n+1."""
    n = x.strands - 1
    if n < 0 or not 0 <= i <= n + 1:
        raise ValueError(f"d~_{i} is undefined on {x.strands} strands")
    if i <= n:
        return apply_d(i, x)
    images = list(range(1, n + 1)) + [n + 2, n + 1]
    return permute(apply_d(n + 2, x), Permutation(tuple(images)))


def apply_s_tilde(i, x):
    return apply_s(i, x)


def differential_d(x):
    n = x.strands
    out = ChordSeries.zero(n + 1, x.max_degree)
    for i in range(n + 2):
        term = apply_d(i, x)
        out = out - term if i % 2 else out + term
    return out


def differential_d_tilde(x):
    n = x.strands - 1
    out = ChordSeries.zero(n + 2, x.max_degree)
    for i in range(n + 2):
        term = apply_d_tilde(i, x)
        out = out - term if i % 2 else out + term
    return out
