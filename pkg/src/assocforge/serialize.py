"""Plain-text file format for associators and GRT elements.

::

    assoc v1
    strands 3
    max_degree 4
    parity even
    term 0 1/1 -
    term 2 1/24 13.23

Terms are sorted by degree and then by the flat index key of the monomial.
"""

from dataclasses import dataclass
from fractions import Fraction

from .chords import ChordSeries, format_word, is_normal_word, parse_word, parity, word_strands

HEADERS = {"assoc": "assoc v1", "grt": "grt v1"}


class FormatError(ValueError):
    pass


@dataclass
class SeriesFile:
    kind: str
    series: ChordSeries
    even: bool


def format_series(x, kind="assoc", even=None):
    if kind not in HEADERS:
        raise ValueError(f"unknown file kind {kind!r}")
    if even is None:
        even = parity(x) == x
    elif even and parity(x) != x:
        raise ValueError("series flagged even is not parity-fixed")
    lines = [
        HEADERS[kind],
        f"strands {x.strands}",
        f"max_degree {x.max_degree}",
        f"parity {'even' if even else 'none'}",
    ]
    for w, c in x.sorted_terms():
        lines.append(f"term {len(w)} {c.numerator}/{c.denominator} {format_word(w)}")
    return "\n".join(lines) + "\n"


def _field(line, name, lineno):
    parts = line.split()
    if len(parts) != 2 or parts[0] != name:
        raise FormatError(f"line {lineno}: expected '{name} <value>', got {line!r}")
    return parts[1]


def parse_series(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 4:
        raise FormatError("file is truncated: missing header lines")
    kinds = {v: k for k, v in HEADERS.items()}
    if lines[0] not in kinds:
        raise FormatError(f"line 1: unknown header {lines[0]!r}")
    kind = kinds[lines[0]]
    try:
        strands = int(_field(lines[1], "strands", 2))
        max_degree = int(_field(lines[2], "max_degree", 3))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    par = _field(lines[3], "parity", 4)
    if par not in ("even", "none"):
        raise FormatError(f"line 4: parity must be 'even' or 'none', got {par!r}")
    terms = {}
    for lineno, line in enumerate(lines[4:], 5):
        parts = line.split()
        if len(parts) != 4 or parts[0] != "term":
            raise FormatError(f"line {lineno}: expected 'term <deg> <num>/<den> <monomial>'")
        try:
            deg = int(parts[1])
            coeff = Fraction(parts[2])
            word = parse_word(parts[3])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if deg != len(word):
            raise FormatError(f"line {lineno}: degree {deg} does not match monomial")
        if deg > max_degree:
            raise FormatError(f"line {lineno}: degree {deg} exceeds max_degree {max_degree}")
        if not is_normal_word(word):
            raise FormatError(f"line {lineno}: monomial {parts[3]} is not in normal form")
        if word_strands(word) > strands:
            raise FormatError(f"line {lineno}: monomial {parts[3]} needs more strands")
        if word in terms:
            raise FormatError(f"line {lineno}: duplicate monomial {parts[3]}")
        terms[word] = coeff
    series = ChordSeries(strands, max_degree, terms)
    even = par == "even"
    if even and parity(series) != series:
        raise FormatError("file says parity even but has odd-degree terms")
    return SeriesFile(kind, series, even)


def write_series(path, x, kind="assoc", even=None):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_series(x, kind, even))


def read_series(path):
    with open(path, encoding="ascii") as fh:
        return parse_series(fh.read())
