from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from assocforge.chords import ChordSeries, normal_basis
from assocforge.serialize import (
    FormatError,
    format_series,
    parse_series,
    read_series,
    write_series,
)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=30)


@st.composite
def series3(draw):
    M = draw(st.integers(0, 4))
    words = [w for m in range(M + 1) for w in normal_basis(3, m)]
    chosen = draw(st.lists(st.sampled_from(words), max_size=8, unique=True))
    return ChordSeries(3, M, {w: draw(coeffs) for w in chosen})


@given(series3())
def test_round_trip(x):
    f = parse_series(format_series(x, even=False))
    assert f.series == x and f.kind == "assoc" and not f.even
    assert format_series(f.series, even=False) == format_series(x, even=False)


def test_exact_bytes_degree_two():
    x = ChordSeries.parse(3, 2, "1 + 1/24*13.23 - 1/24*23.13")
    assert format_series(x, even=True) == (
        "assoc v1\nstrands 3\nmax_degree 2\nparity even\n"
        "term 0 1/1 -\nterm 2 1/24 13.23\nterm 2 -1/24 23.13\n"
    )


def test_grt_header(tmp_path):
    x = ChordSeries.one(3, 3)
    path = tmp_path / "g.grt"
    write_series(path, x, kind="grt")
    f = read_series(path)
    assert f.kind == "grt" and f.series == x and f.even


def test_terms_sorted_by_flat_key():
    x = ChordSeries.parse(3, 2, "23.23 + 12.13 + 13.13 + 12.23")
    lines = [ln.split()[3] for ln in format_series(x).splitlines()[4:]]
    assert lines == ["12.13", "12.23", "13.13", "23.23"]


def test_even_flag_checked():
    with pytest.raises(ValueError):
        format_series(ChordSeries.parse(3, 1, "1 + 12"), even=True)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "assoc v2\nstrands 3\nmax_degree 1\nparity none\n",
        "assoc v1\nstrands x\nmax_degree 1\nparity none\n",
        "assoc v1\nstrands 3\nmax_degree 1\nparity odd\n",
        "assoc v1\nstrands 3\nmax_degree 2\nparity none\nterm 2 1/2 23.12\n",
        "assoc v1\nstrands 3\nmax_degree 2\nparity none\nterm 1 1/2 12.13\n",
        "assoc v1\nstrands 3\nmax_degree 1\nparity none\nterm 2 1/2 12.13\n",
        "assoc v1\nstrands 3\nmax_degree 1\nparity none\nterm 1 1/2 14\n",
        "assoc v1\nstrands 3\nmax_degree 1\nparity none\nterm 1 1/0 12\n",
        "assoc v1\nstrands 3\nmax_degree 1\nparity none\nterm 1 1 12\nterm 1 2 12\n",
        "assoc v1\nstrands 3\nmax_degree 1\nparity even\nterm 1 1 12\n",
    ],
)
def test_malformed_files_rejected(text):
    with pytest.raises(FormatError):
        parse_series(text)


def test_integer_coefficients_accepted():
    f = parse_series("assoc v1\nstrands 3\nmax_degree 1\nparity none\nterm 0 1 -\nterm 1 -2 12\n")
    assert f.series.coefficient((0,)) == Fraction(-2)
