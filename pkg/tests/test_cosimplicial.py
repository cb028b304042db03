import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from assocforge.chords import ChordSeries, is_primitive, power
from assocforge.cosimplicial import (
    StrandOp,
    apply_d,
    apply_d_tilde,
    apply_s,
    differential_d,
    differential_d_tilde,
)


def s(n, M, text):
    return ChordSeries.parse(n, M, text)


def random_series(rng, n, M, terms=4):
    letters = [f"{i}{j}" for j in range(2, n + 1) for i in range(1, j)]
    parts = []
    for _ in range(terms):
        k = rng.randint(1, M)
        parts.append(f"{rng.randint(-3, 3)}*" + ".".join(rng.choice(letters) for _ in range(k)))
    return ChordSeries.parse(n, M, " + ".join(parts).replace("+ -", "- "))


@pytest.mark.parametrize(
    "i,src,expected",
    [
        (0, "12", "23"),
        (1, "12", "13 + 23"),
        (2, "12", "12 + 13"),
        (3, "12", "12"),
        (1, "23", "34"),
        (2, "13", "14"),
    ],
)
def test_face_map_cases(i, src, expected):
    n = 2 if src == "12" else 3
    assert apply_d(i, s(n, 1, src)) == s(n + 1, 1, expected)


@pytest.mark.parametrize(
    "i,src,expected",
    [(1, "12", "0"), (3, "12", "12"), (2, "13", "12"), (1, "23", "12"), (3, "13", "0")],
)
def test_degeneracy_cases(i, src, expected):
    assert apply_s(i, s(3, 1, src)) == s(2, 1, expected)


def test_shifted_last_face():
    assert apply_d_tilde(3, s(3, 1, "13")) == s(4, 1, "14")
    assert apply_d_tilde(3, s(3, 1, "12")) == s(4, 1, "12")
    assert apply_d_tilde(1, s(3, 1, "12")) == apply_d(1, s(3, 1, "12"))


def test_index_range_checked():
    with pytest.raises(ValueError):
        apply_d(4, s(2, 1, "12"))
    with pytest.raises(ValueError):
        apply_s(0, s(2, 1, "12"))
    with pytest.raises(ValueError):
        StrandOp("double", 0, 2)


def test_strand_op_callable():
    op = StrandOp.face(1, 2)
    assert op.kind == "double" and op.target_strands == 3
    assert op(s(2, 1, "12")) == s(3, 1, "13 + 23")
    assert StrandOp("remove", 1, 2).target_strands == 1


@given(st.integers(0, 10**6))
def test_face_maps_are_algebra_maps(seed):
    rng = random.Random(seed)
    n = 3
    x, y = random_series(rng, n, 4, 2), random_series(rng, n, 4, 2)
    for i in range(n + 2):
        assert apply_d(i, x * y) == apply_d(i, x) * apply_d(i, y)
    for i in range(1, n + 1):
        assert apply_s(i, x * y) == apply_s(i, x) * apply_s(i, y)


@given(st.integers(0, 10**6))
def test_cosimplicial_identities(seed):
    rng = random.Random(seed)
    n = 3
    x = random_series(rng, n, 3)
    for j in range(n + 3):
        for i in range(j):
            assert apply_d(j, apply_d(i, x)) == apply_d(i, apply_d(j - 1, x))
    # s_j d_i with strands numbered from 1 and d_0 adding a strand on the left
    for i in range(n + 2):
        for j in range(1, n + 2):
            lhs = apply_s(j, apply_d(i, x))
            if i == 0:
                rhs = x if j == 1 else apply_d(0, apply_s(j - 1, x))
            elif j in (i, i + 1):
                rhs = x
            elif j < i:
                rhs = apply_d(i - 1, apply_s(j, x))
            else:
                rhs = apply_d(i, apply_s(j - 1, x))
            assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_d_squared_vanishes(n):
    rng = random.Random(n)
    for _ in range(4):
        x = random_series(rng, n, 4) if n > 1 else ChordSeries.scalar(1, 4, 3)
        assert differential_d(differential_d(x)).is_zero()
        assert differential_d_tilde(differential_d_tilde(x)).is_zero()


def test_d_of_t12_powers():
    t = s(2, 4, "12")
    assert differential_d(ChordSeries.one(2, 4)).is_zero()
    assert differential_d(t).is_zero()
    for m in (2, 3):
        assert not differential_d(power(t, m)).is_zero()


def test_d_of_t12_squared_value():
    # definition gives the alternating sum with a minus sign on t12^2
    t = s(2, 2, "12")
    got = differential_d(t * t)
    expected = (
        s(3, 2, "23.23")
        - (s(3, 2, "13 + 23") * s(3, 2, "13 + 23"))
        + (s(3, 2, "12 + 13") * s(3, 2, "12 + 13"))
        - s(3, 2, "12.12")
    )
    assert got == expected


def test_tilde_class_is_not_primitive():
    for k in (2, 3):
        chi = differential_d_tilde(power(s(2, 4, "12"), k))
        assert not is_primitive(chi)
