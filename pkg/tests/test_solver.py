from fractions import Fraction

import pytest

from assocforge.chords import ChordSeries, commutator, parity
from assocforge.equations import is_associator
from assocforge.serialize import format_series
from assocforge.solver import (
    InconsistentSystem,
    SolverConfig,
    build_associator,
    extend_one_degree,
    symmetrize_even,
)

# sign fixed by the degree-2 oracle below, then frozen
PHI2_LINES = ["term 2 1/24 13.23", "term 2 -1/24 23.13"]


def bracket(M):
    return commutator(ChordSeries.parse(3, M, "12"), ChordSeries.parse(3, M, "23"))


def test_degree_one_is_trivial():
    assert build_associator(SolverConfig(1)).phi == ChordSeries.one(3, 1)
    step = extend_one_degree(ChordSeries.one(3, 0), 1)
    assert step.solution.is_zero()


def test_degree_two_oracle():
    step = extend_one_degree(ChordSeries.one(3, 1), 2)
    assert step.solution == bracket(2).scale(Fraction(-1, 24))
    assert step.kernel_dimension == 0
    assert step.unknown_dimension == 7


def test_degree_two_frozen_lines():
    text = format_series(build_associator(SolverConfig(2, even=True)).phi, even=True)
    assert [ln for ln in text.splitlines() if ln.startswith("term 2")] == PHI2_LINES


def test_step_invariants(assoc5):
    from assocforge.chords import is_primitive, log
    from assocforge.cosimplicial import apply_s

    # the corrections themselves carry products of lower terms; log(Phi) is Lie
    assert is_primitive(log(assoc5.phi))
    for step in assoc5.steps:
        assert all(apply_s(i, step.solution).is_zero() for i in (1, 2, 3))
        assert parity(step.solution) == step.solution


def test_even_build_has_no_odd_parts(assoc5):
    assert all(d % 2 == 0 for d in assoc5.phi.degrees())
    assert is_associator(assoc5.phi)


def test_kernel_dimensions(assoc5):
    assert assoc5.kernel_dimensions == {2: 0, 3: 1, 4: 0, 5: 1}


@pytest.mark.parametrize("even", [False, True])
def test_affine_lift(even):
    phi = ChordSeries.one(3, 1)
    for m in range(2, 5):
        step = extend_one_degree(phi, m)
        base = phi.with_max_degree(m) + step.solution.with_max_degree(m)
        assert is_associator(base)
        for k in step.kernel:
            assert is_associator(base + k.with_max_degree(m))
        phi = base


@pytest.mark.parametrize("M", [2, 3, 6])
def test_build_closure(M):
    assert is_associator(build_associator(SolverConfig(M, even=True)).phi)


def test_symmetrize_even():
    phi = build_associator(SolverConfig(4, even=True)).phi
    assert symmetrize_even(phi) == phi
    step = extend_one_degree(phi.with_max_degree(2), 3)
    odd = phi.up_to(2).with_max_degree(3) + step.kernel[0].with_max_degree(3)
    assert is_associator(odd)
    assert parity(odd) != odd
    sym = symmetrize_even(odd)
    assert parity(sym) == sym
    assert sym.degree_part(3).is_zero()
    with pytest.raises(ValueError):
        symmetrize_even(ChordSeries.one(3, 2))


def test_seeded_build_extends_seed():
    seed = build_associator(SolverConfig(3, even=True)).phi
    cfg = SolverConfig(5, even=True, seed=seed, seed_degree=3)
    out = build_associator(cfg).phi
    assert out.up_to(3).with_max_degree(3) == seed
    assert is_associator(out)


def test_bad_configs():
    with pytest.raises(ValueError):
        SolverConfig(0)
    with pytest.raises(ValueError):
        SolverConfig(4, seed=ChordSeries.one(3, 2), seed_degree=2)


def test_determinism():
    a = format_series(build_associator(SolverConfig(4, even=True)).phi, even=True)
    b = format_series(build_associator(SolverConfig(4, even=True)).phi, even=True)
    assert a == b


def test_wrong_permutation_reading_is_detected(monkeypatch):
    monkeypatch.setenv("ASSOCFORGE_PERM_CONVENTION", "preimage")
    with pytest.raises(InconsistentSystem):
        build_associator(SolverConfig(4, even=True))
