import random
from fractions import Fraction

import pytest

from assocforge.chords import ChordSeries, Permutation, commutator, exp, is_group_like
from assocforge.pacd import (
    PaBWord,
    PaCDMorphism,
    PaPMorphism,
    Parenthesization,
    Token,
    apply_d_morphism,
    apply_s_morphism,
    check_braid_relations,
    compile_braid_generator,
    compose,
    evaluate_Z,
    generator,
    inverse_word,
    parse_braid_word,
    pure_braid_word,
)

P = Parenthesization.parse


def s(n, M, text):
    return ChordSeries.parse(n, M, text)


# -- trees and skeletons ---------------------------------------------------


def test_parenthesization_parse_and_ops():
    t = P("(x(xx))")
    assert str(t) == "(x(xx))" and t.n == 3
    assert t == Parenthesization.right_normed(3)
    assert str(t.double(1)) == "((xx)(xx))"
    assert str(t.extend_left()) == "(x(x(xx)))"
    assert str(t.extend_right()) == "((x(xx))x)"
    assert str(t.remove(2)) == "(xx)"
    assert str(Parenthesization.left_normed(3)) == "((xx)x)"
    for bad in ("(xx", "(x)", "xx", "(xy)"):
        with pytest.raises(ValueError):
            P(bad)


def test_pap_composition():
    f = PaPMorphism(P("((xx)x)"), P("(x(xx))"), Permutation.parse("213"))
    g = PaPMorphism(P("(x(xx))"), P("(x(xx))"), Permutation.parse("132"))
    h = f.then(g)
    assert h.perm(1) == g.perm(f.perm(1))
    with pytest.raises(ValueError):
        g.then(f)


def test_skeleton_face_maps():
    x = PaPMorphism(P("(xx)"), P("(xx)"), Permutation.parse("21"))
    d1 = x.apply_d(1)
    assert str(d1.domain) == "((xx)x)" and str(d1.range) == "(x(xx))"
    assert d1.perm == Permutation.parse("231")
    assert x.apply_d(0).perm == Permutation.parse("132")
    assert x.apply_s(1).n == 1


# -- PaCD morphisms --------------------------------------------------------


def test_compose_with_identity_first_factor():
    M = 3
    id3 = PaPMorphism.identity(P("(x(xx))"))
    p2 = PaPMorphism(P("(x(xx))"), P("(x(xx))"), Permutation.parse("231"))
    f = PaCDMorphism(id3, s(3, M, "12"))
    g = PaCDMorphism(p2, s(3, M, "23.13"))
    h = compose(f, g)
    assert h.series == s(3, M, "12") * s(3, M, "23.13")
    assert h.skeleton == p2
    assert compose(PaCDMorphism.identity(P("(x(xx))"), M), g) == g


def random_morphism(rng, tree, M):
    images = list(range(1, tree.n + 1))
    rng.shuffle(images)
    letters = ["12", "13", "23"]
    text = " + ".join(
        f"{rng.randint(1, 3)}*" + ".".join(rng.choice(letters) for _ in range(rng.randint(1, 2)))
        for _ in range(3)
    )
    return PaCDMorphism(PaPMorphism(tree, tree, Permutation(tuple(images))), s(3, M, text))


def test_compose_is_associative():
    rng = random.Random(4)
    t = P("(x(xx))")
    for _ in range(20):
        f, g, h = (random_morphism(rng, t, 4) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_generators():
    M = 4
    assert generator("H", M).series == s(2, M, "12")
    r = generator("R", M)
    rr = compose(r, r)
    assert rr.series == exp(s(2, M, "12"))
    assert rr.skeleton == PaPMorphism.identity(P("(xx)"))
    assert compose(r, generator("R^-1", M)) == PaCDMorphism.identity(P("(xx)"), M)
    with pytest.raises(ValueError):
        generator("Q", M)


def test_t13_composite():
    M = 3
    d0x = apply_d_morphism(0, generator("X", M))
    parts = [d0x, generator("a^-1", M), apply_d_morphism(3, generator("H", M)), generator("a", M), d0x]
    f = parts[0]
    for g in parts[1:]:
        f = compose(f, g)
    assert f.series == s(3, M, "13")
    assert f.skeleton == PaPMorphism.identity(P("(x(xx))"))


def test_face_and_degeneracy_on_morphisms():
    M = 2
    h = generator("H", M)
    assert apply_d_morphism(0, h).series == s(3, M, "23")
    assert apply_s_morphism(1, h).series.is_zero()
    assert apply_d_morphism(2, h).series == s(3, M, "12 + 13")
    with pytest.raises(ValueError):
        apply_d_morphism(4, h)


# -- braid words -----------------------------------------------------------


def test_compile_examples():
    assert str(compile_braid_generator(1, 2)) == "s"
    assert str(compile_braid_generator(1, 3)) == "a^-1 o d3 s o a"
    assert str(compile_braid_generator(2, 4)) == "d0 a^-1 o d0 d3 s o d0 a"
    with pytest.raises(ValueError):
        compile_braid_generator(3, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_compiled_skeleton_is_transposition(n):
    base = Parenthesization.right_normed(n)
    for i in range(1, n):
        skel = compile_braid_generator(i, n).skeleton()
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        assert skel == PaPMorphism(base, base, Permutation(tuple(images)))


def test_words_must_compose():
    with pytest.raises(ValueError):
        PaBWord((Token("a"), Token("a")))
    with pytest.raises(ValueError):
        parse_braid_word("t1", 3)


def test_z_of_sigma_squared(assoc4):
    phi = assoc4.phi
    z = evaluate_Z(parse_braid_word("s1 s1", 2), phi)
    assert z.series == exp(s(2, 4, "12"))


def test_z_of_empty_word(assoc4):
    z = evaluate_Z(PaBWord(()), assoc4.phi, 3)
    assert z == PaCDMorphism.identity(Parenthesization.right_normed(3), 4)


def test_z_refuses_non_associators():
    with pytest.raises(ValueError):
        evaluate_Z(parse_braid_word("s1", 3), ChordSeries.one(3, 2))


@pytest.mark.parametrize("n", [3, 4])
def test_pure_braid_leading_terms(n, assoc4):
    one = ChordSeries.one(n, 4)
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            z = evaluate_Z(pure_braid_word(i, j, n), assoc4.phi)
            assert z.skeleton.perm == Permutation.identity(n)
            diff = z.series - one
            assert diff.lowest_degree() == 1
            assert diff.degree_part(1) == ChordSeries.generator(i, j, n, 4)


def test_pure_braid_commutator(assoc4):
    n = 3
    a, b = pure_braid_word(1, 2, n), pure_braid_word(2, 3, n)
    word = a + b + inverse_word(a) + inverse_word(b)
    diff = evaluate_Z(word, assoc4.phi).series - ChordSeries.one(n, 4)
    assert diff.lowest_degree() == 2
    assert diff.degree_part(2) == commutator(s(3, 4, "12"), s(3, 4, "23"))


def test_functoriality_and_group_likeness(assoc4):
    rng = random.Random(9)
    toks = ["s1", "s2", "s3", "s1^-1", "s2^-1", "s3^-1"]
    for _ in range(6):
        w1 = " ".join(rng.choice(toks) for _ in range(rng.randint(1, 3)))
        w2 = " ".join(rng.choice(toks) for _ in range(rng.randint(1, 3)))
        z12 = evaluate_Z(parse_braid_word(f"{w1} {w2}", 4), assoc4.phi)
        z1 = evaluate_Z(parse_braid_word(w1, 4), assoc4.phi)
        z2 = evaluate_Z(parse_braid_word(w2, 4), assoc4.phi)
        assert z12 == compose(z1, z2)
        assert is_group_like(z12.series)
        assert z12.skeleton == parse_braid_word(f"{w1} {w2}", 4).skeleton()


def test_inverse_words_cancel(assoc4):
    w = parse_braid_word("s1 s2^-1 s1", 3)
    z = evaluate_Z(w + inverse_word(w), assoc4.phi)
    assert z == PaCDMorphism.identity(Parenthesization.right_normed(3), 4)


@pytest.mark.parametrize("n", [3, 4])
def test_braid_relations_hold(n, assoc4):
    checks = check_braid_relations(n, assoc4.phi)
    assert checks and all(c.ok for c in checks)


def test_braid_relations_fail_without_associator():
    checks = check_braid_relations(3, ChordSeries.one(3, 2))
    assert not checks[0].ok and checks[0].first_failing_degree == 2


def test_far_commutation_holds_for_any_phi():
    checks = check_braid_relations(4, ChordSeries.one(3, 3))
    far = [c for c in checks if c.relation == "s1 s3 = s3 s1"]
    assert far and far[0].ok
