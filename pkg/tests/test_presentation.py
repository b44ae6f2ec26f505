import math

import pytest
from hypothesis import given, settings, strategies as st

from artinsplit.presentation import (
    INF,
    AbelianInvariants,
    Presentation,
    abelianization,
    alternating,
    artin_dihedral,
    artin_standard,
    artin_star,
    cyclically_equal,
    hnn_presentation,
    smith_normal_form,
    standard_to_star,
)
from artinsplit.words import Word, parse_word
from oracles import bareiss_det, determinantal_divisors

X, Y = Word.gen(1), Word.gen(2)


def test_standard_presentation_shapes():
    p = artin_standard(2, 4, 4)
    assert sorted(len(r) for r in p.relators) == [4, 8, 8]
    assert artin_standard(INF, INF, INF).relators == ()
    assert abelianization(artin_standard(2, 2, 2)) == AbelianInvariants(3)
    with pytest.raises(ValueError):
        artin_standard(1, 3, 3)


def test_star_presentation_relators():
    p = artin_star(4, 4)
    names = p.generator_names
    assert names == ("b", "x", "y") and len(p.relators) == 3
    expected = ["b.x^2.b^-1.x^-2", "b.y^2.b^-1.y^-2", "b.x^-1.y.b^-1.x.y^-1"]
    for r, e in zip(p.relators, expected):
        assert cyclically_equal(r, parse_word(e, names))
    odd = artin_star(5, 4)
    assert cyclically_equal(odd.relators[0], parse_word("b.x^2.b.x^-3", names))
    with pytest.raises(ValueError):
        artin_star(2, 4)
    assert len(artin_star(2, 4, override=True).relators) == 3


@pytest.mark.parametrize("M,N", [(4, 4), (5, 4), (4, 5), (5, 5), (6, 7), (9, 8)])
def test_star_relators_are_substituted_standard_relators(M, N):
    # labels M on (a,b), N on (b,c), 2 on (c,a); a -> x b^-1, c -> y b^-1 gives the star relators
    images = standard_to_star()
    subst = [r.substitute(images).cyclic_reduce() for r in artin_standard(M, N, 2).relators]
    star = artin_star(M, N).relators
    for r in star:
        assert any(cyclically_equal(r, s) for s in subst)
    assert abelianization(artin_star(M, N)) == abelianization(artin_standard(2, M, N))


def test_abelianization_values():
    assert abelianization(artin_standard(2, 4, 4)) == AbelianInvariants(3)
    assert abelianization(artin_standard(2, 5, 4)) == AbelianInvariants(2)
    assert abelianization(Presentation(("a", "b"), ())) == AbelianInvariants(2)
    assert abelianization(Presentation(("a",), (Word.gen(1, 6),))) == AbelianInvariants(0, (6,))
    assert abelianization(artin_dihedral(3)) == AbelianInvariants(1)


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]]) == ([1, 1], 2)
    assert smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert smith_normal_form([[0, 0], [0, 0]]) == ([], 0)


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(m):
    diag, r = smith_normal_form(m)
    assert diag == determinantal_divisors(m)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    if len(m) == len(m[0]) and r == len(m):
        assert math.prod(diag) == abs(bareiss_det(m))


def test_invariants_validate_chain():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (4, 6))


def test_hnn_over_trivial_group_is_free_product_with_z():
    p = hnn_presentation(("x", "y"), [], [])
    assert p.generator_names == ("x", "y", "t") and p.relators == ()
    assert abelianization(p) == AbelianInvariants(3)


def test_text_round_trip():
    p = artin_star(5, 4)
    assert Presentation.from_text(p.to_text()) == p


def test_alternating():
    a, b = Word.gen(1), Word.gen(2)
    assert alternating(a, b, 3) == Word((1, 2, 1))
