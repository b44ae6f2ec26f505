import pytest
from hypothesis import given, settings, strategies as st

from artinsplit.fiber import (
    DIAGONAL,
    PROPER,
    TRIVIAL,
    conjugate_intersections,
    fiber_product,
    fiber_product_dot,
    intersection,
    loop_at_anchor,
)
from artinsplit.graph import GraphError, canonical_form
from artinsplit.subgroup import basis, contains, from_words
from artinsplit.words import Word, parse_word, words_up_to

X, Y = Word.gen(1), Word.gen(2)


def words(max_len):
    return st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=max_len).map(
        lambda ls: Word(tuple(ls))).filter(bool)


def test_rose_times_rose_is_one_diagonal_rose():
    r = from_words([X, Y], 2)
    comps = fiber_product(r, r)
    assert len(comps) == 1 and comps[0].kind == DIAGONAL and comps[0].rank == 2


def test_example_244_square():
    h = from_words([X**2, Y**2, X.inverse() * Y], 2)
    comps = fiber_product(h, h)
    assert len(comps) == 2
    assert sorted(c.kind for c in comps) == [DIAGONAL, PROPER]
    assert [c.rank for c in comps] == [3, 3]
    report = conjugate_intersections(h)
    assert len(report.entries) == 1 and report.entries[0].rank == 3
    assert report.entries[0].encoding == canonical_form(h.core, based=False)


def test_cyclic_ambient_group():
    h = from_words([X**2], 1)
    report = conjugate_intersections(h)
    assert report.validated
    assert [e.basis for e in report.entries] == [(X**2,)]


def test_ambient_mismatch():
    with pytest.raises(GraphError):
        fiber_product(from_words([X], 1), from_words([X], 2))


def test_trivial_components():
    h = from_words([X * Y], 2)
    k = from_words([Y * X], 2)
    kinds = [c.kind for c in fiber_product(h, k)]
    assert TRIVIAL in kinds
    assert all(c.subgroup is None for c in fiber_product(h, k) if c.kind == TRIVIAL)


@settings(max_examples=40, deadline=None)
@given(st.lists(words(4), min_size=1, max_size=3))
def test_basepoint_component_is_a_copy(gens):
    h = from_words(gens, 2)
    diag = [c for c in fiber_product(h, h) if c.anchor == (h.core.basepoint,) * 2]
    assert len(diag) == 1 and diag[0].kind == DIAGONAL
    assert canonical_form(diag[0].subgroup.core, based=True) == canonical_form(h.core, based=True)


@settings(max_examples=40, deadline=None)
@given(st.lists(words(4), min_size=1, max_size=2), st.lists(words(4), min_size=1, max_size=2))
def test_symmetry(a, b):
    h1, h2 = from_words(a, 2), from_words(b, 2)

    def forms(cs):
        return sorted(c.conjugacy_form() for c in cs if c.rank > 0)

    assert forms(fiber_product(h1, h2)) == forms(fiber_product(h2, h1))


@settings(max_examples=30, deadline=None)
@given(st.lists(words(4), min_size=1, max_size=2), st.lists(words(4), min_size=1, max_size=2))
def test_components_compute_conjugate_intersections(a, b):
    from artinsplit.graph import path_word

    h1, h2 = from_words(a, 2), from_words(b, 2)
    for c in fiber_product(h1, h2):
        if c.rank == 0:
            continue
        g1 = path_word(h1.core, h1.core.basepoint, c.anchor[0])
        g2 = path_word(h2.core, h2.core.basepoint, c.anchor[1])
        for w in basis(c.subgroup):
            assert loop_at_anchor(c, w)
            assert contains(h1, g1 * w * g1.inverse())
            assert contains(h2, g2 * w * g2.inverse())


def test_intersection_of_known_subgroups():
    # <x^2, y> ∩ <x^3, y> = <x^6, y, x^2 y x^-2, x^4 y x^-4, ...> has finite rank; spot-check members
    h = intersection(from_words([X**2, Y], 2), from_words([X**3, Y], 2))
    assert contains(h, X**6) and contains(h, Y) and not contains(h, X**2)


def test_intersection_matches_pairwise_membership():
    h1 = from_words([parse_word("x.y"), parse_word("y^2")], 2)
    h2 = from_words([parse_word("y.x"), parse_word("y^2")], 2)
    both = intersection(h1, h2)
    for w in words_up_to(2, 6):
        assert contains(both, w) == (contains(h1, w) and contains(h2, w))


def test_report_format_and_dot():
    h = from_words([X**2, Y**2, X.inverse() * Y], 2)
    text = conjugate_intersections(h).to_text()
    assert text.splitlines()[1].startswith("isect rank=3 mult=1 basis=")
    dot = fiber_product_dot(h, h, names=("x", "y"))
    # 2 x-edges times 2 x-edges plus the same for y
    assert dot.count("->") == 8


def test_one_odd_edge_group_meets_its_x_conjugate_in_rank_13():
    # C at (M, N) = (5, 4): C ∩ x^-1 C x is far larger than a rank <= 3 subgroup
    from artinsplit.splitting import ArtinParams, build_edge_space
    from artinsplit.subgroup import conjugate, from_graph

    c = from_graph(build_edge_space(ArtinParams(5, 4)).folded)
    both = intersection(c, conjugate(c, X))
    assert both.rank == 13
    for w in basis(both):
        assert contains(c, w) and contains(c, X * w * X.inverse())
    for w in (Y**2, X**5):
        assert contains(both, w)
