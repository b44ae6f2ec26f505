import pytest

from oracles import count_homomorphisms, symmetric_group

from artinsplit.graph import canonical_form, check_cover, is_immersion, rank
from artinsplit.presentation import INF, abelianization, artin_dihedral, artin_standard
from artinsplit.splitting import (
    BOTH_EVEN,
    BOTH_ODD,
    SplittingData,
    ArtinParams,
    beta_conjugator,
    build_edge_space,
    split,
    split_components,
    split_dihedral,
    split_infty,
    verify_grid,
    verify_splitting,
)
from artinsplit.subgroup import contains, from_words, index
from artinsplit.words import Word

X, Y = Word.gen(1), Word.gen(2)
S3 = symmetric_group(3)
S4 = symmetric_group(4)


def test_label_validation():
    with pytest.raises(ValueError):
        ArtinParams(3, 4)
    with pytest.raises(ValueError):
        ArtinParams(4, 2, override=True)
    assert ArtinParams(3, 4, override=True).parity == "M_odd"
    with pytest.raises(ValueError):
        ArtinParams(5, 5, family="nonsense")


def test_244_is_hnn_over_index_two_subgroup():
    s = split(ArtinParams(4, 4))
    assert s.variant == "hnn"
    assert s.ranks() == (2, 3)
    assert index(s.edge_group()) == 2


def test_268_basis_and_conjugator():
    s = split(ArtinParams(6, 8))
    assert s.edge_subgroup_words == (X**3, Y**4, X.inverse() * Y)
    assert s.beta_images == (X**3, Y**4, Y * X.inverse())
    g = beta_conjugator(s)
    assert g is not None
    # every β image lies in the conjugate g^-1 B g
    b = s.edge_group()
    for w in s.beta_images:
        assert contains(b, g * w * g.inverse())


@pytest.mark.parametrize("M,N", [(4, 4), (4, 6), (6, 6), (8, 6)])
def test_edge_space_of_even_labels_has_two_components(M, N):
    s = split(ArtinParams(M, N))
    es = s.edge_space
    assert not es.connected
    minus, plus = split_components(es)
    assert canonical_form(minus.core, based=False) == canonical_form(plus.core, based=False)


def test_components_differ_as_based_graphs():
    # B and β(B) are conjugate but not equal
    minus, plus = split_components(split(ArtinParams(4, 6)).edge_space)
    assert canonical_form(minus.core, based=True) != canonical_form(plus.core, based=True)


def test_finite_index_only_at_244():
    for M, N in [(4, 4), (4, 6), (6, 4), (6, 6), (8, 8)]:
        idx = index(split(ArtinParams(M, N)).edge_group())
        assert idx == (2 if (M, N) == (4, 4) else float("inf"))


@pytest.mark.parametrize("M,N", [(5, 4), (4, 5), (5, 5), (7, 6), (9, 9)])
def test_odd_edge_space_is_connected_double_cover(M, N):
    es = build_edge_space(ArtinParams(M, N))
    assert es.connected
    cover = check_cover(es.to_xb)
    assert cover.is_cover and cover.degree == 2
    assert rank(es.x_b) == 3 and rank(es.x_c) == 5
    assert rank(es.folded) == 5 and is_immersion(es.folded)


def test_54_ranks():
    assert split(ArtinParams(5, 4)).ranks() == (2, 3, 5)


def test_folded_edge_space_54_shape():
    es = build_edge_space(ArtinParams(5, 4))
    assert es.folded.vertex_count == 5 and es.folded.edge_count == 9


def test_beta_is_an_automorphism_of_the_edge_group():
    es = build_edge_space(ArtinParams(5, 4))
    loops = es.loop_basis()
    images = [es.image_in_a(es.beta_path(c)) for c in loops]
    assert from_words(images, 2).rank == len(loops) == 5
    # the deck map is an involution, so β∘β is conjugation by the x^5 loop through b+
    for c in loops:
        back = es.image_in_a(es.beta_path(es.beta_path(c)))
        assert back == X**5 * es.image_in_a(c) * X**-5


def test_grid_all_checks_pass():
    rows = verify_grid(4, 9)
    assert len(rows) == 36
    for params, s, report in rows:
        assert report.passed, (params, report.lines())
        assert s.variant == ("hnn" if params.parity == BOTH_EVEN else "amalgam")


def test_corrupted_beta_fails_verification():
    s = split(ArtinParams(4, 6))
    bad = SplittingData("hnn", s.params, s.a_names, s.edge_subgroup_words,
                        (X**3,) + s.beta_images[1:], s.stable_letter)
    report = verify_splitting(bad)
    assert not report.passed
    assert report.status("abelianization") == "fail"


@pytest.mark.parametrize("M,N", [(4, 4), (5, 4), (4, 5), (5, 5), (6, 4)])
def test_splitting_presentation_matches_standard_in_s3(M, N):
    p = split(ArtinParams(M, N)).presentation()
    std = artin_standard(2, M, N)
    assert count_homomorphisms(p.rank, p.relators, S3) == count_homomorphisms(3, std.relators, S3)


@pytest.mark.parametrize("M,N", [(4, 4), (5, 4), (5, 5)])
def test_splitting_presentation_matches_standard_in_s4(M, N):
    p = split(ArtinParams(M, N)).presentation()
    std = artin_standard(2, M, N)
    assert count_homomorphisms(p.rank, p.relators, S4) == count_homomorphisms(3, std.relators, S4)


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6])
def test_dihedral_splittings(M):
    s = split_dihedral(M)
    assert abelianization(s.presentation()) == abelianization(artin_dihedral(M))
    assert verify_splitting(s).passed
    p = s.presentation()
    assert count_homomorphisms(p.rank, p.relators, S3) == count_homomorphisms(2, artin_dihedral(M).relators, S3)


def test_dihedral_two_is_z_squared():
    assert abelianization(split_dihedral(2).presentation()).free_rank == 2


def test_infinite_label_even_beta_is_identity():
    s = split_infty(4, 6)
    assert s.variant == "hnn" and s.beta_images == s.edge_subgroup_words
    assert s.ranks() == (2, 2)


@pytest.mark.parametrize("M,N", [(4, 6), (5, 4), (5, 5), (3, 3)])
def test_infinite_label_splittings(M, N):
    s = split_infty(M, N)
    assert verify_splitting(s).passed
    assert abelianization(s.presentation()) == abelianization(artin_standard(M, N, INF))
    if s.variant == "amalgam":
        assert s.ranks() == (2, 2, 3)


def test_label_three_breaks_the_template():
    # x^1 edges fold onto each other, so the fold loses rank; only --override-range gets here
    params = ArtinParams(3, 4, override=True)
    es = build_edge_space(params)
    assert rank(es.folded) < 5
    assert verify_splitting(split(params)).status("pi1_injective") == "fail"


def test_both_odd_parity_label():
    assert ArtinParams(5, 7).parity == BOTH_ODD
