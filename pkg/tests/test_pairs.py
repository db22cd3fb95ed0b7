import random

import pytest
from hypothesis import given, settings, strategies as st

import bruteforce
from dehncert.nielsen import nielsen_reduce, reduce_combination, signed_family
from dehncert.pairs import (
    ConstantsReport,
    RelatingPair,
    StemEntry,
    compute_constants,
    enumerate_relating_pairs,
    enumerate_stems_twigs,
    find_matchless_identical_segments,
)
from dehncert.words import Alphabet, free_reduce, inverse

ABC = Alphabet(["a", "b", "c"])


def W(*texts):
    return [ABC.parse(t) for t in texts]


# the family with both one- and two-letter junction cancellations,
# reused across tests; see test_combination_with_cancellation
DEEP = ("abab", "BcaaC", "cAbcc")


def test_table_rank_one():
    table = enumerate_stems_twigs(W("ab"))
    ab, BA = ABC.parse("ab"), ABC.parse("BA")
    assert table.stems == frozenset(
        {StemEntry(ab, 0, 0, ab), StemEntry(BA, 0, 0, BA)}
    )
    assert table.twigs == frozenset({()})
    assert table.max_stem_length == 2
    assert table.max_twig_length == 0


def test_table_distinct_letters():
    table = enumerate_stems_twigs(W("a", "b"))
    assert {e.stem for e in table.stems} == set(signed_family(W("a", "b")))
    assert all(e.left_cut == e.right_cut == 0 for e in table.stems)
    assert table.twigs == frozenset({()})


def test_table_records_cancelled_blocks():
    table = enumerate_stems_twigs(W(*DEEP))
    assert ABC.parse("b") in table.twigs
    assert ABC.parse("aC") in table.twigs
    assert () in table.twigs
    for e in table.stems:
        left, stem, right = e.partition
        assert inverse(left) + stem + right == e.element


def test_table_boundary_twig_when_every_junction_cancels():
    # both self adjacencies of aBA cancel one letter, so the empty
    # twig arises only from boundary factors; it must still be listed
    table = enumerate_stems_twigs(W("aBA"))
    assert () in table.twigs
    assert ABC.parse("A") in table.twigs
    assert table.max_twig_length == 1


def test_table_rejects_unreduced():
    with pytest.raises(ValueError):
        enumerate_stems_twigs(W("ab", "b"))


def test_pairs_rank_one():
    pairs, r = enumerate_relating_pairs(W("ab"))
    assert r == 2
    ab = ABC.parse("ab")
    entry = StemEntry(ab, 0, 0, ab)
    short = RelatingPair(entry, entry, ABC.parse("a"))
    full = RelatingPair(entry, entry, ab)
    assert short in pairs and not short.trivial
    assert full in pairs and full.trivial
    nontrivial_segments = {p.segment for p in pairs if not p.trivial}
    assert nontrivial_segments == {ABC.parse("a"), ABC.parse("B")}


def test_pairs_single_letter():
    pairs, r = enumerate_relating_pairs(W("a"))
    assert r == 0
    assert len(pairs) == 2 and all(p.trivial for p in pairs)


def test_pairs_distinct_letters():
    _, r = enumerate_relating_pairs(W("a", "b"))
    assert r == 0


def test_constants_rank_one():
    assert compute_constants(W("ab")) == ConstantsReport(2, 0, 2, 10, 34, 159, 151)


def test_constants_distinct_letters():
    assert compute_constants(W("a", "b")) == ConstantsReport(1, 0, 0, 3, 11, 43, 39)


def test_constants_empty_family():
    assert compute_constants([]) == ConstantsReport(0, 0, 0, 0, 0, 1, 1)


@pytest.mark.parametrize("texts", [("ab",), ("a", "b")])
def test_table_matches_bruteforce_exactly(texts):
    fam = W(*texts)
    table = enumerate_stems_twigs(fam)
    stems, twigs = bruteforce.observed_stems_twigs(fam, max_factors=3)
    assert {(e.element, e.left_cut, e.right_cut, e.stem) for e in table.stems} == stems
    assert set(table.twigs) == twigs
    _, r = enumerate_relating_pairs(fam)
    _, r_obs = bruteforce.observed_relating_pairs(stems)
    assert r == r_obs
    rep = compute_constants(fam)
    assert bruteforce.constants_from_table(stems, twigs, r_obs) == (
        rep.S,
        rep.T,
        rep.R,
        rep.C,
        rep.D,
        rep.B,
    )


def test_observed_table_is_subset_for_deep_family():
    fam = W(*DEEP)
    table = enumerate_stems_twigs(fam)
    stems, twigs = bruteforce.observed_stems_twigs(fam, max_factors=3)
    table_stems = {(e.element, e.left_cut, e.right_cut, e.stem) for e in table.stems}
    assert stems <= table_stems
    assert twigs <= set(table.twigs)
    # three factors realize a doubly cut middle: both junctions of the
    # drawn combination appear
    v2 = ABC.parse("BcaaC")
    assert (v2, 1, 2, ABC.parse("ca")) in stems


def test_completeness_for_random_combinations():
    bases = [W("ab"), W("a", "b"), W("aba", "aca"), W(*DEEP), W("aBA")]
    rng = random.Random(20260822)
    for basis in bases:
        table = enumerate_stems_twigs(basis)
        table_stems = {
            (e.element, e.left_cut, e.right_cut, e.stem) for e in table.stems
        }
        fam = signed_family(basis)
        for _ in range(100):
            combo = []
            for _ in range(rng.randint(1, 10)):
                options = [v for v in fam if not combo or v != inverse(combo[-1])]
                combo.append(rng.choice(options))
            _, stems, twigs = reduce_combination(basis, combo)
            for i, stem in enumerate(stems):
                lc, rc = len(twigs[i]), len(twigs[i + 1])
                assert (combo[i], lc, rc, stem) in table_stems
            assert set(twigs) <= set(table.twigs)


def test_matchless_none_for_rank_one():
    assert find_matchless_identical_segments(W("ab"), 6) is None


def test_matchless_zero_bound():
    assert find_matchless_identical_segments(W("ab"), 0) is None


def test_matchless_none_for_square_at_small_bound():
    # aa is not malnormal, but its threshold C = 10 exceeds any product
    # of six letters, so the search comes back empty at this bound
    assert find_matchless_identical_segments(W("aa"), 6) is None


def test_matchless_fires_for_square_at_larger_bound():
    # with twelve letters the shifted self-overlap of (aa)^6 is an
    # eleven letter shared block whose stems all land off-grid
    fam = W("aa")
    report = find_matchless_identical_segments(fam, 12)
    assert report is not None
    assert len(report.segment) > compute_constants(fam).C
    p1, _, _ = reduce_combination(fam, report.combo1)
    p2, _, _ = reduce_combination(fam, report.combo2)
    n = len(report.segment)
    assert p1[report.start1 : report.start1 + n] == report.segment
    assert p2[report.start2 : report.start2 + n] == report.segment
    assert report.start1 != report.start2


def families(alphabet=Alphabet(["a", "b"]), max_words=2, max_len=3):
    letters = [l for i in alphabet.letters() for l in (i, -i)]
    word = st.lists(st.sampled_from(letters), max_size=max_len).map(
        lambda ls: free_reduce(ls)
    )
    return st.lists(word, min_size=1, max_size=max_words)


@settings(max_examples=30, deadline=None)
@given(families())
def test_matchless_reports_are_coherent(ws):
    basis, _ = nielsen_reduce(ws)
    report = find_matchless_identical_segments(basis, 4)
    if report is None:
        return
    threshold = compute_constants(basis).C
    assert len(report.segment) > threshold
    p1, _, _ = reduce_combination(basis, report.combo1)
    p2, _, _ = reduce_combination(basis, report.combo2)
    n = len(report.segment)
    assert p1[report.start1 : report.start1 + n] == report.segment
    assert p2[report.start2 : report.start2 + n] == report.segment
