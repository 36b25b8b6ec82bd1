from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from indelcodes.editdist import lcs_align, lcs_length, lcs_prefix_lengths, levenshtein

from oracles import bfs_indel_distance, brute_lcs_length, dp_lcs_length

seqs = st.lists(st.integers(0, 3), max_size=8)


def test_identical():
    assert lcs_align((1, 2, 3), (1, 2, 3)).pairs == ((0, 0), (1, 1), (2, 2))


def test_empty_operand():
    assert lcs_align((1, 2, 3), ()).pairs == ()
    assert lcs_align((), ()).pairs == ()


def test_small_example():
    a, b = (1, 3, 2), (1, 2, 3)
    assert brute_lcs_length(a, b) == 2
    aln = lcs_align(a, b)
    assert len(aln) == 2
    # first-argument-smallest tie-break
    assert aln.pairs == ((0, 0), (1, 2))
    assert bfs_indel_distance(a, b) == 2
    assert levenshtein(a, b) == 2


def test_levenshtein_trivial():
    assert levenshtein((4, 5, 6), (4, 5, 6)) == 0
    assert levenshtein((), (1, 2, 3)) == 3


@settings(max_examples=300, deadline=None)
@given(seqs, seqs)
def test_alignment_is_valid_and_maximal(a, b):
    aln = lcs_align(a, b)
    for (i, j), (i2, j2) in zip(aln.pairs, aln.pairs[1:]):
        assert i < i2 and j < j2
    for i, j in aln.pairs:
        assert a[i] == b[j]
    assert len(aln) == brute_lcs_length(a, b)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=5), st.lists(st.integers(0, 2), max_size=5))
def test_levenshtein_matches_edit_search(a, b):
    assert levenshtein(a, b) == bfs_indel_distance(a, b)


@settings(max_examples=300, deadline=None)
@given(seqs, seqs, seqs)
def test_metric_properties(a, b, c):
    assert levenshtein(a, b) == levenshtein(b, a)
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)
    assert levenshtein(a, b) >= abs(len(a) - len(b))
    assert levenshtein(a, b) == len(a) + len(b) - 2 * len(lcs_align(a, b))


def test_bit_parallel_against_dp():
    rng = random.Random(11)
    for _ in range(500):
        a = [rng.randrange(5) for _ in range(rng.randrange(0, 70))]
        b = [rng.randrange(5) for _ in range(rng.randrange(0, 70))]
        want = dp_lcs_length(a, b)
        assert lcs_length(a, b) == want
        assert len(lcs_align(a, b)) == want
        prefix = lcs_prefix_lengths(a, b)
        assert prefix[-1] == want
        assert prefix[len(b) // 2] == dp_lcs_length(a, b[: len(b) // 2])


def test_arbitrary_hashable_symbols():
    a = [(0, 1), (2, 3), "x"]
    b = ["x", (0, 1), (2, 3)]
    assert lcs_length(a, b) == 2
    assert levenshtein(a, b) == 2
