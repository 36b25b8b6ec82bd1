from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from indelcodes.channel import (
    STRATEGIES,
    Edit,
    IndelPattern,
    adversarial_pattern,
    apply_pattern,
    format_pattern,
    parse_pattern,
    random_pattern,
)
from indelcodes.editdist import levenshtein
from indelcodes.galois import make_field
from indelcodes.halflinear import HalfLinearCode
from indelcodes.innercode import make_inner_code
from indelcodes.linearcode import LinearIndelCode, encode_lin, segment, window_pairs
from indelcodes.syncseq import gen_self_matching


@pytest.fixture(scope="module")
def lin():
    f = make_field(2, 8)
    base = HalfLinearCode(make_inner_code(f, 32, 12), gen_self_matching(f, 32, 0.5, seed=6))
    return LinearIndelCode(base, 4)


@pytest.fixture(scope="module")
def word(lin):
    rng = random.Random(0)
    return encode_lin(lin, [rng.randrange(1, 256) for _ in range(lin.base.k)])


def test_empty_pattern():
    assert apply_pattern([1, 2, 3], IndelPattern()) == [1, 2, 3]


def test_delete_first():
    assert apply_pattern([5, 6, 7], IndelPattern((Edit("D", 1),))) == [6, 7]


def test_insert_positions():
    assert apply_pattern([5, 6], IndelPattern((Edit("I", 3, 9),))) == [5, 6, 9]
    assert apply_pattern([5, 6], IndelPattern((Edit("I", 1, 9),))) == [9, 5, 6]


def test_out_of_range():
    with pytest.raises(IndexError):
        apply_pattern([1], IndelPattern((Edit("D", 1), Edit("D", 1))))
    with pytest.raises(IndexError):
        apply_pattern([1], IndelPattern((Edit("I", 3, 0),)))
    with pytest.raises(ValueError):
        Edit("D", 0)


def test_random_pattern_examples():
    assert random_pattern(10, 0, 0, 1).edits == ()
    assert apply_pattern([1, 2, 3], random_pattern(3, 3, 0, 4)) == []
    with pytest.raises(ValueError):
        random_pattern(2, 3, 0, 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=20), st.data())
def test_random_pattern_properties(w, data):
    D = data.draw(st.integers(0, len(w)))
    I = data.draw(st.integers(0, 6))
    seed = data.draw(st.integers(0, 2**32))
    p = random_pattern(len(w), D, I, seed, q=5)
    assert p.cost == D + I == p.deletions + p.insertions
    out = apply_pattern(w, p)
    assert len(out) == len(w) - D + I
    assert levenshtein(w, out) <= p.cost
    assert random_pattern(len(w), D, I, seed, q=5) == p


def test_pair_insertions():
    p = random_pattern(5, 0, 4, 3, q=7, pairs=True)
    assert all(isinstance(e.value, tuple) and len(e.value) == 2 for e in p.edits)


def test_pattern_text_round_trip():
    p = IndelPattern((Edit("D", 4), Edit("I", 1, 7), Edit("I", 2, (3, 5))))
    assert format_pattern(p) == "D 4\nI 1 7\nI 2 3 5\n"
    assert parse_pattern(format_pattern(p)) == p
    with pytest.raises(ValueError):
        parse_pattern("X 1\n")


def test_parity_budget_one_hits_first_window(word, lin):
    p = adversarial_pattern(word, lin, "window-parity", 1, 0)
    assert p.cost == 1 and p.deletions == 1
    start, end = segment(word).spans()[0]
    assert start < p.edits[0].position <= end
    after = segment(apply_pattern(word, p))
    assert len(after.windows[0]) % 2 == 1


def test_delimiter_delete_merges(word, lin):
    before = segment(word)
    p = adversarial_pattern(word, lin, "delimiter-delete", 2, 0)
    assert p.cost == 2
    after = segment(apply_pattern(word, p))
    assert len(after.windows) == len(before.windows) - 1
    merged = after.windows[0]
    assert merged == before.windows[0] + before.windows[1]
    assert 2 * lin.ell < len(merged) <= 4 * lin.ell


def test_desync_shifts_pairs(word, lin):
    p = adversarial_pattern(word, lin, "window-desync", 2, 0)
    assert (p.deletions, p.insertions) == (1, 1)
    out = apply_pattern(word, p)
    first = segment(out).windows[0]
    truth = segment(word).windows[0]
    assert len(first) == len(truth) and len(first) % 2 == 0
    assert first[:-1] == truth[1:]
    got = window_pairs(out, lin.ell)[: len(truth) // 2]
    want = window_pairs(word, lin.ell)[: len(truth) // 2]
    assert all(g != w for g, w in zip(got, want))


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("budget", [2, 3, 6, 9])
def test_strategies_respect_budget(word, lin, strategy, budget):
    p = adversarial_pattern(word, lin, strategy, budget, 11)
    assert p.cost <= budget
    assert p.cost >= 2 * (budget // 2) or strategy == "window-parity"
    assert adversarial_pattern(word, lin, strategy, budget, 11) == p
    apply_pattern(word, p)


def test_strategy_errors(word, lin):
    with pytest.raises(ValueError):
        adversarial_pattern(word, lin, "nonsense", 4, 0)
    with pytest.raises(ValueError):
        adversarial_pattern(word, lin, "window-desync", 1, 0)
    with pytest.raises(ValueError):
        adversarial_pattern(word, lin, "window-parity", 0, 0)
