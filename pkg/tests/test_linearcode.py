from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from indelcodes.channel import UNIT_COST, adversarial_pattern, apply_pattern
from indelcodes.editdist import levenshtein
from indelcodes.galois import make_field
from indelcodes.halflinear import HalfLinearCode, encode_hl
from indelcodes.innercode import make_inner_code
from indelcodes.linearcode import (
    LinearIndelCode,
    Segmentation,
    choose_ell,
    decode_lin,
    encode_lin,
    flat,
    has_even_zero_runs,
    pad,
    segment,
    trace_lin,
    unflat,
    unpad,
    window_pairs,
)
from indelcodes.syncseq import SyncSequence, gen_self_matching

from oracles import nearest_levenshtein

F7 = make_field(7)
TOY_HL = HalfLinearCode(make_inner_code(F7, 6, 2), SyncSequence.unverified((1, 2, 3, 1, 2, 3), 0.5))


@pytest.fixture(scope="module")
def mid():
    f = make_field(2, 8)
    base = HalfLinearCode(make_inner_code(f, 64, 24), gen_self_matching(f, 64, 0.5, seed=2))
    return LinearIndelCode(base, 4)


def test_flat_example():
    assert flat([(0, 2), (1, 2), (0, 1), (2, 2)]) == [0, 2, 1, 2, 0, 1, 2, 2]
    assert flat([]) == []


def test_pad_follows_definition():
    assert pad([0, 2, 1, 2, 0, 1, 2, 2], 3) == [0, 2, 1, 2, 0, 1, 0, 0, 2, 2]
    assert pad([1, 2, 3, 4], 2) == [1, 2, 3, 4, 0, 0]
    assert pad([1, 2, 3], 2) == [1, 2, 3]


def test_segment_example():
    seg = segment([1, 1, 1, 0, 2, 1, 3, 0, 0, 0, 1])
    assert seg.windows == ((1, 1, 1), (2, 1, 3), (1,))
    assert seg.delimiter_lengths == (0, 1, 3, 0)


def test_segment_edges():
    assert segment([0, 0, 0]) == Segmentation((), (3,))
    assert segment([4, 5]).windows == ((4, 5),)
    assert segment([]) == Segmentation((), (0,))


def test_choose_ell():
    assert choose_ell(Fraction(1, 64)) == 3
    assert choose_ell(0.01) == 4
    for bad in (Fraction(1, 16), 0, 0.5):
        with pytest.raises(ValueError):
            choose_ell(bad)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10**6), max_value=Fraction(1, 16)).filter(lambda d: d < Fraction(1, 16)))
def test_choose_ell_interval(delta):
    ell = choose_ell(delta)
    # 1/(2 sqrt d) <= ell + 1 < 1/(2 sqrt d) + 1, squared to stay exact
    assert 4 * (ell + 1) ** 2 * delta >= 1
    assert 4 * ell**2 * delta < 1


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=40), st.integers(1, 6))
def test_pad_length_and_inverse(v, ell):
    out = pad(v, ell)
    assert len(out) == len(v) + 2 * (len(v) // (2 * ell))
    assert unpad(out, ell) == v


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=40))
def test_segment_reinterleaves(y):
    seg = segment(y)
    assert seg.reinterleave() == y
    assert all(w and 0 not in w for w in seg.windows)
    assert len(seg.delimiter_lengths) == len(seg.windows) + 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=12))
def test_flat_round_trip(pairs):
    assert unflat(flat(pairs)) == pairs


def test_ell_must_divide_n():
    with pytest.raises(ValueError):
        LinearIndelCode(TOY_HL, 4)
    with pytest.raises(ValueError):
        LinearIndelCode(TOY_HL, 0)


@pytest.mark.parametrize("ell", [1, 2, 3, 6])
def test_length_and_rate(ell):
    code = LinearIndelCode(TOY_HL, ell)
    assert code.length == 2 * 6 * (ell + 1) // ell
    assert len(encode_lin(code, [3, 4])) == code.length
    assert code.rate == Fraction(ell, ell + 1) * TOY_HL.rate
    assert encode_lin(code, [0, 0]) == [0] * code.length


def test_linearity_and_even_runs(mid):
    rng = random.Random(5)
    f = mid.base.field
    for _ in range(50):
        u = [rng.randrange(256) for _ in range(mid.base.k)]
        v = [rng.randrange(256) for _ in range(mid.base.k)]
        a = rng.randrange(256)
        mix = [f.add(f.mul(a, x), y) for x, y in zip(u, v)]
        want = [f.add(f.mul(a, x), y) for x, y in zip(encode_lin(mid, u), encode_lin(mid, v))]
        assert encode_lin(mid, mix) == want
        assert has_even_zero_runs(want)


def test_realignment_drops_only_zero_pairs(mid):
    rng = random.Random(8)
    for _ in range(20):
        msg = [rng.randrange(256) for _ in range(mid.base.k)]
        pairs = encode_hl(mid.base, msg)
        pairs[rng.randrange(len(pairs))] = (0, 0)  # not a codeword, but exercises the split
        assert window_pairs(pad(flat(pairs), mid.ell), mid.ell) == [p for p in pairs if p != (0, 0)]


def test_uncorrupted(mid):
    rng = random.Random(9)
    for _ in range(10):
        msg = [rng.randrange(256) for _ in range(mid.base.k)]
        assert decode_lin(mid, encode_lin(mid, msg)) == msg


@pytest.mark.parametrize("ell", [1, 2])
def test_toy_single_deletion_in_window(ell):
    code = LinearIndelCode(TOY_HL, ell)
    book = {m: encode_lin(code, list(m)) for m in itertools.product(range(7), repeat=2)}
    y = book[(1, 1)]
    for pos, sym in enumerate(y):
        if sym == 0:
            continue
        received = y[:pos] + y[pos + 1 :]
        dist, best = nearest_levenshtein(book, received)
        assert best == [(1, 1)] and dist == 1
        assert decode_lin(code, received) == [1, 1]


def test_zero_codeword_with_insertions(mid):
    rng = random.Random(4)
    for _ in range(30):
        y = [0] * mid.length
        for _ in range(rng.randint(0, 6)):
            y.insert(rng.randrange(len(y) + 1), rng.randrange(256))
        assert decode_lin(mid, y) == [0] * mid.base.k


@pytest.mark.parametrize("strategy", sorted(UNIT_COST))
def test_budget_accounting_per_unit(mid, strategy):
    rng = random.Random(strategy)
    for trial in range(20):
        msg = [rng.randrange(1, 256) for _ in range(mid.base.k)]
        y = encode_lin(mid, msg)
        honest = window_pairs(y, mid.ell)
        p = adversarial_pattern(y, mid, strategy, UNIT_COST[strategy], trial)
        damaged, _ = trace_lin(mid, apply_pattern(y, p))
        damage = levenshtein(damaged, honest)
        limit = mid.ell if strategy == "window-parity" else 2 * mid.ell
        assert damage <= limit
