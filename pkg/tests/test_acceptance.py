"""Acceptance gate: ten criteria, one PASS/FAIL line each in the terminal summary.

Reference configuration: F_256, RS(240, 120) with d = 121, sync sequence with
tau = 1/2 from seed 1, verified in sampled mode.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from indelcodes.bounds import (
    brute_indel_capability,
    check_witness,
    find_confusable_pair,
    half_singleton_bound,
    make_subfield_code,
    symbol_codewords,
)
from indelcodes.cli import main
from indelcodes.experiment import (
    ExperimentConfig,
    build_half_linear,
    run_experiment,
    summaries_to_csv,
)
from indelcodes.galois import make_field
from indelcodes.halflinear import HalfLinearCode
from indelcodes.innercode import decode_inner, encode_inner, make_inner_code
from indelcodes.linearcode import LinearIndelCode, encode_lin, has_even_zero_runs
from indelcodes.matcher import hs_bound
from indelcodes.syncseq import VerificationMode

from test_bounds import random_code, single_deletion_confusable

REFERENCE = {"p": "2", "m": "8", "n": "240", "k": "120", "tau": "1/2", "sync_seed": "1",
             "sync_mode": "sampled:100000:1", "trials": "100", "seed": "2024"}


def reference(**extra: str) -> ExperimentConfig:
    cfg = ExperimentConfig.from_mapping({**REFERENCE, **extra})
    cfg.validate()
    return cfg


@pytest.fixture(scope="module")
def ref_code() -> HalfLinearCode:
    cfg = reference()
    code = build_half_linear(cfg, Fraction(1, 2))
    assert code.inner.d == 121
    assert code.sync.mode == VerificationMode("sampled", 100000, 1)
    return code


@pytest.fixture(scope="module")
def half_linear_runs(ref_code):
    cfg = reference(ell="0", delta="0.1,0.05")
    t0 = time.perf_counter()
    summaries = run_experiment(cfg)
    return cfg, summaries, time.perf_counter() - t0


@pytest.mark.criterion(1)
def test_inner_code_radius_exhaustive(record_property):
    f = make_field(7)
    code = make_inner_code(f, 6, 2)
    assert code.d == 5
    t0 = time.perf_counter()
    checked = 0
    for msg in itertools.product(range(7), repeat=2):
        c = encode_inner(code, list(msg))
        for s in range(3):
            for e in range(5 - 2 * s):
                for err in itertools.combinations(range(6), s):
                    rest = [i for i in range(6) if i not in err]
                    for era in itertools.combinations(rest, e):
                        for offsets in itertools.product(range(1, 7), repeat=s):
                            w: list = list(c)
                            for i, off in zip(err, offsets):
                                w[i] = f.add(w[i], off)
                            for i in era:
                                w[i] = None
                            assert decode_inner(code, w) == list(msg)
                            checked += 1
    elapsed = time.perf_counter() - t0
    record_property("note", f"{checked} corruptions in {elapsed:.1f}s")
    assert checked == 49 * 1173
    assert elapsed < 60


@pytest.mark.criterion(2)
def test_half_linear_round_trip(half_linear_runs, record_property):
    cfg, summaries, elapsed = half_linear_runs
    by_delta = {s.cell.delta: s for s in summaries}
    hi, lo = by_delta[Fraction(1, 10)], by_delta[Fraction(1, 20)]
    assert all(r.deletions + r.insertions == 24 for r in hi.results)
    assert all(r.deletions + r.insertions == 12 for r in lo.results)
    record_property("note", f"D+I=24: {hi.successes}/100, D+I=12: {lo.successes}/100, {elapsed:.0f}s")
    assert hi.successes >= 99
    assert lo.successes == 100
    assert elapsed < 300


@pytest.mark.criterion(3)
def test_matcher_inequality(half_linear_runs, ref_code, record_property):
    _, summaries, _ = half_linear_runs
    results = [r for s in summaries for r in s.results]
    assert len(results) == 200
    slack = min(r.hs_slack for r in results)
    worst = max(r.erasures + 2 * r.substitutions for r in results)
    record_property("note", f"min slack {slack:.1f}, max e+2t {worst}, bound at 24 indels "
                            f"{hs_bound(24, ref_code.sync.tau, ref_code.n):.1f}")
    assert slack >= 0


@pytest.mark.criterion(4)
def test_linear_round_trip(ref_code, record_property):
    cfg = reference(ell="4", delta="1/100",
                    strategy="random,window-parity,window-desync,delimiter-delete")
    assert LinearIndelCode(ref_code, 4).length == 600
    t0 = time.perf_counter()
    summaries = run_experiment(cfg)
    elapsed = time.perf_counter() - t0
    record_property("note", ", ".join(f"{s.cell.strategy} {s.successes}/100" for s in summaries)
                    + f", {elapsed:.0f}s")
    for s in summaries:
        assert all(r.deletions + r.insertions <= 6 for r in s.results)
        assert s.successes == 100
    assert elapsed < 300


@pytest.mark.criterion(5)
def test_zero_codeword_insertions(record_property):
    cfg = reference(ell="4", message="zero", D="0", I="6")
    (s,) = run_experiment(cfg)
    record_property("note", f"{s.successes}/100 with 6 insertions")
    assert all(r.insertions == 6 and r.zero_fraction == 1.0 for r in s.results)
    assert s.successes == 100


@pytest.mark.criterion(6)
def test_exact_identities(ref_code):
    assert ref_code.rate == Fraction(120, 240) / 2
    for ell in (d for d in range(1, 241) if 240 % d == 0):
        code = LinearIndelCode(ref_code, ell)
        assert code.length == Fraction(2 * 240 * (ell + 1), ell)
        assert code.rate == Fraction(ell, ell + 1) * ref_code.rate
    for ell in (1, 4, 8):
        code = LinearIndelCode(ref_code, ell)
        assert len(encode_lin(code, [1] * 120)) == code.length


@pytest.mark.criterion(7)
def test_even_zero_runs(ref_code, record_property):
    rng = random.Random(7)
    codes = {ell: LinearIndelCode(ref_code, ell) for ell in (1, 2, 4, 8, 12)}
    violations = 0
    for i in range(1000):
        code = codes[(1, 2, 4, 8, 12)[i % 5]]
        # mix dense and sparse messages so long zero runs show up
        density = rng.choice([1.0, 0.5, 0.05])
        msg = [rng.randrange(1, 256) if rng.random() < density else 0 for _ in range(120)]
        violations += not has_even_zero_runs(encode_lin(code, msg))
    record_property("note", f"{violations} violations in 1000 codewords")
    assert violations == 0


@pytest.mark.criterion(8)
def test_half_singleton_consistency(record_property):
    rep = make_subfield_code(2, 1, 1, 2, [[1, 1]])
    assert rep.rate == Fraction(1, 2) == half_singleton_bound(2, Fraction(1, 2))
    assert brute_indel_capability(symbol_codewords(rep), 1)
    even = make_subfield_code(2, 1, 1, 4, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]])
    assert even.rate == Fraction(3, 4)
    w = find_confusable_pair(even)
    assert w is not None and check_witness(even, w)
    assert not brute_indel_capability(symbol_codewords(even), 1)

    rng = random.Random(42)
    disagreements = 0
    for _ in range(40):
        code = random_code(rng)
        words = symbol_codewords(code)
        w = find_confusable_pair(code)
        brute = brute_indel_capability(words, 1)
        disagreements += (w is None) != brute
        disagreements += brute == single_deletion_confusable(words)
        if w is not None:
            disagreements += not check_witness(code, w)
    record_property("note", f"40 random codes, {disagreements} disagreements")
    assert disagreements == 0


@pytest.mark.criterion(9)
@pytest.mark.parametrize("zeros", [96, 115])
def test_decoder_improvement(ref_code, zeros, record_property):
    cfg = reference(ell="0", delta="0.05", message="sparse", zeros=str(zeros),
                    variant="improved,baseline")
    summaries = {s.cell.variant: s for s in run_experiment(cfg)}
    imp, base = summaries["improved"], summaries["baseline"]
    assert min(r.zero_fraction for r in imp.results) >= 0.4
    record_property("note", f"{zeros} zeros: improved {imp.successes}/100, baseline {base.successes}/100")
    assert imp.successes == 100


@pytest.mark.criterion(10)
def test_determinism(tmp_path):
    args = ["experiment", "--set", "ell=4", "--set", "trials=10",
            "--set", "strategy=random,window-desync", "--set", "seed=3"]
    outs = []
    for i, jobs in enumerate((1, 1, 2)):
        out = tmp_path / f"run{i}.csv"
        assert main(args + ["--jobs", str(jobs), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    cfg = reference(ell="0", trials="5", delta="0.1")
    assert summaries_to_csv(cfg, run_experiment(cfg)) == summaries_to_csv(cfg, run_experiment(cfg))
