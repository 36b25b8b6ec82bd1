"""Seeded decoding experiments and their CSV summary.

An experiment sweeps the cross product of ``delta``, ``ell``, ``tau``,
``variant`` and ``strategy``.  Every cell runs the same trial indices, and
trial ``i`` draws its message and channel from ``Random(f"{seed}:{i}")``,
so cells differ only in the swept parameter.  ``ell = 0`` runs the
half-linear code directly over pair symbols.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .channel import STRATEGIES, adversarial_pattern, apply_pattern, random_pattern, split_budget
from .galois import make_field
from .halflinear import VARIANTS, HalfLinearCode, encode_hl, sparse_message, trace_hl
from .innercode import encode_inner, make_inner_code
from .linearcode import LinearIndelCode, encode_lin, trace_lin
from .matcher import erasure_substitution_counts, hs_bound
from .syncseq import SyncSequence, VerificationMode, as_fraction, default_mode, gen_self_matching

CSV_COLUMNS = ("delta", "ell", "tau", "variant", "strategy", "trials", "successes",
               "mean_e", "mean_t", "mean_runtime_ms", "seed", "sync_seed")
MESSAGE_KINDS = ("random", "zero", "sparse")


class ConfigError(ValueError):
    """Invalid experiment or code configuration."""


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


@dataclass(frozen=True)
class ExperimentConfig:
    p: int = 2
    m: int = 8
    n: int = 240
    k: int = 120
    tau: tuple[Fraction, ...] = (Fraction(1, 2),)
    sync_seed: int = 1
    sync_mode: str = "auto"
    ell: tuple[int, ...] = (4,)
    delta: tuple[Fraction, ...] = (Fraction(1, 100),)
    D: Optional[int] = None
    I: Optional[int] = None
    strategy: tuple[str, ...] = ("random",)
    trials: int = 100
    seed: int = 0
    variant: tuple[str, ...] = ("improved",)
    message: str = "random"
    zeros: int = 0

    _LIST_KEYS = {"tau": as_fraction, "ell": int, "delta": as_fraction,
                  "strategy": str, "variant": str}
    _INT_KEYS = ("p", "m", "n", "k", "sync_seed", "trials", "seed", "zeros", "D", "I")

    @classmethod
    def from_mapping(cls, items: dict[str, str], base: Optional["ExperimentConfig"] = None
                     ) -> "ExperimentConfig":
        cfg = base or cls()
        updates: dict = {}
        for key, raw in items.items():
            try:
                if key in cls._LIST_KEYS:
                    updates[key] = tuple(cls._LIST_KEYS[key](v) for v in _split(raw))
                elif key in cls._INT_KEYS:
                    updates[key] = None if raw.strip().lower() in ("", "none") else int(raw)
                elif key in ("sync_mode", "message"):
                    updates[key] = raw.strip()
                else:
                    raise ConfigError(f"unknown config key {key!r}")
            except (ValueError, ZeroDivisionError) as exc:
                if isinstance(exc, ConfigError):
                    raise
                raise ConfigError(f"bad value for {key}: {raw!r}") from exc
        return replace(cfg, **updates)

    def validate(self) -> None:
        try:
            f = make_field(self.p, self.m)
            make_inner_code(f, self.n, self.k)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.trials < 0:
            raise ConfigError("trials must be non-negative")
        for name in ("tau", "ell", "delta", "strategy", "variant"):
            if not getattr(self, name):
                raise ConfigError(f"{name} needs at least one value")
        for t in self.tau:
            if not 0 < t < 1:
                raise ConfigError(f"tau must lie in (0, 1), got {t}")
        for ell in self.ell:
            if ell < 0:
                raise ConfigError("ell must be >= 0 (0 selects the half-linear code)")
            if ell and self.n % ell:
                raise ConfigError(f"ell = {ell} must divide n = {self.n}")
        for d in self.delta:
            if not 0 <= d < 1:
                raise ConfigError(f"delta must lie in [0, 1), got {d}")
        if (self.D is None) != (self.I is None):
            raise ConfigError("give both D and I or neither")
        if self.D is not None and (self.D < 0 or self.I < 0):
            raise ConfigError("D and I must be non-negative")
        for s in self.strategy:
            if s != "random" and s not in STRATEGIES:
                raise ConfigError(f"unknown strategy {s!r}")
            if s != "random" and 0 in self.ell:
                raise ConfigError(f"strategy {s} attacks the linear code and needs ell > 0")
            if s != "random" and self.D is not None:
                raise ConfigError("explicit D/I only applies to the random strategy")
        for v in self.variant:
            if v not in VARIANTS:
                raise ConfigError(f"unknown decoder variant {v!r}")
        if self.message not in MESSAGE_KINDS:
            raise ConfigError(f"message must be one of {', '.join(MESSAGE_KINDS)}")
        if self.message == "sparse" and not 0 <= self.zeros < self.k:
            raise ConfigError(f"sparse messages need 0 <= zeros < k = {self.k}")
        if self.sync_mode != "auto":
            try:
                VerificationMode.parse(self.sync_mode)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc

    def resolved_mode(self) -> VerificationMode:
        if self.sync_mode == "auto":
            return default_mode(self.n, self.sync_seed)
        return VerificationMode.parse(self.sync_mode)


def parse_config_text(text: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@lru_cache(maxsize=None)
def _sync(p: int, m: int, n: int, tau: Fraction, seed: int, mode: str) -> SyncSequence:
    return gen_self_matching(make_field(p, m), n, tau, seed=seed, mode=VerificationMode.parse(mode))


def build_half_linear(cfg: ExperimentConfig, tau) -> HalfLinearCode:
    f = make_field(cfg.p, cfg.m)
    inner = make_inner_code(f, cfg.n, cfg.k)
    sync = _sync(cfg.p, cfg.m, cfg.n, as_fraction(tau), cfg.sync_seed, str(cfg.resolved_mode()))
    return HalfLinearCode(inner, sync)


@dataclass(frozen=True)
class Cell:
    delta: Fraction
    ell: int
    tau: Fraction
    variant: str
    strategy: str


@dataclass(frozen=True)
class TrialResult:
    index: int
    success: bool
    deletions: int
    insertions: int
    erasures: int
    substitutions: int
    zero_fraction: float
    hs_slack: float
    runtime_ms: float


def cells(cfg: ExperimentConfig) -> list[Cell]:
    return [Cell(*c) for c in itertools.product(cfg.delta, cfg.ell, cfg.tau, cfg.variant, cfg.strategy)]


def word_length(cfg: ExperimentConfig, ell: int) -> int:
    return cfg.n if ell == 0 else 2 * cfg.n * (ell + 1) // ell


def budget_for(cfg: ExperimentConfig, cell: Cell) -> int:
    if cfg.D is not None:
        return cfg.D + cfg.I
    return math.floor(cell.delta * word_length(cfg, cell.ell))


def _message(cfg: ExperimentConfig, code: HalfLinearCode, rng: random.Random) -> list[int]:
    if cfg.message == "zero":
        return [0] * cfg.k
    if cfg.message == "sparse":
        return sparse_message(code, cfg.zeros, rng)
    return [rng.randrange(code.field.q) for _ in range(cfg.k)]


def run_trial(cfg: ExperimentConfig, cell: Cell, code: HalfLinearCode, index: int) -> TrialResult:
    rng = random.Random(f"{cfg.seed}:{index}")
    msg = _message(cfg, code, rng)
    truth = encode_inner(code.inner, msg)
    q = code.field.q
    budget = budget_for(cfg, cell)
    if cell.ell == 0:
        word = encode_hl(code, msg)
        lin = None
    else:
        lin = LinearIndelCode(code, cell.ell)
        word = encode_lin(lin, msg)
    if cell.strategy == "random":
        if cfg.D is not None:
            D, I = cfg.D, cfg.I
        else:
            D, I = split_budget(budget, rng, len(word))
        pattern = random_pattern(len(word), D, I, rng.getrandbits(64), q=q, pairs=cell.ell == 0)
    else:
        pattern = adversarial_pattern(word, lin, cell.strategy, budget, rng.getrandbits(64))
    received = apply_pattern(word, pattern)
    t0 = time.perf_counter()
    if lin is None:
        tr = trace_hl(code, received, cell.variant)
    else:
        _, tr = trace_lin(lin, received, cell.variant)
    runtime = (time.perf_counter() - t0) * 1000.0
    e, t = erasure_substitution_counts(tr.word, truth)
    slack = hs_bound(pattern.cost, code.sync.tau, code.n) - (e + 2 * t)
    return TrialResult(
        index=index,
        success=tr.message == msg,
        deletions=pattern.deletions,
        insertions=pattern.insertions,
        erasures=e,
        substitutions=t,
        zero_fraction=sum(1 for c in truth if c == 0) / len(truth),
        hs_slack=slack,
        runtime_ms=runtime,
    )


def _run_packed(args) -> TrialResult:
    return run_trial(*args)


def run_cell(cfg: ExperimentConfig, cell: Cell, jobs: int = 1,
             code: Optional[HalfLinearCode] = None) -> list[TrialResult]:
    """All trials of one cell, ordered by trial index."""
    if code is None:
        code = build_half_linear(cfg, cell.tau)
    tasks = [(cfg, cell, code, i) for i in range(cfg.trials)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves submission order
            return list(pool.map(_run_packed, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [run_trial(*t) for t in tasks]


@dataclass
class CellSummary:
    cell: Cell
    results: list[TrialResult] = field(default_factory=list)

    @property
    def successes(self) -> int:
        return sum(r.success for r in self.results)

    def mean(self, attr: str) -> float:
        if not self.results:
            return 0.0
        return sum(getattr(r, attr) for r in self.results) / len(self.results)


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> list[CellSummary]:
    cfg.validate()
    return [CellSummary(c, run_cell(cfg, c, jobs)) for c in cells(cfg)]


def _num(x) -> str:
    return f"{float(x):g}"


def summaries_to_csv(cfg: ExperimentConfig, summaries: Sequence[CellSummary], timing: bool = False) -> str:
    """CSV text; ``mean_runtime_ms`` stays empty unless ``timing`` so reruns are byte-identical."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in summaries:
        c = s.cell
        if cfg.D is None:
            delta = c.delta
        else:
            # explicit D/I: report the realized fraction of the word length
            delta = Fraction(cfg.D + cfg.I, word_length(cfg, c.ell))
        w.writerow([
            _num(delta),
            c.ell,
            _num(c.tau),
            c.variant,
            c.strategy,
            len(s.results),
            s.successes,
            f"{s.mean('erasures'):.4f}",
            f"{s.mean('substitutions'):.4f}",
            f"{s.mean('runtime_ms'):.3f}" if timing else "",
            cfg.seed,
            cfg.sync_seed,
        ])
    return buf.getvalue()
