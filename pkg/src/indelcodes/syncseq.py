"""Self-matching synchronization sequences over the nonzero field elements.

A sequence ``s`` of length ``n`` is tau-self-matching when for every
``1 <= i < j < k <= n + 1``::

    D_L(s[i, j), s[j, k)) > (1 - tau) * (k - i)

Triples are reported 1-based, matching that definition.  For a fixed
``(i, j)`` one bit-parallel LCS pass over ``s[j:]`` yields the distance for
every ``k`` at once, which keeps exhaustive checks at ``O(n^3)`` word
operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .galois import FieldSpec

EXHAUSTIVE_LIMIT = 128
SHORT_WINDOW = 16
DEFAULT_SAMPLES = 100_000
DEFAULT_RESTARTS = 1000


class SyncGenerationError(RuntimeError):
    """Random search did not find a self-matching sequence."""

    def __init__(self, message: str, tightest: Optional[tuple[int, int, int]] = None):
        super().__init__(message)
        self.tightest = tightest


def as_fraction(x: Union[float, str, Fraction, int]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class VerificationMode:
    """``exhaustive`` or ``sampled`` (with sample count and seed).

    Sampled checks every triple with ``k - i <= 16`` plus ``count`` seeded
    uniform triples.
    """

    kind: str = "exhaustive"
    count: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("exhaustive", "sampled", "unverified"):
            raise ValueError(f"unknown verification mode {self.kind!r}")

    @classmethod
    def sampled(cls, count: int = DEFAULT_SAMPLES, seed: int = 0) -> "VerificationMode":
        return cls("sampled", count, seed)

    @classmethod
    def parse(cls, token: str) -> "VerificationMode":
        parts = token.split(":")
        if parts[0] == "sampled":
            count = int(parts[1]) if len(parts) > 1 else DEFAULT_SAMPLES
            seed = int(parts[2]) if len(parts) > 2 else 0
            return cls("sampled", count, seed)
        return cls(parts[0])

    def __str__(self) -> str:
        if self.kind == "sampled":
            return f"sampled:{self.count}:{self.seed}"
        return self.kind


EXHAUSTIVE = VerificationMode("exhaustive")


def default_mode(n: int, seed: int = 0) -> VerificationMode:
    return EXHAUSTIVE if n <= EXHAUSTIVE_LIMIT else VerificationMode.sampled(seed=seed)


@dataclass(frozen=True)
class SyncSequence:
    """Nonzero symbols with the self-matching parameter they were checked at.

    ``mode.kind == "unverified"`` marks hand-built sequences (toy examples);
    no self-matching guarantee is claimed for those.
    """

    symbols: tuple[int, ...]
    tau: Fraction
    mode: VerificationMode = EXHAUSTIVE

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        object.__setattr__(self, "tau", as_fraction(self.tau))
        if any(s == 0 for s in self.symbols):
            raise ValueError("sync symbols must be nonzero")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    @classmethod
    def unverified(cls, symbols: Sequence[int], tau) -> "SyncSequence":
        return cls(tuple(symbols), as_fraction(tau), VerificationMode("unverified"))


# --- checking ---------------------------------------------------------------

def _violates(dist: int, span: int, num: int, den: int) -> bool:
    # not (dist > (1 - num/den) * span)
    return dist * den <= (den - num) * span


def _scan_from(s: Sequence[int], i0: int, j0: int, kmax: int, num: int, den: int,
               ks: Optional[set[int]] = None) -> Optional[int]:
    """First ``k`` (0-based exclusive end, ``j0 < k <= kmax``) violating for
    windows ``s[i0:j0]``, ``s[j0:k]``; restricted to ``ks`` when given."""
    a = j0 - i0
    masks: dict[int, int] = {}
    for t, x in enumerate(s[i0:j0]):
        masks[x] = masks.get(x, 0) | (1 << t)
    full = (1 << a) - 1
    v = full
    for k in range(j0 + 1, kmax + 1):
        u = v & masks.get(s[k - 1], 0)
        v = ((v + u) | (v - u)) & full
        if ks is not None and k not in ks:
            continue
        lcs = a - bin(v).count("1")
        span = k - i0
        if _violates(span - 2 * lcs, span, num, den):
            return k
    return None


def _exhaustive(s: Sequence[int], num: int, den: int, max_span: Optional[int] = None):
    n = len(s)
    for i in range(n):
        for j in range(i + 1, n):
            kmax = n if max_span is None else min(n, i + max_span)
            if kmax <= j:
                break
            k = _scan_from(s, i, j, kmax, num, den)
            if k is not None:
                return (i + 1, j + 1, k + 1)
    return None


def _sampled(s: Sequence[int], num: int, den: int, count: int, seed: int):
    n = len(s)
    found = _exhaustive(s, num, den, max_span=SHORT_WINDOW)
    if found is not None or n < 3:
        return found
    rng = random.Random(seed)
    groups: dict[tuple[int, int], set[int]] = {}
    for _ in range(count):
        i, j, k = sorted(rng.sample(range(n + 1), 3))
        groups.setdefault((i, j), set()).add(k)
    for (i, j) in sorted(groups):
        ks = groups[(i, j)]
        k = _scan_from(s, i, j, max(ks), num, den, ks)
        if k is not None:
            return (i + 1, j + 1, k + 1)
    return None


def verify_self_matching(s: Sequence[int], tau, mode: VerificationMode = EXHAUSTIVE):
    """Return ``None`` if ``s`` passes, else the first violating triple.

    The triple ``(i, j, k)`` is 1-based with ``k`` exclusive.  Exhaustive
    mode scans triples lexicographically and requires ``len(s) <= 128``;
    sampled mode scans all short windows first, then the sampled triples.
    """
    tau = as_fraction(tau)
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    num, den = tau.numerator, tau.denominator
    s = list(s)
    if mode.kind == "exhaustive":
        if len(s) > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive verification needs n <= {EXHAUSTIVE_LIMIT}")
        return _exhaustive(s, num, den)
    if mode.kind == "sampled":
        return _sampled(s, num, den, mode.count, mode.seed)
    raise ValueError("cannot verify in 'unverified' mode")


def self_matching_parameter(s: Sequence[int]) -> Fraction:
    """Largest ``1 - D_L / (k - i)`` over all triples (exhaustive).

    ``s`` is tau-self-matching exactly for ``tau`` strictly above this value.
    """
    s = list(s)
    n = len(s)
    best_num, best_den = 0, 1
    for i in range(n):
        for j in range(i + 1, n):
            a = j - i
            masks: dict[int, int] = {}
            for t, x in enumerate(s[i:j]):
                masks[x] = masks.get(x, 0) | (1 << t)
            full = (1 << a) - 1
            v = full
            for k in range(j + 1, n + 1):
                u = v & masks.get(s[k - 1], 0)
                v = ((v + u) | (v - u)) & full
                span = k - i
                slack = 2 * (a - bin(v).count("1"))  # span - D_L
                if slack * best_den > best_num * span:
                    best_num, best_den = slack, span
    return Fraction(best_num, best_den)


# --- generation -------------------------------------------------------------

def gen_self_matching(f: FieldSpec, n: int, tau, seed: int = 0,
                      mode: Optional[VerificationMode] = None,
                      max_restarts: int = DEFAULT_RESTARTS) -> SyncSequence:
    """Rejection-sample a tau-self-matching sequence over ``F_q*``.

    Each attempt draws ``n`` uniform nonzero symbols and keeps it only if
    :func:`verify_self_matching` accepts.  ``mode`` defaults to exhaustive
    for ``n <= 128`` and sampled otherwise.  Raises
    :class:`SyncGenerationError` after ``max_restarts`` failed attempts; the
    error names the lexicographically last first-violation seen, i.e. the
    attempt that got furthest through the scan.
    """
    tau = as_fraction(tau)
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    if n < 1:
        raise ValueError("length must be positive")
    if mode is None:
        mode = default_mode(n, seed)
    num, den = tau.numerator, tau.denominator
    rng = random.Random(seed)
    tightest: Optional[tuple[int, int, int]] = None
    for _ in range(max_restarts):
        s = [rng.randrange(1, f.q) for _ in range(n)]
        # cheap screen on short windows before the full check
        bad = _exhaustive(s, num, den, max_span=SHORT_WINDOW)
        if bad is None:
            bad = verify_self_matching(s, tau, mode)
        if bad is None:
            return SyncSequence(tuple(s), tau, mode)
        if tightest is None or bad > tightest:
            tightest = bad
    raise SyncGenerationError(
        f"no {tau}-self-matching sequence of length {n} over F_{f.q}* after "
        f"{max_restarts} attempts; tightest violated triple (i, j, k) = {tightest}",
        tightest,
    )


def format_sync(seq: SyncSequence) -> str:
    return f"{len(seq)} {seq.tau} {seq.mode}\n" + " ".join(map(str, seq.symbols)) + "\n"


def parse_sync(text: str) -> SyncSequence:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty sync file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError("sync header must be 'n tau mode'")
    n, tau, mode = int(head[0]), Fraction(head[1]), VerificationMode.parse(head[2])
    symbols = [int(t) for ln in lines[1:] for t in ln.split()]
    if len(symbols) != n:
        raise ValueError(f"sync header says n={n} but {len(symbols)} symbols follow")
    return SyncSequence(tuple(symbols), tau, mode)

