"""Repeated-LCS matching of received (code, sync) pairs against the sync sequence."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional, Sequence

from .editdist import lcs_align
from .syncseq import as_fraction


@dataclass(frozen=True)
class MatchReport:
    erasures: int
    rounds: int
    matched: int
    collisions: int


def match_rounds(tau) -> int:
    """``floor(1 / sqrt(tau))``, at least 1."""
    tau = as_fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    if tau >= 1:
        return 1
    return max(1, isqrt(tau.denominator // tau.numerator))


def match_sync(s: Sequence[int], received: Sequence[tuple[int, int]], tau
               ) -> tuple[list[Optional[int]], MatchReport]:
    """Place received code symbols onto positions of ``s``.

    Each round aligns ``s`` with the sync coordinates not yet matched,
    records the matched position for each newly matched received index and
    removes those indices for good.  Position ``i`` of the output gets the
    code symbol of the unique received index placed there; positions with
    zero or several candidates become ``None`` (an erasure).
    """
    s = list(s)
    n = len(s)
    rounds = match_rounds(tau)
    pos: list[Optional[int]] = [None] * len(received)
    remaining = list(range(len(received)))
    for _ in range(rounds):
        if not remaining:
            break
        sub = [received[r][1] for r in remaining]
        used = set()
        for i, j in lcs_align(s, sub):
            pos[remaining[j]] = i
            used.add(j)
        remaining = [r for t, r in enumerate(remaining) if t not in used]
    candidates: list[list[int]] = [[] for _ in range(n)]
    for r, i in enumerate(pos):
        if i is not None:
            candidates[i].append(r)
    word: list[Optional[int]] = [None] * n
    collisions = 0
    for i, cands in enumerate(candidates):
        if len(cands) == 1:
            word[i] = received[cands[0]][0]
        elif len(cands) > 1:
            collisions += 1
    report = MatchReport(
        erasures=sum(1 for y in word if y is None),
        rounds=rounds,
        matched=sum(1 for i in pos if i is not None),
        collisions=collisions,
    )
    return word, report


def erasure_substitution_counts(word: Sequence[Optional[int]], truth: Sequence[int]) -> tuple[int, int]:
    """``(e, t)``: erasures, and non-erased positions that differ from ``truth``."""
    e = sum(1 for y in word if y is None)
    t = sum(1 for y, c in zip(word, truth) if y is not None and y != c)
    return e, t


def hs_bound(indels: int, tau, n: int) -> float:
    """Right-hand side ``indels + 12 sqrt(tau) n`` of the matching guarantee."""
    return indels + 12 * float(as_fraction(tau)) ** 0.5 * n
