"""Longest common subsequence and indel-only (Levenshtein) distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass(frozen=True)
class Alignment:
    """Matched index pairs ``(i, j)`` (0-based) with ``a[i] == b[j]``.

    Pairs are strictly increasing in both coordinates.
    """

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def lcs_align(a: Sequence[Hashable], b: Sequence[Hashable]) -> Alignment:
    """Maximum-length alignment of ``a`` and ``b``.

    The table holds suffix LCS lengths and is traced forward from ``(0, 0)``.
    Equal symbols are always matched; otherwise the trace skips a symbol of
    ``b`` whenever that keeps the optimum, so each match lands on the
    smallest usable index of ``a``.
    """
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        return Alignment(())
    # rows[i][j] = |LCS(a[i:], b[j:])|
    rows = [None] * (m + 1)
    below = [0] * (n + 1)
    rows[m] = below
    for i in range(m - 1, -1, -1):
        ai = a[i]
        row = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            if ai == b[j]:
                row[j] = below[j + 1] + 1
            else:
                r, d = row[j + 1], below[j]
                row[j] = r if r >= d else d
        rows[i] = row
        below = row
    pairs = []
    i = j = 0
    while i < m and j < n:
        if a[i] == b[j]:
            pairs.append((i, j))
            i += 1
            j += 1
        elif rows[i][j + 1] >= rows[i + 1][j]:
            j += 1
        else:
            i += 1
    return Alignment(tuple(pairs))


def _match_masks(a: Sequence[Hashable]) -> dict:
    masks: dict = {}
    for i, x in enumerate(a):
        masks[x] = masks.get(x, 0) | (1 << i)
    return masks


def lcs_prefix_lengths(a: Sequence[Hashable], b: Sequence[Hashable]) -> list[int]:
    """``out[t] = |LCS(a, b[:t])|`` for ``t = 0..len(b)``.

    Bit-parallel (Allison-Dix) over the positions of ``a``; one big-integer
    update per symbol of ``b``.
    """
    m = len(a)
    full = (1 << m) - 1
    masks = _match_masks(a)
    v = full
    out = [0]
    for y in b:
        u = v & masks.get(y, 0)
        v = ((v + u) | (v - u)) & full
        out.append(m - bin(v).count("1"))
    return out


def lcs_length(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return 0
    return lcs_prefix_lengths(a, b)[-1]


def levenshtein(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Minimum number of insertions and deletions turning ``a`` into ``b``."""
    return len(a) + len(b) - 2 * lcs_length(a, b)
