"""Fully linear indel code: flatten the half-linear pairs and pad with ``(0, 0)``.

Codewords are ``pad(flat(c), ell)`` for ``c`` in the half-linear code.  A
zero coordinate of an honest pair always comes with a zero partner, so
every zero run in a codeword has even length; the decoder uses the zero
runs to cut the received word into windows and re-pairs each window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .halflinear import (
    DecodeTrace,
    HalfLinearCode,
    PairSymbol,
    encode_hl,
    trace_hl,
)
from .innercode import DecodingError
from .syncseq import as_fraction


@dataclass(frozen=True)
class LinearIndelCode:
    base: HalfLinearCode
    ell: int

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError("ell must be a positive integer")
        if self.base.n % self.ell:
            raise ValueError(f"ell = {self.ell} must divide n = {self.base.n}")

    @property
    def length(self) -> int:
        n = self.base.n
        return 2 * n * (self.ell + 1) // self.ell

    @property
    def rate(self) -> Fraction:
        return Fraction(self.base.k, self.length)


@dataclass(frozen=True)
class Segmentation:
    """``0^{d_0} w_1 0^{d_1} ... w_t 0^{d_t}`` with zero-free windows ``w_j``."""

    windows: tuple[tuple[int, ...], ...]
    delimiter_lengths: tuple[int, ...]

    def reinterleave(self) -> list[int]:
        out = [0] * self.delimiter_lengths[0]
        for w, d in zip(self.windows, self.delimiter_lengths[1:]):
            out.extend(w)
            out.extend([0] * d)
        return out

    def spans(self) -> list[tuple[int, int]]:
        """``(start, end)`` offsets of each window in the segmented word."""
        out = []
        pos = self.delimiter_lengths[0]
        for w, d in zip(self.windows, self.delimiter_lengths[1:]):
            out.append((pos, pos + len(w)))
            pos += len(w) + d
        return out


def flat(pairs: Sequence[PairSymbol]) -> list[int]:
    out = []
    for a, b in pairs:
        out.append(a)
        out.append(b)
    return out


def unflat(v: Sequence[int]) -> list[PairSymbol]:
    if len(v) % 2:
        raise ValueError("odd-length word cannot be split into pairs")
    return [(v[i], v[i + 1]) for i in range(0, len(v), 2)]


def pad(v: Sequence[int], ell: int) -> list[int]:
    """Insert ``0, 0`` after every complete group of ``2 * ell`` symbols."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    group = 2 * ell
    out = []
    for start in range(0, len(v), group):
        chunk = v[start : start + group]
        out.extend(chunk)
        if len(chunk) == group:
            out.extend((0, 0))
    return out


def unpad(v: Sequence[int], ell: int) -> list[int]:
    group = 2 * ell
    out = []
    for start in range(0, len(v), group + 2):
        out.extend(v[start : start + group])
    return out


def segment(y: Sequence[int]) -> Segmentation:
    windows: list[tuple[int, ...]] = []
    delims: list[int] = []
    run = 0
    cur: list[int] = []
    for x in y:
        if x == 0:
            if cur:
                windows.append(tuple(cur))
                cur = []
            run += 1
        else:
            if not cur:
                delims.append(run)
                run = 0
            cur.append(x)
    if cur:
        windows.append(tuple(cur))
    delims.append(run)
    return Segmentation(tuple(windows), tuple(delims))


def choose_ell(delta) -> int:
    """Padding period with ``ell + 1 = ceil(1 / (2 sqrt(delta)))``."""
    delta = as_fraction(delta)
    if not 0 < delta < Fraction(1, 16):
        raise ValueError("delta must lie in (0, 1/16)")
    # smallest integer t with t >= 1 / (2 sqrt(delta)), i.e. 4 t^2 delta >= 1
    t = max(1, isqrt(delta.denominator // (4 * delta.numerator)))
    while 4 * t * t * delta < 1:
        t += 1
    while t > 1 and 4 * (t - 1) ** 2 * delta >= 1:
        t -= 1
    return t - 1


def encode_lin(code: LinearIndelCode, msg: Sequence[int]) -> list[int]:
    return pad(flat(encode_hl(code.base, msg)), code.ell)


def window_pairs(y: Sequence[int], ell: int) -> list[PairSymbol]:
    """Split each usable window of ``y`` into consecutive pairs.

    Windows of odd length or longer than ``2 * ell`` are skipped.
    """
    out: list[PairSymbol] = []
    for w in segment(y).windows:
        if len(w) % 2 or len(w) > 2 * ell:
            continue
        out.extend((w[i], w[i + 1]) for i in range(0, len(w), 2))
    return out


def trace_lin(code: LinearIndelCode, y: Sequence[int],
              variant: str = "improved") -> tuple[list[PairSymbol], DecodeTrace]:
    pairs = window_pairs(y, code.ell)
    return pairs, trace_hl(code.base, pairs, variant)


def decode_lin(code: LinearIndelCode, y: Sequence[int], variant: str = "improved") -> list[int]:
    """Decode a corrupted codeword; raises :class:`DecodingError`."""
    _, t = trace_lin(code, y, variant)
    if t.message is None:
        raise DecodingError(t.error or "decoding failed")
    return t.message


def zero_runs(y: Sequence[int]) -> list[int]:
    seg = segment(y)
    return [d for d in seg.delimiter_lengths if d]


def has_even_zero_runs(y: Sequence[int]) -> bool:
    return all(d % 2 == 0 for d in zero_runs(y))

