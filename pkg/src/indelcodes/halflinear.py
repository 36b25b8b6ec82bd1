"""Half-linear code over pair symbols: ``(c_i, s_i * c_i)`` for ``c`` in an RS code.

The second coordinate masks the sync symbol with the code symbol, which
keeps the code closed under addition and ``F_q`` scaling.  Two decoders
share the front end (drop half-zero symbols, unmask, match):

``improved``
    fill every erasure with 0 and decode substitutions only;
``baseline``
    hand erasures to the errors-and-erasures decoder.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .galois import FieldSpec
from .innercode import DecodingError, InnerCode, decode_inner, encode_inner
from .matcher import MatchReport, match_sync
from .syncseq import SyncSequence

PairSymbol = tuple[int, int]
VARIANTS = ("improved", "baseline")


@dataclass(frozen=True)
class HalfLinearCode:
    inner: InnerCode
    sync: SyncSequence

    def __post_init__(self) -> None:
        if len(self.sync) != self.inner.n:
            raise ValueError(f"sync length {len(self.sync)} != block length {self.inner.n}")
        q = self.inner.field.q
        if any(not 0 < s < q for s in self.sync):
            raise ValueError(f"sync symbols must be nonzero elements of F_{q}")

    @property
    def field(self) -> FieldSpec:
        return self.inner.field

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def rate(self) -> Fraction:
        """Rate in pair symbols (alphabet size q^2): half the inner rate."""
        return Fraction(self.k, 2 * self.n)


def encode_hl(code: HalfLinearCode, msg: Sequence[int]) -> list[PairSymbol]:
    c = encode_inner(code.inner, msg)
    mul = code.field.mul
    return [(ci, mul(si, ci)) for ci, si in zip(c, code.sync)]


def unmask(code: HalfLinearCode, word: Sequence[PairSymbol]) -> Optional[list[int]]:
    """Inner word behind a length-``n`` pair word, or ``None`` if a mask is off."""
    if len(word) != code.n:
        return None
    mul = code.field.mul
    out = []
    for (a, b), s in zip(word, code.sync):
        if mul(s, a) != b:
            return None
        out.append(a)
    return out


def is_codeword(code: HalfLinearCode, word: Sequence[PairSymbol]) -> bool:
    c = unmask(code, word)
    if c is None:
        return False
    try:
        msg = decode_inner(code.inner, c)
    except DecodingError:
        return False
    return encode_inner(code.inner, msg) == c


@dataclass
class DecodeTrace:
    """Intermediate values of one decoding run, for diagnostics."""

    extracted: list[PairSymbol]
    dropped: int
    word: list[Optional[int]]
    report: MatchReport
    decoder_input: list[Optional[int]]
    message: Optional[list[int]]
    error: Optional[str] = None


def extract_pairs(f: FieldSpec, received: Sequence[PairSymbol]) -> tuple[list[PairSymbol], int]:
    """Unmask received pairs into ``(code, sync)`` pairs.

    Symbols with a zero coordinate carry no sync information (honest nonzero
    symbols never have one) and are dropped; returns ``(pairs, n_dropped)``.
    """
    out = []
    dropped = 0
    for a, b in received:
        if a == 0 or b == 0:
            dropped += 1
            continue
        out.append((a, f.div(b, a)))
    return out, dropped


def trace_hl(code: HalfLinearCode, received: Sequence[PairSymbol],
             variant: str = "improved") -> DecodeTrace:
    if variant not in VARIANTS:
        raise ValueError(f"unknown decoder variant {variant!r}")
    extracted, dropped = extract_pairs(code.field, received)
    word, report = match_sync(code.sync, extracted, code.sync.tau)
    if variant == "improved":
        decoder_input = [0 if y is None else y for y in word]
    else:
        decoder_input = list(word)
    try:
        msg = decode_inner(code.inner, decoder_input)
        err = None
    except DecodingError as exc:
        msg, err = None, str(exc)
    return DecodeTrace(extracted, dropped, word, report, decoder_input, msg, err)


def decode_hl(code: HalfLinearCode, received: Sequence[PairSymbol],
              variant: str = "improved") -> list[int]:
    """Decode a corrupted pair sequence; raises :class:`DecodingError`."""
    t = trace_hl(code, received, variant)
    if t.message is None:
        raise DecodingError(t.error or "decoding failed")
    return t.message


def sparse_message(code: HalfLinearCode, zeros: int, rng: random.Random) -> list[int]:
    """Message whose inner codeword vanishes on ``zeros`` random positions.

    The message polynomial is a random nonzero multiple of
    ``prod (x - a_j)`` over the chosen evaluation points, so ``zeros`` must
    be below ``k``.
    """
    inner = code.inner
    if not 0 <= zeros < inner.k:
        raise ValueError(f"need 0 <= zeros < k = {inner.k}")
    f = inner.field
    roots = rng.sample(list(inner.evaluation_points), zeros)
    poly = [rng.randrange(1, f.q)]
    for r in roots:
        nr = f.neg(r)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = f.add(nxt[i + 1], c)
            nxt[i] = f.add(nxt[i], f.mul(c, nr))
        poly = nxt
    return poly + [0] * (inner.k - len(poly))
