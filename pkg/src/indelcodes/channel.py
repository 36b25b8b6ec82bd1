"""Indel channel: edit scripts, random patterns and crafted attacks on C^l.

Positions are 1-based and resolved against the intermediate word, so an
edit script is applied left to right exactly as written.  A deletion at
``pos`` removes the ``pos``-th symbol; an insertion at ``pos`` puts the new
symbol at index ``pos`` (``1 <= pos <= len + 1``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

from .linearcode import LinearIndelCode, segment

STRATEGIES = ("window-parity", "window-desync", "delimiter-delete")
UNIT_COST = {"window-parity": 1, "window-desync": 2, "delimiter-delete": 2}


@dataclass(frozen=True)
class Edit:
    kind: str  # "D" or "I"
    position: int
    value: Any = None

    def __post_init__(self) -> None:
        if self.kind not in ("D", "I"):
            raise ValueError(f"edit kind must be 'D' or 'I', got {self.kind!r}")
        if self.kind == "I" and self.value is None:
            raise ValueError("insertions need a value")
        if self.position < 1:
            raise ValueError("edit positions are 1-based")


@dataclass(frozen=True)
class IndelPattern:
    edits: tuple[Edit, ...] = ()

    @property
    def deletions(self) -> int:
        return sum(1 for e in self.edits if e.kind == "D")

    @property
    def insertions(self) -> int:
        return sum(1 for e in self.edits if e.kind == "I")

    @property
    def cost(self) -> int:
        return len(self.edits)

    def __len__(self) -> int:
        return len(self.edits)


def apply_pattern(w: Sequence, p: IndelPattern) -> list:
    out = list(w)
    for step, e in enumerate(p.edits, start=1):
        if e.kind == "D":
            if not 1 <= e.position <= len(out):
                raise IndexError(f"edit {step}: deletion at {e.position} outside 1..{len(out)}")
            del out[e.position - 1]
        else:
            if not 1 <= e.position <= len(out) + 1:
                raise IndexError(f"edit {step}: insertion at {e.position} outside 1..{len(out) + 1}")
            out.insert(e.position - 1, e.value)
    return out


def _draw_symbol(rng: random.Random, q: int, pairs: bool, nonzero: bool):
    lo = 1 if nonzero else 0
    if pairs:
        return (rng.randrange(lo, q), rng.randrange(lo, q))
    return rng.randrange(lo, q)


def random_pattern(length: int, D: int, I: int, seed, q: int = 2,
                   pairs: bool = False, nonzero: bool = False) -> IndelPattern:
    """``D`` uniform deletions and ``I`` uniform insertions in random order.

    Inserted values are uniform over ``F_q`` (or ``F_q x F_q`` when
    ``pairs``), zero included unless ``nonzero``.
    """
    if D < 0 or I < 0:
        raise ValueError("edit counts must be non-negative")
    if D > length:
        raise ValueError(f"cannot delete {D} symbols from a word of length {length}")
    rng = random.Random(seed)
    kinds = ["D"] * D + ["I"] * I
    rng.shuffle(kinds)
    cur = length
    edits = []
    for kind in kinds:
        if kind == "D":
            edits.append(Edit("D", rng.randint(1, cur)))
            cur -= 1
        else:
            edits.append(Edit("I", rng.randint(1, cur + 1), _draw_symbol(rng, q, pairs, nonzero)))
            cur += 1
    return IndelPattern(tuple(edits))


def split_budget(budget: int, rng: random.Random, length: int) -> tuple[int, int]:
    """Uniform split of ``budget`` into ``(D, I)`` with ``D <= length``."""
    d = rng.randint(0, min(budget, length))
    return d, budget - d


def adversarial_pattern(codeword: Sequence[int], code: LinearIndelCode, strategy: str,
                        budget: int, seed) -> IndelPattern:
    """Crafted attack against the segmentation decoder.

    ``window-parity``
        one deletion in each of the first ``budget`` windows (odd length,
        so the decoder throws the window away);
    ``window-desync``
        for each of the first ``budget // 2`` windows, delete its first
        symbol and append a nonzero symbol, which keeps the length even but
        shifts every pair inside it;
    ``delimiter-delete``
        remove both zeros of the first ``budget // 2`` interior delimiters
        of length 2, merging neighbouring windows past the ``2 * ell``
        limit.

    Edits are emitted right to left so every position refers to the
    original codeword.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    if budget < UNIT_COST[strategy]:
        raise ValueError(f"{strategy} needs a budget of at least {UNIT_COST[strategy]}")
    rng = random.Random(seed)
    q = code.base.field.q
    seg = segment(codeword)
    spans = seg.spans()
    groups: list[list[Edit]] = []
    if strategy == "window-parity":
        for start, end in spans[:budget]:
            groups.append([Edit("D", rng.randrange(start, end) + 1)])
    elif strategy == "window-desync":
        for start, end in spans[: budget // 2]:
            # the insertion sits right of the deletion, so doing it first
            # leaves the deletion's position untouched
            groups.append([Edit("I", end + 1, rng.randrange(1, q)), Edit("D", start + 1)])
    else:
        targets = [end for (_, end), d in zip(spans, seg.delimiter_lengths[1:-1]) if d == 2]
        for end in targets[: budget // 2]:
            groups.append([Edit("D", end + 1), Edit("D", end + 1)])
    return IndelPattern(tuple(e for g in reversed(groups) for e in g))


def format_pattern(p: IndelPattern) -> str:
    lines = []
    for e in p.edits:
        if e.kind == "D":
            lines.append(f"D {e.position}")
        elif isinstance(e.value, tuple):
            lines.append(f"I {e.position} " + " ".join(map(str, e.value)))
        else:
            lines.append(f"I {e.position} {e.value}")
    return "".join(ln + "\n" for ln in lines)


def parse_pattern(text: str) -> IndelPattern:
    edits = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.split()
        if not tok or tok[0].startswith("#"):
            continue
        if tok[0] == "D" and len(tok) == 2:
            edits.append(Edit("D", int(tok[1])))
        elif tok[0] == "I" and len(tok) == 3:
            edits.append(Edit("I", int(tok[1]), int(tok[2])))
        elif tok[0] == "I" and len(tok) == 4:
            edits.append(Edit("I", int(tok[1]), (int(tok[2]), int(tok[3]))))
        else:
            raise ValueError(f"line {lineno}: expected 'D pos' or 'I pos value', got {line!r}")
    return IndelPattern(tuple(edits))
