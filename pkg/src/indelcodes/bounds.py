"""Half-Singleton bound and single-deletion confusability for subfield-linear codes.

A code over ``F`` (an extension of degree ``ell_ext`` of the base field
``E``) that is only ``E``-linear is stored through an ``E``-basis of its
expansion in ``E^(ell_ext * n)``: each ``F``-symbol is a block of
``ell_ext`` consecutive ``E``-coordinates.  Only addition in ``F`` is ever
needed, so ``F`` is never built as a field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .editdist import levenshtein
from .galois import FieldSpec, make_field
from .syncseq import as_fraction

Vector = tuple[int, ...]
Symbol = tuple[int, ...]


def half_singleton_bound(n: int, delta) -> Fraction:
    """``(1 - delta) / 2 + 1 / (2n)``."""
    delta = as_fraction(delta)
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= delta < 1:
        raise ValueError("delta must lie in [0, 1)")
    return (1 - delta) / 2 + Fraction(1, 2 * n)


# --- linear algebra over E ------------------------------------------------

def row_reduce(f: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form with leftmost pivots; returns ``(rows, pivots)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][col])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = m[i][col]
                m[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(f: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(row_reduce(f, rows)[0])


def null_space(f: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{v : A v = 0}``, one vector per free column."""
    red, pivots = row_reduce(f, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = f.neg(row[fc])
        basis.append(v)
    return basis


# --- codes ------------------------------------------------------------------

@dataclass(frozen=True)
class SubfieldLinearCode:
    base_field: FieldSpec
    ell_ext: int
    n: int
    basis: tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(tuple(int(x) for x in b) for b in self.basis))
        width = self.ell_ext * self.n
        if self.ell_ext < 1 or self.n < 1:
            raise ValueError("ell_ext and n must be positive")
        for b in self.basis:
            if len(b) != width:
                raise ValueError(f"basis vectors must have length ell_ext * n = {width}")
            for x in b:
                self.base_field.check(x)
        if rank(self.base_field, self.basis) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @property
    def k_E(self) -> int:
        return len(self.basis)

    @property
    def width(self) -> int:
        return self.ell_ext * self.n

    @property
    def rate(self) -> Fraction:
        """Rate over ``F``: ``k_E / (ell_ext * n)``."""
        return Fraction(self.k_E, self.width)

    def combine(self, coeffs: Sequence[int]) -> Vector:
        f = self.base_field
        out = [0] * self.width
        for a, b in zip(coeffs, self.basis):
            if a:
                out = [f.add(x, f.mul(a, y)) for x, y in zip(out, b)]
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        return rank(self.base_field, list(self.basis) + [list(v)]) == self.k_E

    def codewords(self) -> Iterator[Vector]:
        for coeffs in itertools.product(range(self.base_field.q), repeat=self.k_E):
            yield self.combine(coeffs)

    def symbols(self, v: Sequence[int]) -> list[Symbol]:
        """Split an expanded vector into its ``n`` ``F``-symbols."""
        e = self.ell_ext
        return [tuple(v[i * e : (i + 1) * e]) for i in range(self.n)]

    def parity_check(self) -> list[list[int]]:
        return null_space(self.base_field, self.basis, self.width)


def make_subfield_code(p: int, m_E: int, ell_ext: int, n: int,
                       basis: Sequence[Sequence[int]]) -> SubfieldLinearCode:
    return SubfieldLinearCode(make_field(p, m_E), ell_ext, n, tuple(tuple(b) for b in basis))


# --- confusability ----------------------------------------------------------

@dataclass(frozen=True)
class ConfusabilityWitness:
    """Codewords ``c`` and ``c' = c + x`` with ``del_u(c) == del_u'(c')``.

    Positions are 1-based ``F``-symbol indices.  For the prefix-sum form
    ``u = 1``, ``u' = n`` and ``c_i = x_1 + ... + x_{i-1}``.
    """

    x: Vector
    c: Vector
    u: int
    u_prime: int
    prefix_form: bool

    def c_prime(self, code: SubfieldLinearCode) -> Vector:
        f = code.base_field
        return tuple(f.add(a, b) for a, b in zip(self.c, self.x))


def _delete(symbols: list[Symbol], pos: int) -> list[Symbol]:
    return symbols[: pos - 1] + symbols[pos:]


def check_witness(code: SubfieldLinearCode, w: ConfusabilityWitness) -> bool:
    """Constructive check: membership, the defining relation and the deletion clash."""
    f = code.base_field
    if not any(w.x) or not code.contains(w.x) or not code.contains(w.c):
        return False
    xs, cs = code.symbols(w.x), code.symbols(w.c)
    if w.prefix_form:
        acc = tuple([0] * code.ell_ext)
        for i in range(code.n):
            if cs[i] != acc:
                return False
            acc = tuple(f.add(a, b) for a, b in zip(acc, xs[i]))
    cp = code.symbols(w.c_prime(code))
    if cp == cs:
        return False
    return _delete(cs, w.u) == _delete(cp, w.u_prime)


def _window_system(code: SubfieldLinearCode, u: int, u_prime: int, prefix: bool) -> list[list[int]]:
    """Rows over unknowns ``(alpha, beta)`` with ``c = alpha G``, ``x = beta G``.

    Equations: ``x_i = 0`` outside ``[u, u']`` and ``x_i = c_{i+1} - c_i`` on
    ``[u, u')``; ``prefix`` adds ``c_1 = 0`` (which with ``u = 1, u' = n``
    is the prefix-sum relation).
    """
    f = code.base_field
    k, e = code.k_E, code.ell_ext
    cols = [[b[j] for b in code.basis] for j in range(code.width)]  # column j of G as a k-vector
    zero = [0] * k
    rows = []
    for i in range(1, code.n + 1):
        for t in range(e):
            j = (i - 1) * e + t
            if i < u or i > u_prime:
                rows.append(zero + cols[j])
            elif i < u_prime:
                # x_i - c_{i+1} + c_i = 0
                rows.append([f.sub(a, b) for a, b in zip(cols[j], cols[j + e])] + cols[j])
    if prefix:
        for t in range(e):
            rows.append(cols[t] + zero)
    return rows


def _solve_window(code: SubfieldLinearCode, u: int, u_prime: int,
                  prefix: bool) -> Optional[ConfusabilityWitness]:
    k = code.k_E
    for v in null_space(code.base_field, _window_system(code, u, u_prime, prefix), 2 * k):
        if any(v[k:]):
            return ConfusabilityWitness(code.combine(v[k:]), code.combine(v[:k]), u, u_prime, prefix)
    return None


def prefix_sum_witness(code: SubfieldLinearCode) -> Optional[ConfusabilityWitness]:
    """Nonzero ``x`` in the code whose prefix-sum vector is also a codeword."""
    if code.k_E == 0:
        return None
    return _solve_window(code, 1, code.n, prefix=True)


def find_confusable_pair(code: SubfieldLinearCode) -> Optional[ConfusabilityWitness]:
    """Witness that the code cannot correct one deletion, or ``None``.

    The prefix-sum system is tried first.  If it only has the trivial
    solution, every window ``u <= u'`` is tried; two distinct codewords share
    a single-deletion result exactly when one of these systems has a
    solution with ``x != 0``, so ``None`` certifies single-deletion
    correctability.
    """
    if code.k_E == 0:
        return None
    w = prefix_sum_witness(code)
    if w is not None:
        return w
    for u in range(1, code.n + 1):
        for u_prime in range(u, code.n + 1):
            w = _solve_window(code, u, u_prime, prefix=False)
            if w is not None:
                return w
    return None


def _deletion_ball(word: tuple, t: int) -> set[tuple]:
    ball = {word}
    for _ in range(t):
        ball = {w[:i] + w[i + 1 :] for w in ball for i in range(len(w))}
    return ball


def brute_indel_capability(codewords: Sequence[Sequence], t: int) -> bool:
    """``True`` iff all distinct codewords are more than ``2t`` indels apart.

    For equal lengths this is the same as disjoint ``t``-deletion balls,
    which is what gets checked.
    """
    if len(codewords) > 1 << 16:
        raise ValueError("too many codewords for a brute-force check")
    words = list(dict.fromkeys(tuple(w) for w in codewords))
    if words and any(len(w) != len(words[0]) for w in words):
        raise ValueError("codewords must all have the same length")
    if t < 0:
        raise ValueError("t must be non-negative")
    seen: dict[tuple, int] = {}
    for idx, w in enumerate(words):
        for sub in _deletion_ball(w, min(t, len(w))):
            other = seen.setdefault(sub, idx)
            if other != idx:
                return False
    return True


def min_levenshtein(codewords: Sequence[Sequence]) -> Optional[int]:
    words = list(dict.fromkeys(tuple(w) for w in codewords))
    best = None
    for a, b in itertools.combinations(words, 2):
        d = levenshtein(a, b)
        best = d if best is None else min(best, d)
    return best


def symbol_codewords(code: SubfieldLinearCode) -> list[tuple[Symbol, ...]]:
    return [tuple(code.symbols(v)) for v in code.codewords()]


# --- text formats -----------------------------------------------------------

def parse_code(text: str) -> SubfieldLinearCode:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 4:
        raise ValueError("code header must be 'p m_E ell_ext n'")
    p, m_E, ell_ext, n = map(int, lines[0])
    return make_subfield_code(p, m_E, ell_ext, n, [[int(t) for t in row] for row in lines[1:]])


def format_code(code: SubfieldLinearCode) -> str:
    f = code.base_field
    out = [f"{f.p} {f.m} {code.ell_ext} {code.n}"]
    out += [" ".join(map(str, b)) for b in code.basis]
    return "\n".join(out) + "\n"


def rate_curve(n: int, deltas: Sequence) -> list[tuple[Fraction, Fraction]]:
    return [(as_fraction(d), half_singleton_bound(n, d)) for d in deltas]
