"""Reed-Solomon inner code with errors-and-erasures decoding.

The code evaluates degree-``< k`` message polynomials at the first ``n``
field elements (canonical index order ``0, 1, ..., n-1``).  Decoding drops
erased positions and runs Gao's extended-Euclid decoder on the rest, so it
succeeds whenever ``2 * substitutions + erasures < n - k + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .galois import FieldSpec

ERASURE = None


class DecodingError(Exception):
    """The received word is outside the decoding radius."""


# --- polynomial helpers: int64 coefficient arrays, low -> high -------------

def _from_roots(f: FieldSpec, roots: np.ndarray) -> np.ndarray:
    """Coefficients of ``prod (x - r)``."""
    out = np.zeros(len(roots) + 1, dtype=np.int64)
    out[0] = 1
    for deg, neg_r in enumerate(f.vneg(roots), start=1):
        old = out[:deg].copy()
        out[1 : deg + 1] = old
        out[0] = 0
        out[:deg] = f.vadd(out[:deg], f.vmul(old, neg_r))
    return out


def _interpolate(f: FieldSpec, xs: np.ndarray, ys: np.ndarray, g0: np.ndarray) -> np.ndarray:
    """Lagrange interpolation through ``(xs, ys)``; ``g0 = prod (x - xs)``."""
    n = len(xs)
    # row i holds g0 / (x - xs[i]) by synthetic division, all rows at once
    quot = np.zeros((n, n), dtype=np.int64)
    carry = np.zeros(n, dtype=np.int64)
    for d in range(n, 0, -1):
        carry = f.vadd(g0[d], f.vmul(carry, xs))
        quot[:, d - 1] = carry
    diffs = f.vsub(xs[:, None], xs[None, :])
    np.fill_diagonal(diffs, 1)
    denom = f.vprod(diffs, axis=1)
    scale = f.vmul(ys, f.vinv(denom))
    return f.vsum(f.vmul(scale[:, None], quot), axis=0)


def _np_trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _np_divmod(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    b = _np_trim(b)
    r = _np_trim(a).copy()
    db = len(b) - 1
    if len(r) - 1 < db:
        return r[:0], r
    inv_lead = f.inv(int(b[-1]))
    quot = np.zeros(len(r) - db, dtype=np.int64)
    for shift in range(len(r) - 1 - db, -1, -1):
        coef = f.mul(int(r[shift + db]), inv_lead)
        if coef:
            quot[shift] = coef
            r[shift : shift + db + 1] = f.vsub(r[shift : shift + db + 1], f.vmul(coef, b))
    return _np_trim(quot), _np_trim(r[:db])


def _np_mul(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, x in enumerate(a):
        if x:
            out[i : i + len(b)] = f.vadd(out[i : i + len(b)], f.vmul(int(x), b))
    return _np_trim(out)


def _np_sub(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size = max(len(a), len(b))
    pa = np.zeros(size, dtype=np.int64)
    pb = np.zeros(size, dtype=np.int64)
    pa[: len(a)] = a
    pb[: len(b)] = b
    return _np_trim(f.vsub(pa, pb))


def _np_eval(f: FieldSpec, coeffs: Sequence[int], xs: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in reversed(coeffs):
        acc = f.vadd(f.vmul(acc, xs), int(c))
    return acc


@dataclass(frozen=True)
class InnerCode:
    """Reed-Solomon ``[n, k, n - k + 1]`` code over ``field``."""

    field: FieldSpec
    n: int
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.n > self.field.q:
            raise ValueError(f"block length {self.n} exceeds field order {self.field.q}")

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def evaluation_points(self) -> tuple[int, ...]:
        return tuple(range(self.n))


def make_inner_code(f: FieldSpec, n: int, k: int) -> InnerCode:
    return InnerCode(f, n, k)


def _check_message(c: InnerCode, msg: Sequence[int]) -> list[int]:
    if len(msg) != c.k:
        raise ValueError(f"message length {len(msg)} != k = {c.k}")
    return [c.field.check(x) for x in msg]


def encode_inner(c: InnerCode, msg: Sequence[int]) -> list[int]:
    msg = _check_message(c, msg)
    xs = np.arange(c.n, dtype=np.int64)
    return [int(v) for v in _np_eval(c.field, msg, xs)]


def decode_inner(c: InnerCode, w: Sequence[Optional[int]]) -> list[int]:
    """Recover the message from ``w``; ``None`` entries are erasures.

    Raises :class:`DecodingError` when the word is not within
    ``2s + e < d`` of any codeword (as far as the decoder can tell).
    """
    if len(w) != c.n:
        raise ValueError(f"received length {len(w)} != n = {c.n}")
    f = c.field
    kept = [(x, f.check(y)) for x, y in zip(c.evaluation_points, w) if y is not ERASURE]
    e = c.n - len(kept)
    if e >= c.d:
        raise DecodingError(f"{e} erasures leave no redundancy (d = {c.d})")
    npts = len(kept)
    xs = np.array([x for x, _ in kept], dtype=np.int64)
    ys = np.array([y for _, y in kept], dtype=np.int64)
    g0 = _from_roots(f, xs)
    g1 = _np_trim(_interpolate(f, xs, ys, g0))
    # extended Euclid on (g0, g1) until deg(remainder) < (npts + k) / 2
    r_prev, r_cur = g0, g1
    v_prev = np.zeros(0, dtype=np.int64)
    v_cur = np.ones(1, dtype=np.int64)
    while len(r_cur) and 2 * (len(r_cur) - 1) >= npts + c.k:
        quot, rem = _np_divmod(f, r_prev, r_cur)
        r_prev, r_cur = r_cur, rem
        v_prev, v_cur = v_cur, _np_sub(f, v_prev, _np_mul(f, quot, v_cur))
    msg, rem = _np_divmod(f, r_cur, v_cur)
    if len(rem) or len(msg) > c.k:
        raise DecodingError("no codeword within the decoding radius")
    out = [int(v) for v in msg] + [0] * (c.k - len(msg))
    subs = int(np.count_nonzero(_np_eval(f, out, xs) != ys))
    if 2 * subs + e >= c.d:
        raise DecodingError(f"{subs} substitutions and {e} erasures exceed d = {c.d}")
    return out
